// Copyright 2026 The scnrisk Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scnrisk/scnrisk.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

#include "scnrisk/errors.hpp"
#include "scnrisk/experiment.hpp"
#include "scnrisk/scenario.hpp"

struct scn_scenario {
  scnrisk::Scenario value;
};

struct scn_experiment {
  scnrisk::ExperimentResult value;
};

namespace {

thread_local std::string last_error;

scn_status status_of(scnrisk::ErrorKind kind) {
  switch (kind) {
    case scnrisk::ErrorKind::kParse: return SCN_ERR_PARSE;
    case scnrisk::ErrorKind::kValidation: return SCN_ERR_VALIDATION;
    case scnrisk::ErrorKind::kSolverCap: return SCN_ERR_SOLVER_CAP;
    case scnrisk::ErrorKind::kSolver: return SCN_ERR_SOLVER;
    case scnrisk::ErrorKind::kSimulation: return SCN_ERR_SIMULATION;
    case scnrisk::ErrorKind::kIo: return SCN_ERR_IO;
    case scnrisk::ErrorKind::kInvalidArgument: return SCN_ERR_INVALID_ARGUMENT;
  }
  return SCN_ERR_INTERNAL;
}

template <class F>
scn_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return SCN_OK;
  } catch (const scnrisk::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SCN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SCN_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return SCN_ERR_INTERNAL;
  }
}

scn_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return SCN_ERR_INVALID_ARGUMENT;
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* scn_status_name(scn_status status) {
  switch (status) {
    case SCN_OK: return "ok";
    case SCN_ERR_PARSE: return "parse";
    case SCN_ERR_VALIDATION: return "validation";
    case SCN_ERR_SOLVER_CAP: return "solver-cap";
    case SCN_ERR_SOLVER: return "solver";
    case SCN_ERR_SIMULATION: return "simulation";
    case SCN_ERR_IO: return "io";
    case SCN_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SCN_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* scn_last_error(void) { return last_error.c_str(); }

void scn_string_free(char* text) { std::free(text); }

void scn_run_options_init(scn_run_options* options) {
  if (options == nullptr) return;
  *options = scn_run_options{};
  options->rounds = 300;
}

scn_status scn_scenario_load(const char* path, scn_scenario** out) {
  if (path == nullptr || out == nullptr) return null_argument("path/out");
  *out = nullptr;
  return guarded([&] { *out = new scn_scenario{scnrisk::load_scenario(path)}; });
}

scn_status scn_scenario_parse(const char* json_text, scn_scenario** out) {
  if (json_text == nullptr || out == nullptr) return null_argument("json_text/out");
  *out = nullptr;
  return guarded([&] { *out = new scn_scenario{scnrisk::parse_scenario(json_text)}; });
}

scn_status scn_scenario_clone(const scn_scenario* scenario, scn_scenario** out) {
  if (scenario == nullptr || out == nullptr) return null_argument("scenario/out");
  *out = nullptr;
  return guarded([&] { *out = new scn_scenario{scenario->value}; });
}

void scn_scenario_free(scn_scenario* scenario) { delete scenario; }

scn_status scn_scenario_serialize(const scn_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) return null_argument("scenario/out");
  return guarded([&] { *out = duplicate(scnrisk::serialize_scenario(scenario->value)); });
}

scn_status scn_scenario_initial_plan_json(const scn_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) return null_argument("scenario/out");
  return guarded([&] { *out = duplicate(scnrisk::serialize_plan(scenario->value.initial_plan)); });
}

scn_status scn_scenario_agent_count(const scn_scenario* scenario, unsigned long long* out) {
  if (scenario == nullptr || out == nullptr) return null_argument("scenario/out");
  *out = scenario->value.network.agents().size();
  last_error.clear();
  return SCN_OK;
}

scn_status scn_scenario_agent_id(const scn_scenario* scenario, unsigned long long index,
                                 char** out) {
  if (scenario == nullptr || out == nullptr) return null_argument("scenario/out");
  const auto agents = scenario->value.network.agents();
  if (index >= agents.size()) {
    last_error = "agent index out of range";
    return SCN_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = duplicate(agents[index].id.str()); });
}

scn_status scn_scenario_set_demand_attitude(scn_scenario* scenario, const char* agent,
                                            scn_attitude attitude) {
  if (scenario == nullptr || agent == nullptr) return null_argument("scenario/agent");
  if (attitude != SCN_ATTITUDE_NEUTRAL && attitude != SCN_ATTITUDE_AVERSE) {
    last_error = "unknown attitude";
    return SCN_ERR_INVALID_ARGUMENT;
  }
  const auto a = attitude == SCN_ATTITUDE_AVERSE ? scnrisk::RiskAttitude::kAverse
                                                 : scnrisk::RiskAttitude::kNeutral;
  return guarded([&] {
    const scnrisk::AgentId id{agent};
    if (scenario->value.network.find(id) == nullptr) {
      throw scnrisk::Error(scnrisk::ErrorKind::kInvalidArgument, "unknown agent '" + id.str() + "'");
    }
    scenario->value.network = scenario->value.network.with_demand_attitude(id, a);
  });
}

scn_status scn_scenario_set_all_demand_attitudes(scn_scenario* scenario, scn_attitude attitude) {
  if (scenario == nullptr) return null_argument("scenario");
  const auto agents = scenario->value.network.agents();
  std::vector<std::string> ids;
  for (const auto& a : agents) ids.push_back(a.id.str());
  for (const std::string& id : ids) {
    const scn_status s = scn_scenario_set_demand_attitude(scenario, id.c_str(), attitude);
    if (s != SCN_OK) return s;
  }
  return SCN_OK;
}

scn_status scn_experiment_run(const scn_scenario* scenario, const scn_run_options* options,
                              scn_experiment** out) {
  if (scenario == nullptr || options == nullptr || out == nullptr) {
    return null_argument("scenario/options/out");
  }
  *out = nullptr;
  return guarded([&] {
    scnrisk::ExperimentConfig config;
    config.scale = options->scale;
    config.rounds = options->rounds;
    if (options->samples != 0) config.samples = options->samples;
    if (options->has_seed != 0) config.seed = options->seed;
    if (options->max_binaries != 0) config.solve.milp.max_binaries = options->max_binaries;
    if (options->dump_dir != nullptr) {
      const std::filesystem::path dir = options->dump_dir;
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) {
        throw scnrisk::Error(scnrisk::ErrorKind::kIo,
                             "cannot create '" + dir.string() + "': " + ec.message());
      }
      config.solve.dump = [dir](const std::string& name, const scnrisk::milp::Problem& p) {
        const auto path = dir / (name + ".txt");
        std::ofstream f(path, std::ios::binary);
        f << scnrisk::milp::to_text(p);
        if (!f) throw scnrisk::Error(scnrisk::ErrorKind::kIo, "cannot write '" + path.string() + "'");
      };
    }
    *out = new scn_experiment{scnrisk::run_experiment(scenario->value, config)};
  });
}

void scn_experiment_free(scn_experiment* experiment) { delete experiment; }

scn_status scn_experiment_summary(const scn_experiment* experiment, scn_summary* out) {
  if (experiment == nullptr || out == nullptr) return null_argument("experiment/out");
  const scnrisk::ExperimentResult& r = experiment->value;
  *out = scn_summary{};
  out->replanned = r.replanned ? 1 : 0;
  out->initial_cost = r.initial.cost;
  out->initial_lateness = r.initial.lateness;
  out->initial_objective = r.initial.objective;
  out->baseline_cost = r.baseline.cost;
  out->baseline_lateness = r.baseline.lateness;
  out->baseline_objective = r.baseline.objective;
  out->cost = r.replan.cost;
  out->lateness = r.replan.lateness;
  out->objective = r.replan.objective;
  out->baseline_mean_total_lateness = r.baseline_simulation.mean_total_lateness;
  out->mean_total_lateness = r.replan_simulation.mean_total_lateness;
  out->baseline_mean_customer_lateness = r.baseline_simulation.mean_customer_lateness;
  out->mean_customer_lateness = r.replan_simulation.mean_customer_lateness;
  out->baseline_mean_customer_unmet = r.baseline_simulation.mean_customer_unmet;
  out->mean_customer_unmet = r.replan_simulation.mean_customer_unmet;
  last_error.clear();
  return SCN_OK;
}

scn_status scn_experiment_summary_json(const scn_experiment* experiment, char** out) {
  if (experiment == nullptr || out == nullptr) return null_argument("experiment/out");
  return guarded([&] { *out = duplicate(scnrisk::summary_json(experiment->value)); });
}

scn_status scn_experiment_plan_json(const scn_experiment* experiment, char** out) {
  if (experiment == nullptr || out == nullptr) return null_argument("experiment/out");
  return guarded([&] { *out = duplicate(scnrisk::serialize_plan(experiment->value.plan)); });
}

scn_status scn_experiment_trace_json(const scn_experiment* experiment, char** out) {
  if (experiment == nullptr || out == nullptr) return null_argument("experiment/out");
  return guarded([&] { *out = duplicate(scnrisk::trace_to_json(experiment->value.trace)); });
}

scn_status scn_experiment_lateness_csv(const scn_experiment* experiment, char** out) {
  if (experiment == nullptr || out == nullptr) return null_argument("experiment/out");
  return guarded([&] { *out = duplicate(experiment->value.lateness_csv); });
}

}  // extern "C"
