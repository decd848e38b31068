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

// Batch runner: load a scenario, re-plan after the disruption at one or more
// lead-time scales and attitude settings, simulate, and write the artifacts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scnrisk/scnrisk.h"

namespace {

namespace fs = std::filesystem;

struct Failure {
  scn_status status;
  std::string message;
};

void check(scn_status s) {
  if (s != SCN_OK) throw Failure{s, scn_last_error()};
}

std::string take(char* text) {
  std::string out = text != nullptr ? text : "";
  scn_string_free(text);
  return out;
}

using ScenarioPtr = std::unique_ptr<scn_scenario, decltype(&scn_scenario_free)>;
using ExperimentPtr = std::unique_ptr<scn_experiment, decltype(&scn_experiment_free)>;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

scn_attitude parse_attitude(const std::string& text) {
  if (text == "neutral") return SCN_ATTITUDE_NEUTRAL;
  if (text == "averse") return SCN_ATTITUDE_AVERSE;
  throw Failure{SCN_ERR_INVALID_ARGUMENT, "unknown attitude '" + text + "'"};
}

double parse_scale(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 0.0)) {
    throw Failure{SCN_ERR_INVALID_ARGUMENT, "invalid scale '" + text + "'"};
  }
  return v;
}

std::string scale_label(double scale) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", scale);
  return buf;
}

std::string percent(double scale) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", scale * 100.0);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{SCN_ERR_IO, "cannot write '" + path.string() + "'"};
}

struct Setting {
  std::string label;
  std::optional<scn_attitude> all;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Re-plan supply flows after a lead-time disruption and evaluate the result"};
  std::string scenario_path;
  std::optional<double> scale;
  std::vector<std::string> sweep;
  std::string attitudes;
  std::vector<std::string> overrides;
  std::size_t rounds = 300;
  std::optional<std::size_t> samples;
  std::optional<unsigned long long> seed;
  std::string out_dir = "scnrisk-out";
  bool dump_models = false;

  app.add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  auto* scale_opt = app.add_option("--scale", scale, "Lead-time increase of the disrupted agent");
  auto* sweep_opt = app.add_option("--sweep", sweep, "scales=LIST [attitudes=LIST]")->expected(1, 2);
  scale_opt->excludes(sweep_opt);
  auto* attitudes_opt = app.add_option("--attitudes", attitudes, "Comma list applied to every agent");
  app.add_option("--attitude", overrides, "Per-agent overrides agent=attitude,...");
  app.add_option("--rounds", rounds, "Out-of-sample simulation rounds")->check(CLI::PositiveNumber);
  app.add_option("--samples", samples, "SAA sample count")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--dump-models", dump_models, "Write every model instance as text");
  sweep_opt->excludes(attitudes_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    scn_scenario* raw = nullptr;
    check(scn_scenario_load(scenario_path.c_str(), &raw));
    ScenarioPtr base(raw, scn_scenario_free);

    std::map<std::string, scn_attitude> per_agent;
    for (const std::string& group : overrides) {
      for (const std::string& pair : split(group, ',')) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw Failure{SCN_ERR_INVALID_ARGUMENT, "expected agent=attitude, got '" + pair + "'"};
        }
        per_agent[pair.substr(0, eq)] = parse_attitude(pair.substr(eq + 1));
      }
    }

    std::vector<double> scales;
    std::vector<std::string> attitude_names = split(attitudes, ',');
    if (!sweep.empty()) {
      for (const std::string& item : sweep) {
        const auto eq = item.find('=');
        const std::string key = item.substr(0, eq);
        const std::string value = eq == std::string::npos ? "" : item.substr(eq + 1);
        if (key == "scales") {
          for (const std::string& s : split(value, ',')) scales.push_back(parse_scale(s));
        } else if (key == "attitudes") {
          attitude_names = split(value, ',');
        } else {
          throw Failure{SCN_ERR_INVALID_ARGUMENT, "unknown sweep key '" + key + "'"};
        }
      }
      if (scales.empty()) throw Failure{SCN_ERR_INVALID_ARGUMENT, "--sweep needs scales=LIST"};
    } else if (scale) {
      scales.push_back(*scale);
    } else {
      const auto doc = nlohmann::json::parse(take([&] {
        char* text = nullptr;
        check(scn_scenario_serialize(base.get(), &text));
        return text;
      }()));
      scales.push_back(doc.at("disruption").at("lead_time_scale").get<double>());
    }

    std::vector<Setting> settings;
    for (const std::string& name : attitude_names) settings.push_back({name, parse_attitude(name)});
    if (settings.empty()) settings.push_back({per_agent.empty() ? "scenario" : "custom", std::nullopt});

    const fs::path out = out_dir;
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw Failure{SCN_ERR_IO, "cannot create '" + out.string() + "': " + ec.message()};

    char* initial_text = nullptr;
    check(scn_scenario_initial_plan_json(base.get(), &initial_text));
    const std::string initial_plan = take(initial_text);
    write_file(out / "initial_plan.json", initial_plan);

    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    bool first = true;

    for (double s : scales) {
      for (const Setting& setting : settings) {
        scn_scenario* copy = nullptr;
        check(scn_scenario_clone(base.get(), &copy));
        ScenarioPtr scenario(copy, scn_scenario_free);
        if (setting.all) check(scn_scenario_set_all_demand_attitudes(scenario.get(), *setting.all));
        for (const auto& [agent, a] : per_agent) {
          check(scn_scenario_set_demand_attitude(scenario.get(), agent.c_str(), a));
        }

        const std::string label = "scale" + scale_label(s) + "_" + setting.label;
        scn_run_options options;
        scn_run_options_init(&options);
        options.scale = s;
        options.rounds = rounds;
        if (samples) options.samples = *samples;
        if (seed) {
          options.seed = *seed;
          options.has_seed = 1;
        }
        const std::string dump_dir = (out / "models" / label).string();
        if (dump_models) options.dump_dir = dump_dir.c_str();

        scn_experiment* run = nullptr;
        check(scn_experiment_run(scenario.get(), &options, &run));
        ExperimentPtr experiment(run, scn_experiment_free);

        char* text = nullptr;
        check(scn_experiment_plan_json(experiment.get(), &text));
        write_file(out / (label + ".plan.json"), take(text));
        check(scn_experiment_trace_json(experiment.get(), &text));
        write_file(out / (label + ".trace.json"), take(text));
        check(scn_experiment_lateness_csv(experiment.get(), &text));
        write_file(out / (label + ".lateness.csv"), take(text));
        check(scn_experiment_summary_json(experiment.get(), &text));
        const std::string summary = take(text);
        write_file(out / (label + ".summary.json"), summary);

        scn_summary sum;
        check(scn_experiment_summary(experiment.get(), &sum));
        if (first) {
          std::printf("%-10s %-10s %14s %10s %16s %16s %16s\n", "Disruption", "Attitude", "Cost",
                      "Lateness", "Objective", "SimLate(base)", "SimLate(plan)");
          std::printf("%-10s %-10s %14.2f %10.4f %16.2f %16s %16s\n", "0%", "-", sum.initial_cost,
                      sum.initial_lateness, sum.initial_objective, "-", "-");
          first = false;
        }
        std::printf("%-10s %-10s %14.2f %10.4f %16.2f %16.4f %16.4f\n", percent(s).c_str(),
                    setting.label.c_str(), sum.cost, sum.lateness, sum.objective,
                    sum.baseline_mean_total_lateness, sum.mean_total_lateness);
        if (sum.replanned == 0) std::printf("  %s: no re-planning triggered\n", label.c_str());

        nlohmann::ordered_json entry;
        entry["label"] = label;
        entry["attitude"] = setting.label;
        entry["summary"] = nlohmann::ordered_json::parse(summary);
        runs.push_back(std::move(entry));
      }
    }

    nlohmann::ordered_json root;
    root["scenario"] = fs::path(scenario_path).filename().string();
    root["runs"] = std::move(runs);
    write_file(out / "summary.json", root.dump(2) + "\n");
  } catch (const Failure& f) {
    std::fprintf(stderr, "scnrisk: %s error: %s\n", scn_status_name(f.status), f.message.c_str());
    return static_cast<int>(f.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "scnrisk: internal error: %s\n", e.what());
    return static_cast<int>(SCN_ERR_INTERNAL);
  }
  return 0;
}
