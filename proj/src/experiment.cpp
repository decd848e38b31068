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

#include "scnrisk/experiment.hpp"

#include <json.hpp>

#include "scnrisk/simulator.hpp"

namespace scnrisk {
namespace {

nlohmann::ordered_json objective_json(const ObjectiveSummary& s) {
  return {{"cost", s.cost}, {"lateness", s.lateness}, {"objective", s.objective}};
}

nlohmann::ordered_json simulation_json(const SimulationSummary& s) {
  return {{"rounds", s.rounds},
          {"mean_total_lateness", s.mean_total_lateness},
          {"mean_unit_lateness", s.mean_unit_lateness},
          {"on_time_share", s.on_time_share},
          {"mean_customer_unmet", s.mean_customer_unmet},
          {"mean_customer_lateness", s.mean_customer_lateness}};
}

}  // namespace

FlowPlan apply_notifications(const FlowPlan& plan, std::span<const Notification> notifications) {
  FlowPlan out = plan;
  for (const Notification& n : notifications) {
    auto it = out.find(FlowKey{n.supplier, n.receiver, n.product});
    if (it == out.end()) continue;
    const double shift = n.new_arrival - it->second.arrival;
    it->second.arrival = n.new_arrival;
    if (it->second.over_quantity > 0.0) it->second.over_arrival += shift;
  }
  return out;
}

ExperimentResult run_experiment(const Scenario& scenario, const ExperimentConfig& config) {
  const Network& net = scenario.network;
  Disruption disruption = scenario.disruption;
  disruption.lead_time_scale = config.scale;
  SaaConfig saa = scenario.saa;
  if (config.samples) saa.sample_count = *config.samples;
  if (config.seed) saa.seed = *config.seed;

  ExperimentResult r;
  r.scale = config.scale;
  r.seed = saa.seed;
  r.samples = saa.sample_count;
  r.rounds = config.rounds;

  ReplanResult replan = run_replanning(net, scenario.initial_plan, disruption, saa, config.solve);
  r.replanned = !replan.trace.rounds.empty();
  r.plan = std::move(replan.plan);
  r.trace = std::move(replan.trace);
  r.monitored = monitored_from(r.trace.notifications);

  const double w = scenario.weight_defaults.weights.lateness;
  r.initial = aggregate_objectives(tally_plan(net, scenario.initial_plan, r.monitored), w);
  const FlowPlan unrepaired = apply_notifications(scenario.initial_plan, r.trace.notifications);
  r.baseline = aggregate_objectives(tally_plan(net, unrepaired, r.monitored), w);
  r.replan_tallies = tally_plan(net, r.plan, r.monitored);
  r.replan = aggregate_objectives(r.replan_tallies, w);

  const auto base_runs = simulate_many(net, scenario.initial_plan, &disruption, config.rounds, saa.seed);
  const auto new_runs = simulate_many(net, r.plan, &disruption, config.rounds, saa.seed);
  r.baseline_simulation = summarize(net, scenario.initial_plan, base_runs, r.monitored);
  r.replan_simulation = summarize(net, r.plan, new_runs, r.monitored);
  r.lateness_csv = lateness_csv("baseline", scenario.initial_plan, base_runs, r.monitored, true) +
                   lateness_csv("replan", r.plan, new_runs, r.monitored, false);
  return r;
}

std::string summary_json(const ExperimentResult& r) {
  nlohmann::ordered_json j;
  j["scale"] = r.scale;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["rounds"] = r.rounds;
  j["replanned"] = r.replanned;
  j["initial"] = objective_json(r.initial);
  j["baseline"] = objective_json(r.baseline);
  j["replan"] = objective_json(r.replan);
  j["replan_by_agent"] = nlohmann::ordered_json::array();
  for (const DemandAgentTally& t : r.replan_tallies) {
    j["replan_by_agent"].push_back({{"agent", t.agent.str()}, {"cost", t.cost}, {"lateness", t.lateness}});
  }
  j["baseline_simulation"] = simulation_json(r.baseline_simulation);
  j["replan_simulation"] = simulation_json(r.replan_simulation);
  return j.dump(2) + "\n";
}

}  // namespace scnrisk
