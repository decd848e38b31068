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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "scnrisk/metrics.hpp"
#include "scnrisk/optimizer.hpp"
#include "scnrisk/protocol.hpp"
#include "scnrisk/scenario.hpp"

namespace scnrisk {

struct ExperimentConfig {
  double scale = 0.0;
  std::size_t rounds = 300;
  std::optional<std::size_t> samples;   // overrides the scenario's sample count
  std::optional<std::uint64_t> seed;    // overrides the scenario's seed
  SolveOptions solve;
};

// One load -> replan -> simulate -> evaluate pass.
struct ExperimentResult {
  double scale = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t rounds = 0;
  bool replanned = false;
  FlowPlan plan;
  ReplanTrace trace;
  MonitoredSet monitored;
  ObjectiveSummary initial;   // initial plan, planned arrivals
  ObjectiveSummary baseline;  // unrepaired plan, disrupted arrivals
  ObjectiveSummary replan;    // re-planned plan, planned arrivals
  std::vector<DemandAgentTally> replan_tallies;
  SimulationSummary baseline_simulation;
  SimulationSummary replan_simulation;
  std::string lateness_csv;
};

// Plan with each notified flow moved to its disrupted arrival.
FlowPlan apply_notifications(const FlowPlan& plan, std::span<const Notification> notifications);

ExperimentResult run_experiment(const Scenario& scenario, const ExperimentConfig& config);

// Single-run summary object (stable key order).
std::string summary_json(const ExperimentResult& result);

}  // namespace scnrisk
