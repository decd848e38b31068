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
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scnrisk/model.hpp"
#include "scnrisk/protocol.hpp"
#include "scnrisk/simulator.hpp"

namespace scnrisk {

// Receiver/product pairs whose flows are monitored (the agents the
// disruption reaches and the products it delays).
using MonitoredSet = std::set<std::pair<AgentId, ProductId>>;

MonitoredSet monitored_from(std::span<const Notification> notifications);

struct LatenessBucket {
  double delay = 0.0;
  double share = 0.0;
};

// Share of the monitored quantity that arrives `delay` late, one bucket per
// distinct delay (delays rounded to 1e-6). Throws Error(kInvalidArgument) when
// the monitored set carries no quantity.
std::vector<LatenessBucket> lateness_distribution(const FlowPlan& plan,
                                                  const SimulationOutcome& outcome,
                                                  const MonitoredSet& monitored);

// Sum of lateness over monitored flows in one round, each flow part counted
// once.
double total_lateness(const SimulationOutcome& outcome, const MonitoredSet& monitored);

struct DemandAgentTally {
  AgentId agent;
  double cost = 0.0;
  double lateness = 0.0;
};

struct ObjectiveSummary {
  double cost = 0.0;      // C_dm
  double lateness = 0.0;  // L_dm
  double objective = 0.0; // C_dm + w * L_dm
};

ObjectiveSummary aggregate_objectives(std::span<const DemandAgentTally> tallies,
                                      double lateness_weight);

// Per demand agent cost and deterministic lateness from planned arrivals.
std::vector<DemandAgentTally> tally_plan(const Network& network, const FlowPlan& plan,
                                         const MonitoredSet& monitored);

struct CustomerService {
  double unmet = 0.0;     // H_p analog
  double lateness = 0.0;  // H_t analog
};

CustomerService customer_service_metrics(const Network& network,
                                         const SimulationOutcome& outcome);

struct SimulationSummary {
  std::size_t rounds = 0;
  double mean_total_lateness = 0.0;
  double mean_unit_lateness = 0.0;  // quantity-weighted delay per unit
  double on_time_share = 0.0;       // mean share delivered with zero delay
  double mean_customer_unmet = 0.0;
  double mean_customer_lateness = 0.0;
};

SimulationSummary summarize(const Network& network, const FlowPlan& plan,
                            std::span<const SimulationOutcome> outcomes,
                            const MonitoredSet& monitored);

// `plan,round,delay,share` rows (header included) for every round.
std::string lateness_csv(const std::string& plan_label, const FlowPlan& plan,
                         std::span<const SimulationOutcome> outcomes,
                         const MonitoredSet& monitored, bool with_header);

}  // namespace scnrisk
