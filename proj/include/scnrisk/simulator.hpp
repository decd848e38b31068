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
#include <map>
#include <vector>

#include "scnrisk/model.hpp"

namespace scnrisk {

struct FlowOutcome {
  FlowKey key;
  double quantity = 0.0;
  double over_quantity = 0.0;
  double ship_start = 0.0;  // production start of the supplier
  double arrival = 0.0;
  double over_arrival = 0.0;
  double lateness = 0.0;
  double over_lateness = 0.0;
  double delivered = 0.0;  // quantity the supplier could actually build
};

struct SimulationOutcome {
  std::size_t round = 0;
  std::vector<FlowOutcome> flows;  // plan order
  std::map<AgentId, double> customer_unmet;

  const FlowOutcome* find(const FlowKey& key) const;
};

// Walks agents upstream to downstream. Agents with no planned inflow ship at
// their sampled start; the rest start at max(latest component arrival,
// planned start). Every outflow lands at start + sampled lead time (scaled
// by beta for its over-capacity part). `disruption`, when given, stretches
// the disrupted agent's lead-time means.
SimulationOutcome simulate_round(const Network& network, const FlowPlan& plan,
                                 const Disruption* disruption, std::uint64_t round_seed,
                                 std::size_t round_index = 0);

// Round i draws from derive_seed(master_seed, "simulation", {i}).
std::vector<SimulationOutcome> simulate_many(const Network& network, const FlowPlan& plan,
                                             const Disruption* disruption, std::size_t rounds,
                                             std::uint64_t master_seed);

}  // namespace scnrisk
