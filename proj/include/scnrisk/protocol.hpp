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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scnrisk/messages.hpp"
#include "scnrisk/model.hpp"
#include "scnrisk/optimizer.hpp"

namespace scnrisk {

// The disrupted agent tells a downstream agent its flow now lands at
// `new_arrival`.
struct Notification {
  AgentId supplier;
  AgentId receiver;
  ProductId product;
  double planned_arrival = 0.0;
  double new_arrival = 0.0;
  friend bool operator==(const Notification&, const Notification&) = default;
};

struct Inform {
  AgentId supplier;
  AgentId demand;
  ProductId product;
  double quantity = 0.0;
  double over_quantity = 0.0;
  double arrival = 0.0;
  friend bool operator==(const Inform&, const Inform&) = default;
};

struct Unmet {
  AgentId demand;
  ProductId product;
  double amount = 0.0;
  std::string reason;
  friend bool operator==(const Unmet&, const Unmet&) = default;
};

struct RoundTrace {
  std::size_t index = 0;
  std::vector<DemandRequest> requests;
  std::vector<SupplierResponse> responses;
  std::vector<SelectionDecision> selections;
  std::vector<Inform> informs;
  std::vector<Unmet> unmet;
  friend bool operator==(const RoundTrace&, const RoundTrace&) = default;
};

struct ReplanTrace {
  std::vector<Notification> notifications;
  std::vector<RoundTrace> rounds;
  friend bool operator==(const ReplanTrace&, const ReplanTrace&) = default;
};

struct ReplanResult {
  FlowPlan plan;
  ReplanTrace trace;
};

// v' = v + scale * (mean lead time) for every planned outflow of the
// disrupted agent. Empty when it has none.
std::vector<Notification> identify_disruption(const Network& network, const FlowPlan& plan,
                                              const Disruption& disruption);

// One request per notified (receiver, product) whose new arrival is strictly
// past the receiver's required time.
std::vector<DemandRequest> build_requests(const Network& network, const FlowPlan& plan,
                                          std::span<const Notification> notifications);

// Request, respond, select, inform, and propagate upstream until no agent has
// an uncovered need. The returned plan is the input plan with re-sourced
// entries replaced.
ReplanResult run_replanning(const Network& network, const FlowPlan& plan,
                            const Disruption& disruption, const SaaConfig& config,
                            const SolveOptions& options = {});

std::string trace_to_json(const ReplanTrace& trace);

}  // namespace scnrisk
