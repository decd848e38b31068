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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "scnrisk/messages.hpp"
#include "scnrisk/milp.hpp"
#include "scnrisk/model.hpp"
#include "scnrisk/sampling.hpp"

namespace scnrisk {

struct SolveOptions {
  milp::Options milp;
  // Called once per model instance before it is solved.
  std::function<void(const std::string& name, const milp::Problem&)> dump;
};

// ---------------------------------------------------------------------------
// Supplier response

struct ResponseProduct {
  ProductId product;
  double capacity = 0.0;   // nominal capacity left after existing commitments
  double committed = 0.0;  // subtracted from every sampled production figure
};

struct ResponsePair {
  AgentId demand;
  ProductId product;
  std::size_t product_index = 0;
  double amount = 0.0;
  double deadline = 0.0;
  double unit_income = 0.0;
  double over_capacity_multiplier = 1.0;
  double reward_quantity = 0.0;  // g^p offered by the demand agent
  double reward_time = 0.0;      // g^t offered by the demand agent
};

struct ResponseModel {
  AgentId supplier;
  std::vector<ResponseProduct> products;
  std::vector<ResponsePair> pairs;
  double reward_quantity_weight = 1.0;
  double reward_time_weight = 1.0;
  double overcapacity_weight = 1.0;
};

// The slice of one realization the supplier's model reads.
struct ResponseSample {
  std::vector<double> production;  // per model product
  std::vector<double> start_time;  // per model product
  std::vector<double> lead_time;   // per model pair
};

struct SampleDecision {
  std::vector<ResponseLine> lines;  // one per model pair
  double objective = 0.0;
};

// Keeps the requests `supplier` has an edge for. Capacity left and
// committed production are read off `plan`, ignoring entries the requests
// are about to replace.
ResponseModel build_response_model(const Network& network, const AgentId& supplier,
                                   std::span<const DemandRequest> requests, const FlowPlan& plan);

ResponseSample extract_sample(const ResponseModel& model, const SaaRealization& realization);

// Data-derived big-M: at least the total demand and the latest possible
// arrival past any deadline.
double response_big_m(const ResponseModel& model, const ResponseSample& sample);

// Binary layout per pair p: 4p+0 gamma^o, 4p+1 gamma^u, 4p+2 eta^p, 4p+3 eta^t.
// Continuous layout per pair p: 2p nominal quantity, 2p+1 over quantity.
milp::Problem response_problem(const ResponseModel& model, const ResponseSample& sample);

SampleDecision solve_response_sample(const ResponseModel& model, const ResponseSample& sample,
                                     const SolveOptions& options = {});

// Neutral: component-wise mean. Averse: the decision of the sample with the
// lowest objective, first index on ties.
SupplierResponse aggregate_saa(const AgentId& supplier, std::span<const SampleDecision> samples,
                               RiskAttitude attitude);

SupplierResponse solve_supplier_response(const ResponseModel& model,
                                         std::span<const ResponseSample> samples,
                                         RiskAttitude attitude, const SolveOptions& options = {},
                                         const std::string& dump_prefix = {});

// ---------------------------------------------------------------------------
// Supplier selection

struct SelectionProduct {
  ProductId product;
  double amount = 0.0;
  double deadline = 0.0;
};

struct SelectionCandidate {
  AgentId supplier;
  std::size_t product_index = 0;
  ResponseLine offer;
  double unit_cost = 0.0;
  double trust = 0.0;
};

struct SelectionModel {
  AgentId demand;
  std::vector<SelectionProduct> products;
  std::vector<SelectionCandidate> candidates;
  double lateness_weight = 1e5;
  double unmet_weight = 1e6;
  RiskAttitude attitude = RiskAttitude::kNeutral;
};

// One trust-perturbed view of every candidate's offer.
using SelectionSample = std::vector<ResponseLine>;

SelectionModel build_selection_model(const Network& network, const AgentId& demand,
                                     std::span<const DemandRequest> requests,
                                     std::span<const SupplierResponse> responses,
                                     RiskAttitude attitude);

std::vector<SelectionSample> draw_selection_samples(const SelectionModel& model,
                                                    std::size_t sample_count, RandomStream& rng);

// Binary layout per candidate c: 2c lambda^u, 2c+1 lambda^o.
// Continuous: candidates' quantities, then per sample the delivered amount
// of each candidate and the unmet amount of each product, then (averse
// only) the epigraph variable of the worst sample.
milp::Problem selection_problem(const SelectionModel& model,
                                std::span<const SelectionSample> samples);

SelectionDecision solve_selection(const SelectionModel& model,
                                  std::span<const SelectionSample> samples,
                                  const SolveOptions& options = {},
                                  const std::string& dump_name = {});

SelectionDecision solve_supplier_selection(const Network& network, const AgentId& demand,
                                           std::span<const DemandRequest> requests,
                                           std::span<const SupplierResponse> responses,
                                           std::size_t sample_count, RiskAttitude attitude,
                                           RandomStream& rng, const SolveOptions& options = {},
                                           const std::string& dump_name = {});

}  // namespace scnrisk
