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

#include "scnrisk/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "scnrisk/errors.hpp"

namespace scnrisk {
namespace {

using milp::Row;
using milp::RowSense;
using milp::Term;

double clean(double v) { return std::abs(v) < 1e-9 ? 0.0 : v; }

void maybe_dump(const SolveOptions& options, const std::string& name, const milp::Problem& p) {
  if (options.dump && !name.empty()) options.dump(name, p);
}

}  // namespace

// ---------------------------------------------------------------------------
// Supplier response

ResponseModel build_response_model(const Network& network, const AgentId& supplier,
                                   std::span<const DemandRequest> requests, const FlowPlan& plan) {
  const Agent& z = network.agent(supplier);
  ResponseModel model;
  model.supplier = supplier;
  model.reward_quantity_weight = z.weights.reward_quantity;
  model.reward_time_weight = z.weights.reward_time;
  model.overcapacity_weight = z.weights.overcapacity_risk;

  std::set<FlowKey> replaced;
  for (const DemandRequest& r : requests) {
    if (r.replaces) replaced.insert(FlowKey{*r.replaces, r.from, r.product});
  }

  std::vector<const DemandRequest*> servable;
  for (const DemandRequest& r : requests) {
    if (network.has_edge(supplier, r.from, r.product)) servable.push_back(&r);
  }
  std::sort(servable.begin(), servable.end(), [](const DemandRequest* a, const DemandRequest* b) {
    return std::tie(a->from, a->product) < std::tie(b->from, b->product);
  });

  std::map<ProductId, std::size_t> product_index;
  for (const DemandRequest* r : servable) product_index.emplace(r->product, 0);
  for (auto& [product, index] : product_index) {
    index = model.products.size();
    double committed = 0.0;
    for (const auto& [key, entry] : plan) {
      if (key.supplier == supplier && key.product == product && !replaced.contains(key)) {
        committed += entry.quantity;
      }
    }
    const ProductionLine* line = z.line(product);
    model.products.push_back(
        ResponseProduct{product, std::max(0.0, line->capacity - committed), committed});
  }

  for (const DemandRequest* r : servable) {
    const Agent& j = network.agent(r->from);
    ResponsePair pair;
    pair.demand = r->from;
    pair.product = r->product;
    pair.product_index = product_index.at(r->product);
    pair.amount = r->amount;
    pair.deadline = r->deadline;
    pair.unit_income = z.line(r->product)->unit_income;
    pair.over_capacity_multiplier = network.over_capacity_multiplier(supplier, r->from, r->product);
    pair.reward_quantity = j.rewards.quantity;
    pair.reward_time = j.rewards.time;
    if (!model.pairs.empty() && model.pairs.back().demand == pair.demand &&
        model.pairs.back().product == pair.product) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate request from '" + pair.demand.str() + "' for '" + pair.product.str() + "'");
    }
    model.pairs.push_back(std::move(pair));
  }
  return model;
}

ResponseSample extract_sample(const ResponseModel& model, const SaaRealization& xi) {
  ResponseSample s;
  for (const ResponseProduct& p : model.products) {
    s.production.push_back(xi.production.at({model.supplier, p.product}));
    s.start_time.push_back(xi.start_time.at({model.supplier, p.product}));
  }
  for (const ResponsePair& pair : model.pairs) {
    s.lead_time.push_back(xi.lead_time.at(Edge{model.supplier, pair.demand, pair.product}));
  }
  return s;
}

double response_big_m(const ResponseModel& model, const ResponseSample& sample) {
  double demand = 0.0;
  double latest_deadline = 0.0;
  double latest_arrival = 0.0;
  for (std::size_t p = 0; p < model.pairs.size(); ++p) {
    const ResponsePair& pair = model.pairs[p];
    demand += pair.amount;
    latest_deadline = std::max(latest_deadline, pair.deadline);
    const double arrival = sample.lead_time[p] + sample.start_time[pair.product_index];
    latest_arrival = std::max(latest_arrival, pair.over_capacity_multiplier * arrival);
  }
  return std::max(demand, latest_deadline + latest_arrival) + 1.0;
}

milp::Problem response_problem(const ResponseModel& model, const ResponseSample& sample) {
  const std::size_t pairs = model.pairs.size();
  if (sample.lead_time.size() != pairs || sample.production.size() != model.products.size() ||
      sample.start_time.size() != model.products.size()) {
    throw Error(ErrorKind::kInvalidArgument, "response sample does not match the model dimensions");
  }
  const double big_m = response_big_m(model, sample);

  milp::Problem p;
  p.direction = milp::Direction::kMaximize;
  p.binary_count = 4 * pairs;
  p.lower.assign(2 * pairs, 0.0);
  p.upper.resize(2 * pairs);
  p.objective.resize(2 * pairs);
  p.binary_objective.assign(p.binary_count, 0.0);

  for (std::size_t i = 0; i < pairs; ++i) {
    const ResponsePair& pair = model.pairs[i];
    const std::string tag = pair.demand.str() + "/" + pair.product.str();
    const std::size_t yu = 2 * i;
    const std::size_t yo = 2 * i + 1;
    // gamma^o is enumerated first so a tie between nominal and over-capacity
    // quantities resolves to nominal.
    const std::size_t go = 4 * i;
    const std::size_t gu = 4 * i + 1;
    const std::size_t ep = 4 * i + 2;
    const std::size_t et = 4 * i + 3;
    p.continuous_names.push_back("y_nominal[" + tag + "]");
    p.continuous_names.push_back("y_over[" + tag + "]");
    for (const char* b : {"gamma_o", "gamma_u", "eta_p", "eta_t"}) {
      p.binary_names.push_back(std::string(b) + "[" + tag + "]");
    }
    p.upper[yu] = pair.amount;
    p.upper[yo] = pair.amount;
    p.objective[yu] = pair.unit_income;
    p.objective[yo] = pair.unit_income - model.overcapacity_weight;

    p.rows.push_back(Row{{{yu, 1.0}}, {{gu, -big_m}}, RowSense::kLessEqual, 0.0, {}, "select_nominal[" + tag + "]"});
    p.rows.push_back(Row{{{yo, 1.0}}, {{go, -big_m}}, RowSense::kLessEqual, 0.0, {}, "select_over[" + tag + "]"});
    p.rows.push_back(Row{{{yu, 1.0}, {yo, 1.0}}, {}, RowSense::kEqual, pair.amount, ep, "fulfil[" + tag + "]"});
    p.rows.push_back(Row{{{yu, 1.0}, {yo, 1.0}}, {}, RowSense::kLessEqual, pair.amount, {}, "at_most_demand[" + tag + "]"});

    // Effective arrival (beta-scaled when over-capacity is quoted) must meet
    // the deadline for eta^t to be set.
    const double arrival = sample.lead_time[i] + sample.start_time[pair.product_index];
    p.rows.push_back(Row{{},
                         {{go, (pair.over_capacity_multiplier - 1.0) * arrival}, {et, big_m}},
                         RowSense::kLessEqual,
                         pair.deadline + big_m - arrival,
                         {},
                         "on_time[" + tag + "]"});
    p.rows.push_back(Row{{}, {{et, 1.0}, {gu, -1.0}, {go, -1.0}}, RowSense::kLessEqual, 0.0, {},
                         "on_time_needs_flow[" + tag + "]"});
  }

  for (std::size_t k = 0; k < model.products.size(); ++k) {
    const ResponseProduct& prod = model.products[k];
    Row production{{}, {}, RowSense::kLessEqual, std::max(0.0, sample.production[k] - prod.committed), {},
                   "production[" + prod.product.str() + "]"};
    Row capacity{{}, {}, RowSense::kLessEqual, prod.capacity, {}, "capacity[" + prod.product.str() + "]"};
    for (std::size_t i = 0; i < pairs; ++i) {
      if (model.pairs[i].product_index != k) continue;
      production.continuous.push_back({2 * i, 1.0});
      production.continuous.push_back({2 * i + 1, 1.0});
      capacity.continuous.push_back({2 * i, 1.0});
    }
    p.rows.push_back(std::move(production));
    p.rows.push_back(std::move(capacity));
  }

  // Rewards are paid per demand agent only when every product it asked for
  // is satisfied.
  std::map<AgentId, std::vector<std::size_t>> by_demand;
  for (std::size_t i = 0; i < pairs; ++i) by_demand[model.pairs[i].demand].push_back(i);
  for (const auto& [demand, idx] : by_demand) {
    const ResponsePair& first = model.pairs[idx.front()];
    milp::BinaryProduct quantity{{}, model.reward_quantity_weight * first.reward_quantity};
    milp::BinaryProduct time{{}, model.reward_time_weight * first.reward_time};
    for (std::size_t i : idx) {
      quantity.factors.push_back(4 * i + 2);
      time.factors.push_back(4 * i + 3);
    }
    if (quantity.coefficient != 0.0) p.binary_products.push_back(std::move(quantity));
    if (time.coefficient != 0.0) p.binary_products.push_back(std::move(time));
  }
  return p;
}

SampleDecision solve_response_sample(const ResponseModel& model, const ResponseSample& sample,
                                     const SolveOptions& options) {
  const milp::Problem problem = response_problem(model, sample);
  auto solution = milp::solve_exact(problem, options.milp);
  if (!solution) throw Error(ErrorKind::kSolver, "response model for '" + model.supplier.str() + "' is infeasible");
  SampleDecision out;
  out.objective = solution->objective;
  for (std::size_t i = 0; i < model.pairs.size(); ++i) {
    const ResponsePair& pair = model.pairs[i];
    const double arrival = sample.lead_time[i] + sample.start_time[pair.product_index];
    out.lines.push_back(ResponseLine{pair.demand, pair.product, clean(solution->values[2 * i]),
                                     clean(solution->values[2 * i + 1]), arrival,
                                     pair.over_capacity_multiplier * arrival});
  }
  return out;
}

SupplierResponse aggregate_saa(const AgentId& supplier, std::span<const SampleDecision> samples,
                               RiskAttitude attitude) {
  if (samples.empty()) throw Error(ErrorKind::kInvalidArgument, "aggregate_saa needs at least one sample");
  SupplierResponse out{supplier, {}};
  if (attitude == RiskAttitude::kAverse) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].objective < samples[worst].objective) worst = i;
    }
    out.lines = samples[worst].lines;
    return out;
  }
  out.lines = samples.front().lines;
  const double n = static_cast<double>(samples.size());
  for (std::size_t l = 0; l < out.lines.size(); ++l) {
    double yu = 0, yo = 0, vu = 0, vo = 0;
    for (const SampleDecision& s : samples) {
      yu += s.lines[l].nominal_quantity;
      yo += s.lines[l].over_quantity;
      vu += s.lines[l].nominal_arrival;
      vo += s.lines[l].over_arrival;
    }
    out.lines[l].nominal_quantity = clean(yu / n);
    out.lines[l].over_quantity = clean(yo / n);
    out.lines[l].nominal_arrival = vu / n;
    out.lines[l].over_arrival = vo / n;
  }
  return out;
}

SupplierResponse solve_supplier_response(const ResponseModel& model,
                                         std::span<const ResponseSample> samples,
                                         RiskAttitude attitude, const SolveOptions& options,
                                         const std::string& dump_prefix) {
  std::vector<SampleDecision> decisions;
  decisions.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (options.dump && !dump_prefix.empty()) {
      maybe_dump(options, dump_prefix + "_sample" + std::to_string(i), response_problem(model, samples[i]));
    }
    decisions.push_back(solve_response_sample(model, samples[i], options));
  }
  SupplierResponse response = aggregate_saa(model.supplier, decisions, attitude);
  for (std::size_t l = 0; l < response.lines.size(); ++l) {
    response.lines[l].over_arrival =
        model.pairs[l].over_capacity_multiplier * response.lines[l].nominal_arrival;
  }
  return response;
}

// ---------------------------------------------------------------------------
// Supplier selection

SelectionModel build_selection_model(const Network& network, const AgentId& demand,
                                     std::span<const DemandRequest> requests,
                                     std::span<const SupplierResponse> responses,
                                     RiskAttitude attitude) {
  const Agent& j = network.agent(demand);
  SelectionModel model;
  model.demand = demand;
  model.attitude = attitude;
  model.lateness_weight = j.weights.lateness;
  model.unmet_weight = j.weights.unmet;

  std::map<ProductId, std::size_t> product_index;
  for (const DemandRequest& r : requests) {
    if (r.from != demand) continue;
    if (product_index.contains(r.product)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate request from '" + demand.str() + "' for '" + r.product.str() + "'");
    }
    product_index[r.product] = 0;
  }
  for (auto& [product, index] : product_index) {
    index = model.products.size();
    for (const DemandRequest& r : requests) {
      if (r.from == demand && r.product == product) {
        model.products.push_back(SelectionProduct{product, r.amount, r.deadline});
      }
    }
  }

  std::vector<const SupplierResponse*> ordered;
  for (const SupplierResponse& r : responses) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const SupplierResponse* a, const SupplierResponse* b) { return a->supplier < b->supplier; });
  for (const SupplierResponse* r : ordered) {
    for (const ResponseLine& line : r->lines) {
      if (line.demand != demand) continue;
      auto it = product_index.find(line.product);
      if (it == product_index.end()) continue;
      if (line.nominal_quantity + line.over_quantity <= 1e-9) continue;
      const ProductionLine* pl = network.agent(r->supplier).line(line.product);
      model.candidates.push_back(SelectionCandidate{r->supplier, it->second, line,
                                                    pl != nullptr ? pl->unit_cost : 0.0,
                                                    network.trust(demand, r->supplier)});
    }
  }
  return model;
}

std::vector<SelectionSample> draw_selection_samples(const SelectionModel& model,
                                                    std::size_t sample_count, RandomStream& rng) {
  std::vector<SelectionSample> out(sample_count);
  for (auto& sample : out) {
    for (const SelectionCandidate& c : model.candidates) {
      SupplierResponse view = perturb_response(SupplierResponse{c.supplier, {c.offer}}, c.trust, rng);
      sample.push_back(view.lines.front());
    }
  }
  return out;
}

milp::Problem selection_problem(const SelectionModel& model,
                                std::span<const SelectionSample> samples) {
  const std::size_t nc = model.candidates.size();
  const std::size_t nk = model.products.size();
  const std::size_t ns = samples.size();
  if (ns == 0) throw Error(ErrorKind::kInvalidArgument, "selection needs at least one sample");
  for (const SelectionSample& s : samples) {
    if (s.size() != nc) throw Error(ErrorKind::kInvalidArgument, "selection sample does not match the candidates");
  }
  const bool averse = model.attitude == RiskAttitude::kAverse;
  const double inv = 1.0 / static_cast<double>(ns);
  auto delivered = [&](std::size_t i, std::size_t c) { return nc + i * (nc + nk) + c; };
  auto unmet = [&](std::size_t i, std::size_t k) { return nc + i * (nc + nk) + nc + k; };
  const std::size_t tau = nc + ns * (nc + nk);
  const std::size_t n = tau + (averse ? 1 : 0);

  milp::Problem p;
  p.direction = milp::Direction::kMinimize;
  p.binary_count = 2 * nc;
  p.lower.assign(n, 0.0);
  p.upper.assign(n, lp::kInfinity);
  p.objective.assign(n, 0.0);
  p.binary_objective.assign(p.binary_count, 0.0);
  p.continuous_names.resize(n);

  std::vector<std::vector<double>> late_u(ns, std::vector<double>(nc));
  std::vector<std::vector<double>> late_o(ns, std::vector<double>(nc));
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t c = 0; c < nc; ++c) {
      const double t = model.products[model.candidates[c].product_index].deadline;
      late_u[i][c] = std::max(samples[i][c].nominal_arrival - t, 0.0);
      late_o[i][c] = std::max(samples[i][c].over_arrival - t, 0.0);
    }
  }

  for (std::size_t c = 0; c < nc; ++c) {
    const SelectionCandidate& cand = model.candidates[c];
    const std::string tag = cand.supplier.str() + "/" + model.products[cand.product_index].product.str();
    const double offered = cand.offer.nominal_quantity + cand.offer.over_quantity;
    p.continuous_names[c] = "y[" + tag + "]";
    p.binary_names.push_back("lambda_u[" + tag + "]");
    p.binary_names.push_back("lambda_o[" + tag + "]");
    p.upper[c] = offered;
    p.rows.push_back(Row{{{c, 1.0}}, {{2 * c, -offered}}, RowSense::kLessEqual, 0.0, {}, "select[" + tag + "]"});
    p.rows.push_back(Row{{{c, 1.0}}, {{2 * c + 1, -offered}}, RowSense::kLessEqual,
                         cand.offer.nominal_quantity, {}, "over[" + tag + "]"});
    if (!averse) {
      p.objective[c] = cand.unit_cost;
      for (std::size_t i = 0; i < ns; ++i) {
        p.binary_objective[2 * c] += model.lateness_weight * late_u[i][c] * inv;
        p.binary_objective[2 * c + 1] += model.lateness_weight * late_o[i][c] * inv;
      }
    }
  }
  for (std::size_t k = 0; k < nk; ++k) {
    Row cover{{}, {}, RowSense::kLessEqual, model.products[k].amount, {},
              "at_most_demand[" + model.products[k].product.str() + "]"};
    for (std::size_t c = 0; c < nc; ++c) {
      if (model.candidates[c].product_index == k) cover.continuous.push_back({c, 1.0});
    }
    p.rows.push_back(std::move(cover));
  }

  for (std::size_t i = 0; i < ns; ++i) {
    const std::string si = std::to_string(i);
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t dv = delivered(i, c);
      p.continuous_names[dv] = "delivered[" + model.candidates[c].supplier.str() + "#" + std::to_string(c) + "," + si + "]";
      p.upper[dv] = samples[i][c].nominal_quantity + samples[i][c].over_quantity;
      p.rows.push_back(Row{{{dv, 1.0}, {c, -1.0}}, {}, RowSense::kLessEqual, 0.0, {},
                           "delivered_le_selected[" + std::to_string(c) + "," + si + "]"});
    }
    for (std::size_t k = 0; k < nk; ++k) {
      const std::size_t uv = unmet(i, k);
      p.continuous_names[uv] = "unmet[" + model.products[k].product.str() + "," + si + "]";
      p.upper[uv] = model.products[k].amount;
      Row shortfall{{{uv, 1.0}}, {}, RowSense::kGreaterEqual, model.products[k].amount, {},
                    "unmet[" + model.products[k].product.str() + "," + si + "]"};
      for (std::size_t c = 0; c < nc; ++c) {
        if (model.candidates[c].product_index == k) shortfall.continuous.push_back({delivered(i, c), 1.0});
      }
      p.rows.push_back(std::move(shortfall));
      if (!averse) p.objective[uv] = model.unmet_weight * inv;
    }
    if (averse) {
      Row epigraph{{{tau, 1.0}}, {}, RowSense::kGreaterEqual, 0.0, {}, "worst_case[" + si + "]"};
      for (std::size_t c = 0; c < nc; ++c) {
        epigraph.continuous.push_back({c, -model.candidates[c].unit_cost});
        epigraph.binary.push_back({2 * c, -model.lateness_weight * late_u[i][c]});
        epigraph.binary.push_back({2 * c + 1, -model.lateness_weight * late_o[i][c]});
      }
      for (std::size_t k = 0; k < nk; ++k) epigraph.continuous.push_back({unmet(i, k), -model.unmet_weight});
      p.rows.push_back(std::move(epigraph));
    }
  }
  if (averse) {
    p.continuous_names[tau] = "worst_case";
    p.objective[tau] = 1.0;
  }
  return p;
}

SelectionDecision solve_selection(const SelectionModel& model,
                                  std::span<const SelectionSample> samples,
                                  const SolveOptions& options, const std::string& dump_name) {
  const milp::Problem problem = selection_problem(model, samples);
  maybe_dump(options, dump_name, problem);
  auto solution = milp::solve_exact(problem, options.milp);
  if (!solution) throw Error(ErrorKind::kSolver, "selection model for '" + model.demand.str() + "' is infeasible");
  SelectionDecision out;
  out.demand = model.demand;
  out.objective = solution->objective;
  for (std::size_t c = 0; c < model.candidates.size(); ++c) {
    const SelectionCandidate& cand = model.candidates[c];
    out.lines.push_back(SelectionLine{cand.supplier, model.products[cand.product_index].product,
                                      clean(solution->values[c]), solution->binaries[2 * c] != 0,
                                      solution->binaries[2 * c + 1] != 0});
  }
  return out;
}

SelectionDecision solve_supplier_selection(const Network& network, const AgentId& demand,
                                           std::span<const DemandRequest> requests,
                                           std::span<const SupplierResponse> responses,
                                           std::size_t sample_count, RiskAttitude attitude,
                                           RandomStream& rng, const SolveOptions& options,
                                           const std::string& dump_name) {
  const SelectionModel model = build_selection_model(network, demand, requests, responses, attitude);
  const auto samples = draw_selection_samples(model, sample_count, rng);
  return solve_selection(model, samples, options, dump_name);
}

}  // namespace scnrisk
