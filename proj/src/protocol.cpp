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

#include "scnrisk/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "scnrisk/errors.hpp"
#include "scnrisk/sampling.hpp"

namespace scnrisk {
namespace {

constexpr double kQuantityEps = 1e-9;

const ResponseLine* find_offer(std::span<const SupplierResponse> responses, const AgentId& supplier,
                               const AgentId& demand, const ProductId& product) {
  for (const SupplierResponse& r : responses) {
    if (r.supplier != supplier) continue;
    for (const ResponseLine& line : r.lines) {
      if (line.demand == demand && line.product == product) return &line;
    }
  }
  return nullptr;
}

// Adds a newly selected flow to the plan, merging with an existing entry
// for the same supplier, receiver and product.
void merge_flow(FlowPlan& plan, const FlowKey& key, double quantity, const ResponseLine& offer) {
  FlowEntry add;
  add.quantity = quantity;
  add.over_quantity = std::max(quantity - offer.nominal_quantity, 0.0);
  if (add.over_quantity <= kQuantityEps) add.over_quantity = 0.0;
  add.arrival = offer.nominal_arrival;
  add.over_arrival = add.over_quantity > 0.0 ? offer.over_arrival : 0.0;

  auto [it, inserted] = plan.emplace(key, add);
  if (inserted) return;
  FlowEntry& e = it->second;
  e.quantity += add.quantity;
  e.arrival = std::max(e.arrival, add.arrival);
  e.over_quantity += add.over_quantity;
  e.over_arrival = std::max(e.over_arrival, add.over_arrival);
}

// Component requests of agents that took on new commitments this round.
std::vector<DemandRequest> propagate(const Network& network, const FlowPlan& plan,
                                     std::span<const Inform> informs) {
  std::map<AgentId, double> earliest_ship;
  for (const Inform& in : informs) {
    if (in.quantity <= kQuantityEps) continue;
    const double ship =
        std::max(0.0, in.arrival - network.mean_lead_time(in.supplier, in.demand, in.product));
    auto [it, inserted] = earliest_ship.emplace(in.supplier, ship);
    if (!inserted) it->second = std::min(it->second, ship);
  }

  std::vector<DemandRequest> out;
  for (const auto& [supplier, deadline] : earliest_ship) {
    const Agent& a = network.agent(supplier);
    std::map<ProductId, double> needed;
    for (const auto& [output, inputs] : a.bom) {
      const double produced = total_outflow(plan, supplier, output);
      for (const BomInput& in : inputs) needed[in.input] += in.ratio * produced;
    }
    for (const auto& [component, need] : needed) {
      double held = 0.0;
      for (const auto& [key, entry] : plan) {
        if (key.receiver == supplier && key.product == component) held += entry.quantity;
      }
      const double shortfall = need - held;
      if (shortfall > kQuantityEps) {
        out.push_back(DemandRequest{supplier, component, shortfall, deadline, std::nullopt});
      }
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const DemandRequest& r) {
  nlohmann::ordered_json j{{"from", r.from.str()}, {"product", r.product.str()},
                           {"amount", r.amount}, {"deadline", r.deadline}};
  j["replaces"] = r.replaces ? nlohmann::ordered_json(r.replaces->str()) : nlohmann::ordered_json();
  return j;
}

}  // namespace

std::vector<Notification> identify_disruption(const Network& network, const FlowPlan& plan,
                                              const Disruption& disruption) {
  if (disruption.lead_time_scale < 0.0 || !std::isfinite(disruption.lead_time_scale)) {
    throw Error(ErrorKind::kInvalidArgument, "lead-time scale must be a finite non-negative number");
  }
  network.agent(disruption.agent);
  std::vector<Notification> out;
  for (const auto& [key, entry] : plan) {
    if (key.supplier != disruption.agent) continue;
    const double shift =
        disruption.lead_time_scale * network.mean_lead_time(key.supplier, key.receiver, key.product);
    out.push_back(Notification{key.supplier, key.receiver, key.product, entry.arrival,
                               entry.arrival + shift});
  }
  return out;
}

std::vector<DemandRequest> build_requests(const Network& network, const FlowPlan& plan,
                                          std::span<const Notification> notifications) {
  std::vector<DemandRequest> out;
  for (const Notification& n : notifications) {
    const double required = network.required_time(n.receiver, n.product);
    if (!(n.new_arrival > required)) continue;
    const FlowEntry& entry = plan.at(FlowKey{n.supplier, n.receiver, n.product});
    if (entry.quantity <= 0.0) continue;
    out.push_back(DemandRequest{n.receiver, n.product, entry.quantity, required, n.supplier});
  }
  std::sort(out.begin(), out.end(), [](const DemandRequest& a, const DemandRequest& b) {
    return std::tie(a.from, a.product) < std::tie(b.from, b.product);
  });
  return out;
}

ReplanResult run_replanning(const Network& network, const FlowPlan& plan,
                            const Disruption& disruption, const SaaConfig& config,
                            const SolveOptions& options) {
  if (config.sample_count == 0) throw Error(ErrorKind::kInvalidArgument, "sample count must be positive");
  ReplanResult result;
  result.plan = plan;
  result.trace.notifications = identify_disruption(network, plan, disruption);
  std::vector<DemandRequest> requests = build_requests(network, plan, result.trace.notifications);
  if (requests.empty()) return result;

  const std::vector<SaaRealization> realizations = make_realizations(network, config, disruption);
  const std::size_t max_rounds = network.agents().size();

  for (std::size_t round = 0; !requests.empty(); ++round) {
    if (round >= max_rounds) {
      throw Error(ErrorKind::kSolver, "request propagation did not terminate");
    }
    RoundTrace rt;
    rt.index = round;
    rt.requests = requests;
    const std::string tag = "round" + std::to_string(round);

    std::set<AgentId> candidates;
    for (const DemandRequest& r : requests) {
      for (const AgentId& z : network.suppliers_of(r.from, r.product)) candidates.insert(z);
    }
    for (const AgentId& z : candidates) {
      const ResponseModel model = build_response_model(network, z, requests, result.plan);
      if (model.pairs.empty()) continue;
      std::vector<ResponseSample> samples;
      samples.reserve(realizations.size());
      for (const SaaRealization& xi : realizations) samples.push_back(extract_sample(model, xi));
      rt.responses.push_back(solve_supplier_response(model, samples,
                                                     network.agent(z).attitude.as_supplier, options,
                                                     tag + "_response_" + z.str()));
    }

    std::set<AgentId> demanders;
    for (const DemandRequest& r : requests) demanders.insert(r.from);
    for (const AgentId& j : demanders) {
      RandomStream rng(derive_seed(config.seed, streams::kSelectionTrust, {round, hash_label(j.str())}));
      rt.selections.push_back(solve_supplier_selection(
          network, j, requests, rt.responses, config.sample_count,
          network.agent(j).attitude.as_demand, rng, options, tag + "_selection_" + j.str()));
    }

    for (const DemandRequest& r : requests) {
      if (r.replaces) result.plan.erase(FlowKey{*r.replaces, r.from, r.product});
    }
    for (const DemandRequest& r : requests) {
      const SelectionDecision& decision = *std::find_if(
          rt.selections.begin(), rt.selections.end(),
          [&](const SelectionDecision& d) { return d.demand == r.from; });
      double covered = 0.0;
      for (const SelectionLine& line : decision.lines) {
        if (line.product != r.product || line.quantity <= kQuantityEps) continue;
        const ResponseLine* offer = find_offer(rt.responses, line.supplier, r.from, r.product);
        merge_flow(result.plan, FlowKey{line.supplier, r.from, r.product}, line.quantity, *offer);
        const double over = std::max(line.quantity - offer->nominal_quantity, 0.0);
        rt.informs.push_back(Inform{line.supplier, r.from, r.product, line.quantity,
                                    over > kQuantityEps ? over : 0.0,
                                    over > kQuantityEps ? offer->over_arrival : offer->nominal_arrival});
        covered += line.quantity;
      }
      const double missing = r.amount - covered;
      if (missing > kQuantityEps) {
        const bool any_supplier = !network.suppliers_of(r.from, r.product).empty();
        rt.unmet.push_back(Unmet{r.from, r.product, missing,
                                 any_supplier ? "insufficient offers" : "no candidate supplier"});
      }
    }

    requests = propagate(network, result.plan, rt.informs);
    result.trace.rounds.push_back(std::move(rt));
  }
  return result;
}

std::string trace_to_json(const ReplanTrace& trace) {
  using nlohmann::ordered_json;
  ordered_json root;
  root["notifications"] = ordered_json::array();
  for (const Notification& n : trace.notifications) {
    root["notifications"].push_back({{"supplier", n.supplier.str()}, {"receiver", n.receiver.str()},
                                     {"product", n.product.str()},
                                     {"planned_arrival", n.planned_arrival},
                                     {"new_arrival", n.new_arrival}});
  }
  root["rounds"] = ordered_json::array();
  for (const RoundTrace& rt : trace.rounds) {
    ordered_json r{{"index", rt.index}};
    r["requests"] = ordered_json::array();
    for (const DemandRequest& q : rt.requests) r["requests"].push_back(to_json(q));
    r["responses"] = ordered_json::array();
    for (const SupplierResponse& s : rt.responses) {
      ordered_json lines = ordered_json::array();
      for (const ResponseLine& l : s.lines) {
        lines.push_back({{"demand", l.demand.str()}, {"product", l.product.str()},
                         {"nominal_quantity", l.nominal_quantity},
                         {"over_quantity", l.over_quantity},
                         {"nominal_arrival", l.nominal_arrival},
                         {"over_arrival", l.over_arrival}});
      }
      r["responses"].push_back({{"supplier", s.supplier.str()}, {"lines", lines}});
    }
    r["selections"] = ordered_json::array();
    for (const SelectionDecision& d : rt.selections) {
      ordered_json lines = ordered_json::array();
      for (const SelectionLine& l : d.lines) {
        lines.push_back({{"supplier", l.supplier.str()}, {"product", l.product.str()},
                         {"quantity", l.quantity}, {"nominal_selected", l.nominal_selected},
                         {"over_selected", l.over_selected}});
      }
      r["selections"].push_back({{"demand", d.demand.str()}, {"objective", d.objective}, {"lines", lines}});
    }
    r["informs"] = ordered_json::array();
    for (const Inform& i : rt.informs) {
      r["informs"].push_back({{"supplier", i.supplier.str()}, {"demand", i.demand.str()},
                              {"product", i.product.str()}, {"quantity", i.quantity},
                              {"over_quantity", i.over_quantity}, {"arrival", i.arrival}});
    }
    r["unmet"] = ordered_json::array();
    for (const Unmet& u : rt.unmet) {
      r["unmet"].push_back({{"demand", u.demand.str()}, {"product", u.product.str()},
                            {"amount", u.amount}, {"reason", u.reason}});
    }
    root["rounds"].push_back(std::move(r));
  }
  return root.dump(2) + "\n";
}

}  // namespace scnrisk
