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

#include "scnrisk/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "scnrisk/errors.hpp"

namespace scnrisk {
namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::kValidation, message);
}

void require_non_negative(double value, const std::string& what) {
  if (!std::isfinite(value) || value < 0.0) {
    invalid(what + " must be a finite non-negative number");
  }
}

void check_gaussian(const Gaussian& g, const std::string& what) {
  require_non_negative(g.mean, what + " mean");
  require_non_negative(g.stddev, what + " stddev");
}

void check_agent(const Agent& a) {
  const std::string who = "agent '" + a.id.str() + "'";
  std::set<ProductId> produced;
  for (const auto& line : a.produces) {
    if (line.product.empty()) invalid(who + ": empty product id");
    if (!produced.insert(line.product).second) {
      invalid(who + ": product '" + line.product.str() + "' listed twice");
    }
    require_non_negative(line.capacity, who + " capacity of '" + line.product.str() + "'");
    require_non_negative(line.unit_income, who + " unit income of '" + line.product.str() + "'");
    require_non_negative(line.unit_cost, who + " unit cost of '" + line.product.str() + "'");
  }
  for (const auto& [output, inputs] : a.bom) {
    if (!produced.contains(output)) {
      invalid(who + ": bill of materials for unknown product '" + output.str() + "'");
    }
    if (!a.planned_start.contains(output)) {
      invalid(who + ": product '" + output.str() + "' has a bill of materials but no planned start");
    }
    for (const auto& in : inputs) {
      if (in.input.empty()) invalid(who + ": empty bill of materials input");
      if (!std::isfinite(in.ratio) || in.ratio <= 0.0) {
        invalid(who + ": ratio of input '" + in.input.str() + "' must be positive");
      }
    }
  }
  for (const auto& [p, t] : a.planned_start) {
    require_non_negative(t, who + " planned start of '" + p.str() + "'");
  }
  for (const auto& [p, t] : a.deadlines) require_non_negative(t, who + " deadline of '" + p.str() + "'");
  for (const auto& [p, q] : a.demand) require_non_negative(q, who + " demand of '" + p.str() + "'");
  if (a.kind == AgentKind::kCustomer) {
    for (const auto& [p, q] : a.demand) {
      if (!a.deadlines.contains(p)) invalid(who + ": demand for '" + p.str() + "' has no deadline");
    }
  } else if (!a.deadlines.empty() || !a.demand.empty()) {
    invalid(who + ": only customers carry deadlines and demand");
  }
  for (const auto& [p, g] : a.stochastic.production) {
    if (!produced.contains(p)) invalid(who + ": production distribution for unknown product '" + p.str() + "'");
    check_gaussian(g, who + " production of '" + p.str() + "'");
  }
  for (const auto& [p, g] : a.stochastic.start_time) {
    if (!produced.contains(p)) invalid(who + ": start-time distribution for unknown product '" + p.str() + "'");
    check_gaussian(g, who + " start time of '" + p.str() + "'");
  }
  for (const auto& [key, g] : a.stochastic.lead_time) {
    check_gaussian(g, who + " lead time to '" + key.receiver.str() + "'");
  }
  for (const auto& [key, beta] : a.stochastic.over_capacity_multiplier) {
    if (!std::isfinite(beta) || beta < 1.0) {
      invalid(who + ": over-capacity multiplier to '" + key.receiver.str() + "' must be >= 1");
    }
  }
  const auto& w = a.weights;
  require_non_negative(w.reward_quantity, who + " weight reward_quantity");
  require_non_negative(w.reward_time, who + " weight reward_time");
  require_non_negative(w.overcapacity_risk, who + " weight overcapacity_risk");
  require_non_negative(w.lateness, who + " weight lateness");
  require_non_negative(w.unmet, who + " weight unmet");
  require_non_negative(a.rewards.quantity, who + " reward quantity");
  require_non_negative(a.rewards.time, who + " reward time");
}

}  // namespace

const char* to_string(AgentKind kind) noexcept {
  switch (kind) {
    case AgentKind::kCustomer: return "customer";
    case AgentKind::kDistributor: return "distributor";
    case AgentKind::kOem: return "oem";
    case AgentKind::kTierSupplier: return "tier_supplier";
    case AgentKind::kTransporter: return "transporter";
  }
  return "unknown";
}

const char* to_string(RiskAttitude attitude) noexcept {
  return attitude == RiskAttitude::kAverse ? "averse" : "neutral";
}

std::optional<AgentKind> parse_agent_kind(const std::string& text) {
  for (auto kind : {AgentKind::kCustomer, AgentKind::kDistributor, AgentKind::kOem,
                    AgentKind::kTierSupplier, AgentKind::kTransporter}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::optional<RiskAttitude> parse_risk_attitude(const std::string& text) {
  if (text == "neutral") return RiskAttitude::kNeutral;
  if (text == "averse") return RiskAttitude::kAverse;
  return std::nullopt;
}

const ProductionLine* Agent::line(const ProductId& product) const {
  auto it = std::find_if(produces.begin(), produces.end(),
                         [&](const ProductionLine& l) { return l.product == product; });
  return it == produces.end() ? nullptr : &*it;
}

Network::Network(std::vector<Agent> agents, std::vector<Edge> edges,
                 std::map<std::pair<AgentId, AgentId>, double> trust)
    : agents_(std::move(agents)), edges_(std::move(edges)), trust_(std::move(trust)) {
  std::sort(agents_.begin(), agents_.end(),
            [](const Agent& a, const Agent& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].id.empty()) invalid("agent with empty id");
    if (i > 0 && agents_[i].id == agents_[i - 1].id) {
      invalid("duplicate agent id '" + agents_[i].id.str() + "'");
    }
    check_agent(agents_[i]);
  }

  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (i > 0 && e == edges_[i - 1]) {
      invalid("duplicate edge '" + e.from.str() + "' -> '" + e.to.str() + "' (" + e.product.str() + ")");
    }
    const Agent* from = find(e.from);
    if (from == nullptr) invalid("edge references unknown agent '" + e.from.str() + "'");
    const Agent* to = find(e.to);
    if (to == nullptr) invalid("edge references unknown agent '" + e.to.str() + "'");
    if (e.from == e.to) invalid("self edge at agent '" + e.from.str() + "'");
    if (e.product.empty()) invalid("edge with empty product id");
    if (from->kind == AgentKind::kCustomer) {
      invalid("customer '" + e.from.str() + "' cannot supply other agents");
    }
    if (from->line(e.product) == nullptr) {
      invalid("agent '" + e.from.str() + "' supplies '" + e.product.str() + "' but does not produce it");
    }
    if (!from->stochastic.lead_time.contains(OutKey{e.to, e.product})) {
      invalid("edge '" + e.from.str() + "' -> '" + e.to.str() + "' (" + e.product.str() +
              ") has no lead-time distribution");
    }
  }
  for (const Agent& a : agents_) {
    for (const auto& [key, g] : a.stochastic.lead_time) {
      if (!has_edge(a.id, key.receiver, key.product)) {
        invalid("agent '" + a.id.str() + "' has a lead time for missing edge to '" +
                key.receiver.str() + "' (" + key.product.str() + ")");
      }
    }
    for (const auto& [key, beta] : a.stochastic.over_capacity_multiplier) {
      if (!has_edge(a.id, key.receiver, key.product)) {
        invalid("agent '" + a.id.str() + "' has an over-capacity multiplier for missing edge to '" +
                key.receiver.str() + "' (" + key.product.str() + ")");
      }
    }
    for (const auto& [output, inputs] : a.bom) {
      for (const auto& in : inputs) {
        if (suppliers_of(a.id, in.input).empty()) {
          invalid("agent '" + a.id.str() + "' needs '" + in.input.str() + "' but has no supplier for it");
        }
      }
    }
    for (const auto& [product, q] : a.demand) {
      if (suppliers_of(a.id, product).empty()) {
        invalid("customer '" + a.id.str() + "' demands '" + product.str() + "' but has no supplier for it");
      }
    }
  }
  for (const auto& [pair, sigma] : trust_) {
    if (find(pair.first) == nullptr) invalid("trust references unknown agent '" + pair.first.str() + "'");
    if (find(pair.second) == nullptr) invalid("trust references unknown agent '" + pair.second.str() + "'");
    require_non_negative(sigma, "trust of '" + pair.first.str() + "' in '" + pair.second.str() + "'");
  }
  (void)topological_order(*this);
}

const Agent* Network::find(const AgentId& id) const noexcept {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), id,
                             [](const Agent& a, const AgentId& key) { return a.id < key; });
  return (it != agents_.end() && it->id == id) ? &*it : nullptr;
}

const Agent& Network::agent(const AgentId& id) const {
  const Agent* a = find(id);
  if (a == nullptr) invalid("unknown agent '" + id.str() + "'");
  return *a;
}

bool Network::has_edge(const AgentId& from, const AgentId& to, const ProductId& product) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to, product});
}

std::vector<AgentId> Network::suppliers_of(const AgentId& receiver, const ProductId& product) const {
  std::vector<AgentId> out;
  for (const Edge& e : edges_) {
    if (e.to == receiver && e.product == product) out.push_back(e.from);
  }
  return out;  // edges are sorted by supplier first
}

double Network::trust(const AgentId& demand, const AgentId& supplier) const {
  auto it = trust_.find({demand, supplier});
  return it == trust_.end() ? 0.0 : it->second;
}

double Network::mean_lead_time(const AgentId& from, const AgentId& to,
                               const ProductId& product) const {
  const auto& profile = agent(from).stochastic.lead_time;
  auto it = profile.find(OutKey{to, product});
  if (it == profile.end()) {
    invalid("no lead time for '" + from.str() + "' -> '" + to.str() + "' (" + product.str() + ")");
  }
  return it->second.mean;
}

double Network::over_capacity_multiplier(const AgentId& from, const AgentId& to,
                                         const ProductId& product) const {
  const auto& betas = agent(from).stochastic.over_capacity_multiplier;
  auto it = betas.find(OutKey{to, product});
  return it == betas.end() ? 1.0 : it->second;
}

double Network::required_time(const AgentId& receiver, const ProductId& product) const {
  const Agent& a = agent(receiver);
  double earliest = std::numeric_limits<double>::infinity();
  for (const auto& [output, inputs] : a.bom) {
    for (const auto& in : inputs) {
      if (in.input == product) earliest = std::min(earliest, a.planned_start.at(output));
    }
  }
  if (std::isfinite(earliest)) return earliest;
  if (auto it = a.planned_start.find(product); it != a.planned_start.end()) return it->second;
  if (auto it = a.deadlines.find(product); it != a.deadlines.end()) return it->second;
  return std::numeric_limits<double>::infinity();
}

Network Network::with_demand_attitude(const AgentId& id, RiskAttitude attitude) const {
  std::vector<Agent> copy = agents_;
  auto it = std::find_if(copy.begin(), copy.end(), [&](const Agent& a) { return a.id == id; });
  if (it == copy.end()) invalid("unknown agent '" + id.str() + "'");
  it->attitude.as_demand = attitude;
  return Network(std::move(copy), edges_, trust_);
}

std::vector<AgentId> topological_order(const Network& network) {
  std::map<AgentId, std::size_t> indegree;
  std::map<AgentId, std::vector<AgentId>> next;
  for (const Agent& a : network.agents()) indegree[a.id] = 0;
  std::set<std::pair<AgentId, AgentId>> links;
  for (const Edge& e : network.edges()) {
    if (links.insert({e.from, e.to}).second) {
      ++indegree[e.to];
      next[e.from].push_back(e.to);
    }
  }
  std::priority_queue<AgentId, std::vector<AgentId>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push(id);
  }
  std::vector<AgentId> order;
  order.reserve(indegree.size());
  while (!ready.empty()) {
    AgentId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (const AgentId& to : next[id]) {
      if (--indegree[to] == 0) ready.push(to);
    }
  }
  if (order.size() != indegree.size()) {
    std::string members;
    for (const auto& [id, deg] : indegree) {
      if (deg > 0) members += (members.empty() ? "" : ", ") + id.str();
    }
    invalid("supply edges contain a cycle through: " + members);
  }
  return order;
}

void validate_plan(const Network& network, const FlowPlan& plan) {
  for (const auto& [key, entry] : plan) {
    const std::string who = "flow '" + key.supplier.str() + "' -> '" + key.receiver.str() + "' (" +
                            key.product.str() + ")";
    if (network.find(key.supplier) == nullptr) invalid(who + " references unknown agent '" + key.supplier.str() + "'");
    if (network.find(key.receiver) == nullptr) invalid(who + " references unknown agent '" + key.receiver.str() + "'");
    if (!network.has_edge(key.supplier, key.receiver, key.product)) invalid(who + " has no matching edge");
    require_non_negative(entry.quantity, who + " quantity");
    require_non_negative(entry.arrival, who + " arrival");
    require_non_negative(entry.over_quantity, who + " over-capacity quantity");
    require_non_negative(entry.over_arrival, who + " over-capacity arrival");
    if (entry.over_quantity > entry.quantity) invalid(who + " over-capacity quantity exceeds the flow");
  }
}

double total_outflow(const FlowPlan& plan, const AgentId& supplier, const ProductId& product) {
  double total = 0.0;
  for (const auto& [key, entry] : plan) {
    if (key.supplier == supplier && key.product == product) total += entry.quantity;
  }
  return total;
}

}  // namespace scnrisk
