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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace scnrisk {

// Opaque string identifier; the tag keeps agent and product ids apart.
template <class Tag>
class Identifier {
 public:
  Identifier() = default;
  explicit Identifier(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Identifier&, const Identifier&) = default;
  friend bool operator==(const Identifier&, const Identifier&) = default;

 private:
  std::string value_;
};

struct AgentTag {};
struct ProductTag {};
using AgentId = Identifier<AgentTag>;
using ProductId = Identifier<ProductTag>;

enum class AgentKind { kCustomer, kDistributor, kOem, kTierSupplier, kTransporter };
enum class RiskAttitude { kNeutral, kAverse };

const char* to_string(AgentKind kind) noexcept;
const char* to_string(RiskAttitude attitude) noexcept;
std::optional<AgentKind> parse_agent_kind(const std::string& text);
std::optional<RiskAttitude> parse_risk_attitude(const std::string& text);

struct Gaussian {
  double mean = 0.0;
  double stddev = 0.0;
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

struct ProductionLine {
  ProductId product;
  double capacity = 0.0;
  double unit_income = 0.0;
  double unit_cost = 0.0;
  friend bool operator==(const ProductionLine&, const ProductionLine&) = default;
};

struct BomInput {
  ProductId input;
  double ratio = 1.0;
  friend bool operator==(const BomInput&, const BomInput&) = default;
};

// Outgoing edge as seen from its supplier.
struct OutKey {
  AgentId receiver;
  ProductId product;
  friend auto operator<=>(const OutKey&, const OutKey&) = default;
  friend bool operator==(const OutKey&, const OutKey&) = default;
};

struct StochasticProfile {
  std::map<ProductId, Gaussian> production;
  std::map<ProductId, Gaussian> start_time;
  std::map<OutKey, Gaussian> lead_time;
  std::map<OutKey, double> over_capacity_multiplier;
  friend bool operator==(const StochasticProfile&, const StochasticProfile&) = default;
};

// Supplier-side weights scale the rewards (quantity, time) and the
// over-capacity risk; demand-side weights price lateness and unmet demand.
struct RiskWeights {
  double reward_quantity = 1.0;
  double reward_time = 1.0;
  double overcapacity_risk = 1.0;
  double lateness = 1e5;
  double unmet = 1e6;
  friend bool operator==(const RiskWeights&, const RiskWeights&) = default;
};

// What this agent offers its suppliers when it acts as a demand agent.
struct Rewards {
  double quantity = 0.0;
  double time = 0.0;
  friend bool operator==(const Rewards&, const Rewards&) = default;
};

// Attitudes are role dependent: an agent may be neutral while supplying and
// averse while sourcing.
struct RiskAttitudes {
  RiskAttitude as_supplier = RiskAttitude::kNeutral;
  RiskAttitude as_demand = RiskAttitude::kNeutral;
  friend bool operator==(const RiskAttitudes&, const RiskAttitudes&) = default;
};

struct Agent {
  AgentId id;
  AgentKind kind = AgentKind::kTierSupplier;
  std::vector<ProductionLine> produces;
  std::map<ProductId, std::vector<BomInput>> bom;
  std::map<ProductId, double> planned_start;
  std::map<ProductId, double> deadlines;  // customers only
  std::map<ProductId, double> demand;     // customers only
  StochasticProfile stochastic;
  RiskAttitudes attitude;
  RiskWeights weights;
  Rewards rewards;

  const ProductionLine* line(const ProductId& product) const;
  friend bool operator==(const Agent&, const Agent&) = default;
};

struct Edge {
  AgentId from;
  AgentId to;
  ProductId product;
  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct FlowKey {
  AgentId supplier;
  AgentId receiver;
  ProductId product;
  friend auto operator<=>(const FlowKey&, const FlowKey&) = default;
  friend bool operator==(const FlowKey&, const FlowKey&) = default;
};

// `quantity` is the whole flow; `over_quantity` of it was committed beyond
// nominal capacity and arrives at `over_arrival` instead of `arrival`.
struct FlowEntry {
  double quantity = 0.0;
  double arrival = 0.0;
  double over_quantity = 0.0;
  double over_arrival = 0.0;
  friend bool operator==(const FlowEntry&, const FlowEntry&) = default;
};

using FlowPlan = std::map<FlowKey, FlowEntry>;

struct Disruption {
  AgentId agent;
  double lead_time_scale = 0.0;
  double detection_time = 0.0;
  friend bool operator==(const Disruption&, const Disruption&) = default;
};

struct SaaConfig {
  std::size_t sample_count = 30;
  std::uint64_t seed = 0;
  friend bool operator==(const SaaConfig&, const SaaConfig&) = default;
};

// Immutable after construction; the constructor validates every structural
// invariant and throws Error(kValidation) naming the offending id.
class Network {
 public:
  Network(std::vector<Agent> agents, std::vector<Edge> edges,
          std::map<std::pair<AgentId, AgentId>, double> trust);

  std::span<const Agent> agents() const noexcept { return agents_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const std::map<std::pair<AgentId, AgentId>, double>& trust_table() const noexcept {
    return trust_;
  }

  const Agent& agent(const AgentId& id) const;
  const Agent* find(const AgentId& id) const noexcept;
  bool has_edge(const AgentId& from, const AgentId& to, const ProductId& product) const;

  // Z_j(k): every agent with a supply edge into `receiver` for `product`,
  // ordered by id.
  std::vector<AgentId> suppliers_of(const AgentId& receiver, const ProductId& product) const;

  // Trust spread sigma that `demand` applies to responses from `supplier`;
  // pairs without an entry are fully trusted (0).
  double trust(const AgentId& demand, const AgentId& supplier) const;

  // Mean lead time of the edge, unscaled.
  double mean_lead_time(const AgentId& from, const AgentId& to, const ProductId& product) const;
  double over_capacity_multiplier(const AgentId& from, const AgentId& to,
                                  const ProductId& product) const;

  // Time by which `receiver` must hold `product`: the earliest planned start
  // of any product it builds from it, or the customer deadline.
  double required_time(const AgentId& receiver, const ProductId& product) const;

  // Returns a copy with the demand-role attitude of `agent` replaced.
  Network with_demand_attitude(const AgentId& agent, RiskAttitude attitude) const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::vector<Agent> agents_;  // sorted by id
  std::vector<Edge> edges_;    // sorted
  std::map<std::pair<AgentId, AgentId>, double> trust_;
};

// Agents ordered so that every supplier precedes each receiver it feeds;
// ties go to the lexicographically smaller id.
std::vector<AgentId> topological_order(const Network& network);

// Throws Error(kValidation) if an entry has no matching edge or a bad value.
void validate_plan(const Network& network, const FlowPlan& plan);

double total_outflow(const FlowPlan& plan, const AgentId& supplier, const ProductId& product);

}  // namespace scnrisk
