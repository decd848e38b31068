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

#include "scnrisk/simulator.hpp"

#include <algorithm>
#include <limits>

#include "scnrisk/errors.hpp"
#include "scnrisk/sampling.hpp"

namespace scnrisk {
namespace {

struct Inflow {
  double quantity = 0.0;   // planned
  double delivered = 0.0;  // what actually arrives
  double latest = -std::numeric_limits<double>::infinity();
};

double fraction(double have, double need) {
  if (need <= 0.0) return 1.0;
  return std::clamp(have / need, 0.0, 1.0);
}

}  // namespace

const FlowOutcome* SimulationOutcome::find(const FlowKey& key) const {
  for (const FlowOutcome& f : flows) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

SimulationOutcome simulate_round(const Network& network, const FlowPlan& plan,
                                 const Disruption* disruption, std::uint64_t round_seed,
                                 std::size_t round_index) {
  validate_plan(network, plan);

  // Every edge and every production line consumes exactly one draw, whether
  // or not the plan uses it, so two plans see common random numbers.
  RandomStream rng(round_seed);
  std::map<Edge, double> lead;
  for (const Edge& e : network.edges()) {
    lead[e] = sample_gaussian_trunc(lead_time_distribution(network, e, disruption), rng);
  }
  std::map<AgentProduct, double> source_start;
  for (const Agent& a : network.agents()) {
    for (const ProductionLine& line : a.produces) {
      source_start[{a.id, line.product}] =
          sample_gaussian_trunc(start_time_distribution(a, line.product), rng);
    }
  }

  std::map<AgentProduct, Inflow> inflow;  // keyed by (receiver, product)
  std::map<FlowKey, FlowOutcome> done;

  for (const AgentId& id : topological_order(network)) {
    const Agent& a = network.agent(id);

    std::map<ProductId, double> outflow;
    for (const auto& [key, entry] : plan) {
      if (key.supplier == id) outflow[key.product] += entry.quantity;
    }

    // Share of each component's planned need that actually arrived.
    std::map<ProductId, double> component_need;
    for (const auto& [output, inputs] : a.bom) {
      const auto it = outflow.find(output);
      if (it == outflow.end()) continue;
      for (const BomInput& in : inputs) component_need[in.input] += in.ratio * it->second;
    }

    for (const auto& [product, produced] : outflow) {
      double start = 0.0;
      double share = 1.0;
      if (const auto bom = a.bom.find(product); bom != a.bom.end()) {
        start = a.planned_start.at(product);
        for (const BomInput& in : bom->second) {
          const auto got = inflow.find({id, in.input});
          if (got == inflow.end() || got->second.quantity <= 0.0) {
            throw Error(ErrorKind::kSimulation, "agent '" + id.str() + "' ships '" + product.str() +
                                                    "' but the plan has no inflow of '" +
                                                    in.input.str() + "'");
          }
          start = std::max(start, got->second.latest);
          share = std::min(share, fraction(got->second.delivered, component_need.at(in.input)));
        }
      } else if (const auto got = inflow.find({id, product});
                 got != inflow.end() && got->second.quantity > 0.0) {
        start = got->second.latest;
        if (const auto ps = a.planned_start.find(product); ps != a.planned_start.end()) {
          start = std::max(start, ps->second);
        }
        share = fraction(got->second.delivered, produced);
      } else {
        start = source_start.at({id, product});
      }

      for (const auto& [key, entry] : plan) {
        if (key.supplier != id || key.product != product) continue;
        const Edge edge{key.supplier, key.receiver, key.product};
        const double l = lead.at(edge);
        const double beta = network.over_capacity_multiplier(key.supplier, key.receiver, key.product);
        const double required = network.required_time(key.receiver, key.product);

        FlowOutcome f;
        f.key = key;
        f.quantity = entry.quantity;
        f.over_quantity = entry.over_quantity;
        f.ship_start = start;
        f.arrival = start + l;
        f.over_arrival = start + beta * l;
        f.lateness = std::max(f.arrival - required, 0.0);
        f.over_lateness = entry.over_quantity > 0.0 ? std::max(f.over_arrival - required, 0.0) : 0.0;
        f.delivered = entry.quantity * share;

        Inflow& in = inflow[{key.receiver, key.product}];
        if (entry.quantity > 0.0) {
          in.quantity += entry.quantity;
          in.delivered += f.delivered;
          const bool nominal = entry.quantity - entry.over_quantity > 0.0;
          if (nominal) in.latest = std::max(in.latest, f.arrival);
          if (entry.over_quantity > 0.0) in.latest = std::max(in.latest, f.over_arrival);
        }
        done.emplace(key, f);
      }
    }
  }

  SimulationOutcome out;
  out.round = round_index;
  for (const auto& [key, entry] : plan) out.flows.push_back(done.at(key));
  for (const Agent& a : network.agents()) {
    if (a.kind != AgentKind::kCustomer) continue;
    double unmet = 0.0;
    for (const auto& [product, amount] : a.demand) {
      const auto got = inflow.find({a.id, product});
      const double delivered = got == inflow.end() ? 0.0 : got->second.delivered;
      unmet += std::max(amount - delivered, 0.0);
    }
    out.customer_unmet[a.id] = unmet;
  }
  return out;
}

std::vector<SimulationOutcome> simulate_many(const Network& network, const FlowPlan& plan,
                                             const Disruption* disruption, std::size_t rounds,
                                             std::uint64_t master_seed) {
  if (rounds == 0) throw Error(ErrorKind::kInvalidArgument, "simulation needs at least one round");
  std::vector<SimulationOutcome> out;
  out.reserve(rounds);
  for (std::size_t i = 0; i < rounds; ++i) {
    out.push_back(simulate_round(network, plan, disruption,
                                 derive_seed(master_seed, streams::kSimulation, {i}), i));
  }
  return out;
}

}  // namespace scnrisk
