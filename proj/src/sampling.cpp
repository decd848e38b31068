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

#include "scnrisk/sampling.hpp"

#include <algorithm>

namespace scnrisk {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t hash_label(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::initializer_list<std::uint64_t> indices) {
  std::uint64_t s = splitmix64(master ^ splitmix64(hash_label(label)));
  for (std::uint64_t i : indices) s = splitmix64(s ^ splitmix64(i + 0x632be59bd9b4e019ULL));
  return s;
}

double sample_gaussian_trunc(double mean, double stddev, RandomStream& rng) {
  const double z = rng.standard_normal();
  if (stddev <= 0.0) return std::max(0.0, mean);
  return std::max(0.0, mean + stddev * z);
}

Gaussian production_distribution(const Agent& agent, const ProductId& product) {
  if (auto it = agent.stochastic.production.find(product); it != agent.stochastic.production.end()) {
    return it->second;
  }
  const ProductionLine* line = agent.line(product);
  return Gaussian{line != nullptr ? line->capacity : 0.0, 0.0};
}

Gaussian start_time_distribution(const Agent& agent, const ProductId& product) {
  if (auto it = agent.stochastic.start_time.find(product); it != agent.stochastic.start_time.end()) {
    return it->second;
  }
  return Gaussian{};
}

Gaussian lead_time_distribution(const Network& network, const Edge& edge,
                                const Disruption* disruption) {
  Gaussian g = network.agent(edge.from).stochastic.lead_time.at(OutKey{edge.to, edge.product});
  if (disruption != nullptr && disruption->agent == edge.from) {
    g.mean *= 1.0 + disruption->lead_time_scale;
  }
  return g;
}

std::vector<SaaRealization> make_realizations(const Network& network, const SaaConfig& config,
                                              const Disruption& disruption) {
  RandomStream rng(derive_seed(config.seed, streams::kResponseSaa));
  std::vector<SaaRealization> out(config.sample_count);
  for (auto& xi : out) {
    for (const Agent& a : network.agents()) {
      for (const ProductionLine& line : a.produces) {
        xi.production[{a.id, line.product}] =
            sample_gaussian_trunc(production_distribution(a, line.product), rng);
        xi.start_time[{a.id, line.product}] =
            sample_gaussian_trunc(start_time_distribution(a, line.product), rng);
      }
    }
    for (const Edge& e : network.edges()) {
      xi.lead_time[e] = sample_gaussian_trunc(lead_time_distribution(network, e, &disruption), rng);
    }
  }
  return out;
}

SupplierResponse perturb_response(const SupplierResponse& response, double sigma,
                                  RandomStream& rng) {
  SupplierResponse out = response;
  for (ResponseLine& line : out.lines) {
    for (double* q : {&line.nominal_quantity, &line.over_quantity, &line.nominal_arrival,
                      &line.over_arrival}) {
      *q = sample_gaussian_trunc(*q, sigma * *q, rng);
    }
  }
  return out;
}

}  // namespace scnrisk
