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

#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "scnrisk/messages.hpp"
#include "scnrisk/model.hpp"

namespace scnrisk {

// Derives an independent stream seed from the master seed and a purpose
// label, so each stage owns its own stream.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::initializer_list<std::uint64_t> indices = {});
std::uint64_t hash_label(std::string_view text) noexcept;

namespace streams {
inline constexpr std::string_view kResponseSaa = "response-saa";
inline constexpr std::string_view kSelectionTrust = "selection-trust";
inline constexpr std::string_view kSimulation = "simulation";
}  // namespace streams

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double standard_normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// max(0, mean + stddev * z). Always consumes exactly one normal draw so the
// stream stays aligned whatever the parameters are.
double sample_gaussian_trunc(double mean, double stddev, RandomStream& rng);
inline double sample_gaussian_trunc(const Gaussian& g, RandomStream& rng) {
  return sample_gaussian_trunc(g.mean, g.stddev, rng);
}

using AgentProduct = std::pair<AgentId, ProductId>;

// One sampled realization of every uncertain parameter in the network.
struct SaaRealization {
  std::map<AgentProduct, double> production;
  std::map<AgentProduct, double> start_time;
  std::map<Edge, double> lead_time;
  friend bool operator==(const SaaRealization&, const SaaRealization&) = default;
};

// Production defaults to the nominal capacity and start time to 0 when an
// agent carries no distribution for them. The disrupted agent's lead-time
// means are multiplied by (1 + scale) before sampling.
std::vector<SaaRealization> make_realizations(const Network& network, const SaaConfig& config,
                                              const Disruption& disruption);

Gaussian production_distribution(const Agent& agent, const ProductId& product);
Gaussian start_time_distribution(const Agent& agent, const ProductId& product);
Gaussian lead_time_distribution(const Network& network, const Edge& edge,
                                const Disruption* disruption);

// Demand-side belief about a response: every quantity and arrival q becomes
// max(0, N(q, sigma * q)). sigma = 0 returns the response unchanged.
SupplierResponse perturb_response(const SupplierResponse& response, double sigma,
                                  RandomStream& rng);

}  // namespace scnrisk
