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
#include <optional>
#include <string>
#include <vector>

#include "scnrisk/lp.hpp"

namespace scnrisk::milp {

using lp::RowSense;

enum class Direction { kMinimize, kMaximize };

struct Term {
  std::size_t index = 0;
  double coefficient = 0.0;
};

// sum(continuous) + sum(binary) <sense> rhs. A guarded row is enforced only
// when its guard binary is 1 and dropped otherwise.
struct Row {
  std::vector<Term> continuous;
  std::vector<Term> binary;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  std::optional<std::size_t> guard;
  std::string name;
};

// coefficient * product of the listed binaries.
struct BinaryProduct {
  std::vector<std::size_t> factors;
  double coefficient = 0.0;
};

struct Problem {
  Direction direction = Direction::kMinimize;
  std::size_t binary_count = 0;
  std::vector<double> lower;  // continuous bounds; lower must be finite
  std::vector<double> upper;
  std::vector<double> objective;         // continuous coefficients
  std::vector<double> binary_objective;  // size binary_count (may be empty)
  std::vector<BinaryProduct> binary_products;
  double objective_constant = 0.0;
  std::vector<Row> rows;
  std::vector<std::string> continuous_names;
  std::vector<std::string> binary_names;

  std::size_t continuous_count() const noexcept { return lower.size(); }
};

struct Solution {
  double objective = 0.0;
  std::vector<std::uint8_t> binaries;
  std::vector<double> values;
};

struct Options {
  std::size_t max_binaries = 24;
  double feasibility_tolerance = 1e-9;
};

// Exact optimum by depth-first enumeration of the binaries (0 before 1) with
// bound propagation pruning; each leaf solves its continuous LP. Among
// optima the lexicographically smallest binary vector wins. Returns nullopt
// when no assignment is feasible. Throws Error(kSolverCap) above the binary
// cap and Error(kSolver) on an unbounded leaf.
std::optional<Solution> solve_exact(const Problem& problem, const Options& options = {});

// Objective of the binary-only part (linear terms, products, constant).
double binary_objective_value(const Problem& problem, const std::vector<std::uint8_t>& binaries);

// Plain-text dump of the model for debugging.
std::string to_text(const Problem& problem);

}  // namespace scnrisk::milp
