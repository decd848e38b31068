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
#include <limits>
#include <vector>

namespace scnrisk::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Row {
  std::vector<double> coefficients;  // dense, one per variable
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

// minimize objective . x  subject to rows and lower <= x <= upper.
// Lower bounds must be finite; upper bounds may be kInfinity.
struct Problem {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;
};

struct Result {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense-tableau primal simplex with implicit variable bounds (bound flips in
// the ratio test) and a two-phase start.
Result solve(const Problem& problem);

}  // namespace scnrisk::lp
