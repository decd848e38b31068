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

#include "scnrisk/milp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scnrisk/errors.hpp"

namespace scnrisk::milp {
namespace {

constexpr std::int8_t kFree = -1;

// Activity range of a sum where some terms may be unbounded.
struct Range {
  double min_finite = 0.0;
  double max_finite = 0.0;
  int min_infinite = 0;
  int max_infinite = 0;

  double min() const { return min_infinite > 0 ? -lp::kInfinity : min_finite; }
  double max() const { return max_infinite > 0 ? lp::kInfinity : max_finite; }
};

class Enumerator {
 public:
  Enumerator(const Problem& problem, const Options& options)
      : p_(problem), opt_(options), assign_(problem.binary_count, kFree) {}

  std::optional<Solution> run() {
    std::vector<double> lo = p_.lower;
    std::vector<double> hi = p_.upper;
    descend(0, lo, hi);
    return best_;
  }

 private:
  const Problem& p_;
  const Options& opt_;
  std::vector<std::int8_t> assign_;
  std::optional<Solution> best_;

  bool better(double candidate) const {
    if (!best_) return true;
    const double tol = 1e-9 * std::max(1.0, std::abs(best_->objective));
    return p_.direction == Direction::kMaximize ? candidate > best_->objective + tol
                                                : candidate < best_->objective - tol;
  }

  bool row_enforced(const Row& row) const {
    return !row.guard || assign_[*row.guard] == 1;
  }

  // Tightens continuous bounds from every enforced row; false when some row
  // can no longer be satisfied under the partial assignment.
  bool propagate(std::vector<double>& lo, std::vector<double>& hi) const {
    const double ftol = opt_.feasibility_tolerance;
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (const Row& row : p_.rows) {
        if (!row_enforced(row)) continue;
        Range r;
        for (const Term& t : row.binary) {
          const std::int8_t v = assign_[t.index];
          if (v != kFree) {
            r.min_finite += t.coefficient * v;
            r.max_finite += t.coefficient * v;
          } else {
            r.min_finite += std::min(0.0, t.coefficient);
            r.max_finite += std::max(0.0, t.coefficient);
          }
        }
        for (const Term& t : row.continuous) {
          const double a = t.coefficient;
          const double l = lo[t.index];
          const double h = hi[t.index];
          if (a > 0) {
            r.min_finite += a * l;
            if (std::isfinite(h)) r.max_finite += a * h; else ++r.max_infinite;
          } else if (a < 0) {
            r.max_finite += a * l;
            if (std::isfinite(h)) r.min_finite += a * h; else ++r.min_infinite;
          }
        }
        const double tol = ftol * (1.0 + std::abs(row.rhs));
        const bool upper_side = row.sense != RowSense::kGreaterEqual;
        const bool lower_side = row.sense != RowSense::kLessEqual;
        if (upper_side && r.min() > row.rhs + tol) return false;
        if (lower_side && r.max() < row.rhs - tol) return false;

        for (const Term& t : row.continuous) {
          const double a = t.coefficient;
          if (a == 0.0) continue;
          double& l = lo[t.index];
          double& h = hi[t.index];
          if (upper_side) {
            // rest_min = min activity without this term
            const bool own_inf = a < 0 && !std::isfinite(h);
            const int inf = r.min_infinite - (own_inf ? 1 : 0);
            if (inf == 0) {
              const double own = a > 0 ? a * l : (own_inf ? 0.0 : a * h);
              const double rest = r.min_finite - own;
              const double bound = (row.rhs - rest) / a;
              if (a > 0 && bound < h - tol) { h = bound; changed = true; }
              if (a < 0 && bound > l + tol) { l = bound; changed = true; }
            }
          }
          if (lower_side) {
            const bool own_inf = a > 0 && !std::isfinite(h);
            const int inf = r.max_infinite - (own_inf ? 1 : 0);
            if (inf == 0) {
              const double own = a > 0 ? (own_inf ? 0.0 : a * h) : a * l;
              const double rest = r.max_finite - own;
              const double bound = (row.rhs - rest) / a;
              if (a > 0 && bound > l + tol) { l = bound; changed = true; }
              if (a < 0 && bound < h - tol) { h = bound; changed = true; }
            }
          }
          if (l > h) {
            if (l - h > tol) return false;
            l = h;
          }
        }
      }
      if (!changed) break;
    }
    return true;
  }

  void descend(std::size_t depth, std::vector<double> lo, std::vector<double> hi) {
    if (!propagate(lo, hi)) return;
    if (depth == p_.binary_count) {
      leaf(lo, hi);
      return;
    }
    for (std::int8_t v : {std::int8_t{0}, std::int8_t{1}}) {
      assign_[depth] = v;
      descend(depth + 1, lo, hi);
    }
    assign_[depth] = kFree;
  }

  void leaf(const std::vector<double>& lo, const std::vector<double>& hi) {
    std::vector<std::uint8_t> bits(assign_.begin(), assign_.end());
    const double binary_part = binary_objective_value(p_, bits);
    const std::size_t n = p_.continuous_count();
    const double sign = p_.direction == Direction::kMaximize ? -1.0 : 1.0;

    lp::Problem sub;
    sub.lower = lo;
    sub.upper = hi;
    sub.objective.resize(n);
    for (std::size_t j = 0; j < n; ++j) sub.objective[j] = sign * p_.objective[j];
    for (const Row& row : p_.rows) {
      if (!row_enforced(row) || row.continuous.empty()) continue;
      lp::Row r;
      r.coefficients.assign(n, 0.0);
      for (const Term& t : row.continuous) r.coefficients[t.index] += t.coefficient;
      r.sense = row.sense;
      r.rhs = row.rhs;
      for (const Term& t : row.binary) r.rhs -= t.coefficient * bits[t.index];
      sub.rows.push_back(std::move(r));
    }
    double continuous_part = 0.0;
    std::vector<double> values = lo;
    if (n > 0) {
      lp::Result res = lp::solve(sub);
      if (res.status == lp::Status::kInfeasible) return;
      if (res.status == lp::Status::kUnbounded) {
        throw Error(ErrorKind::kSolver, "milp: unbounded continuous subproblem (model error)");
      }
      continuous_part = sign * res.objective;
      values = std::move(res.x);
    }
    const double total = continuous_part + binary_part;
    if (better(total)) best_ = Solution{total, std::move(bits), std::move(values)};
  }
};

const char* sense_text(RowSense s) {
  switch (s) {
    case RowSense::kLessEqual: return "<=";
    case RowSense::kEqual: return "=";
    case RowSense::kGreaterEqual: return ">=";
  }
  return "?";
}

}  // namespace

double binary_objective_value(const Problem& problem, const std::vector<std::uint8_t>& binaries) {
  double v = problem.objective_constant;
  for (std::size_t i = 0; i < problem.binary_objective.size(); ++i) {
    v += problem.binary_objective[i] * binaries[i];
  }
  for (const BinaryProduct& prod : problem.binary_products) {
    bool all = true;
    for (std::size_t f : prod.factors) all = all && binaries[f] != 0;
    if (all) v += prod.coefficient;
  }
  return v;
}

std::optional<Solution> solve_exact(const Problem& problem, const Options& options) {
  if (problem.binary_count > options.max_binaries) {
    throw Error(ErrorKind::kSolverCap, "milp: " + std::to_string(problem.binary_count) +
                                           " binaries exceed the cap of " +
                                           std::to_string(options.max_binaries));
  }
  const std::size_t n = problem.continuous_count();
  if (problem.upper.size() != n || problem.objective.size() != n ||
      (!problem.binary_objective.empty() && problem.binary_objective.size() != problem.binary_count)) {
    throw Error(ErrorKind::kInvalidArgument, "milp: inconsistent problem dimensions");
  }
  for (const Row& row : problem.rows) {
    for (const Term& t : row.continuous) {
      if (t.index >= n) throw Error(ErrorKind::kInvalidArgument, "milp: continuous index out of range");
    }
    for (const Term& t : row.binary) {
      if (t.index >= problem.binary_count) throw Error(ErrorKind::kInvalidArgument, "milp: binary index out of range");
    }
    if (row.guard && *row.guard >= problem.binary_count) {
      throw Error(ErrorKind::kInvalidArgument, "milp: guard index out of range");
    }
  }
  for (const BinaryProduct& prod : problem.binary_products) {
    for (std::size_t f : prod.factors) {
      if (f >= problem.binary_count) throw Error(ErrorKind::kInvalidArgument, "milp: product factor out of range");
    }
  }
  Enumerator e(problem, options);
  return e.run();
}

std::string to_text(const Problem& p) {
  auto cname = [&](std::size_t i) {
    return i < p.continuous_names.size() ? p.continuous_names[i] : "x" + std::to_string(i);
  };
  auto bname = [&](std::size_t i) {
    return i < p.binary_names.size() ? p.binary_names[i] : "b" + std::to_string(i);
  };
  std::ostringstream out;
  out.precision(17);
  out << (p.direction == Direction::kMaximize ? "maximize" : "minimize") << "\n";
  out << "objective_constant " << p.objective_constant << "\n";
  out << "continuous " << p.continuous_count() << "\n";
  for (std::size_t j = 0; j < p.continuous_count(); ++j) {
    out << "  " << cname(j) << " [" << p.lower[j] << ", " << p.upper[j] << "] cost " << p.objective[j] << "\n";
  }
  out << "binaries " << p.binary_count << "\n";
  for (std::size_t i = 0; i < p.binary_count; ++i) {
    out << "  " << bname(i) << " cost " << (i < p.binary_objective.size() ? p.binary_objective[i] : 0.0) << "\n";
  }
  out << "products " << p.binary_products.size() << "\n";
  for (const auto& prod : p.binary_products) {
    out << "  " << prod.coefficient;
    for (std::size_t f : prod.factors) out << " * " << bname(f);
    out << "\n";
  }
  out << "rows " << p.rows.size() << "\n";
  for (const Row& r : p.rows) {
    out << "  " << (r.name.empty() ? "row" : r.name) << ":";
    for (const Term& t : r.continuous) out << " " << (t.coefficient >= 0 ? "+" : "") << t.coefficient << " " << cname(t.index);
    for (const Term& t : r.binary) out << " " << (t.coefficient >= 0 ? "+" : "") << t.coefficient << " " << bname(t.index);
    out << " " << sense_text(r.sense) << " " << r.rhs;
    if (r.guard) out << "  if " << bname(*r.guard) << " = 1";
    out << "\n";
  }
  return out.str();
}

}  // namespace scnrisk::milp
