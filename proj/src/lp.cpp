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

#include "scnrisk/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "scnrisk/errors.hpp"

namespace scnrisk::lp {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr std::size_t kDegenerateRunBeforeBland = 50;

enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper };

// Standard form after shifting lower bounds to zero:
//   A x = b, 0 <= x <= ub, with b >= 0.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_(rows * cols, 0.0), b_(rows, 0.0), ub_(cols, kInfinity),
        state_(cols, VarState::kAtLower), basis_(rows, 0), d_(cols, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::size_t m_;
  std::size_t n_;
  std::vector<double> a_;
  std::vector<double> b_;  // values of the basic variables
  std::vector<double> ub_;
  std::vector<VarState> state_;
  std::vector<std::size_t> basis_;
  std::vector<double> d_;  // reduced costs
  std::vector<bool> frozen_;

  void pivot(std::size_t r, std::size_t j) {
    const double p = at(r, j);
    double* row_r = &a_[r * n_];
    for (std::size_t k = 0; k < n_; ++k) row_r[k] /= p;
    row_r[j] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row_i = &a_[i * n_];
      const double f = row_i[j];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n_; ++k) row_i[k] -= f * row_r[k];
      row_i[j] = 0.0;
    }
    const double f = d_[j];
    if (f != 0.0) {
      for (std::size_t k = 0; k < n_; ++k) d_[k] -= f * row_r[k];
      d_[j] = 0.0;
    }
  }

  void price(const std::vector<double>& cost) {
    d_ = cost;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t k = 0; k < n_; ++k) d_[k] -= cb * at(i, k);
    }
  }

  double value(std::size_t j) const {
    switch (state_[j]) {
      case VarState::kAtLower: return 0.0;
      case VarState::kAtUpper: return ub_[j];
      case VarState::kBasic: break;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] == j) return b_[i];
    }
    return 0.0;
  }

  // Returns false when the objective is unbounded below.
  bool minimize(const std::vector<double>& cost) {
    price(cost);
    double scale = 1.0;
    for (double c : cost) scale = std::max(scale, std::abs(c));
    const double dtol = 1e-9 * scale;
    bool bland = false;
    std::size_t degenerate_run = 0;
    const std::size_t max_iterations = 200 * (m_ + n_) + 1000;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
      std::size_t enter = n_;
      double best_rate = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (state_[j] == VarState::kBasic || frozen_[j] || ub_[j] <= 0.0) continue;
        double rate = 0.0;
        if (state_[j] == VarState::kAtLower && d_[j] < -dtol) rate = -d_[j];
        if (state_[j] == VarState::kAtUpper && d_[j] > dtol) rate = d_[j];
        if (rate <= 0.0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (rate > best_rate) {
          best_rate = rate;
          enter = j;
        }
      }
      if (enter == n_) return true;

      const double dir = state_[enter] == VarState::kAtLower ? 1.0 : -1.0;
      double theta = ub_[enter];
      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = at(i, enter) * dir;
        double limit;
        if (alpha > kPivotTolerance) {
          limit = std::max(0.0, b_[i]) / alpha;
        } else if (alpha < -kPivotTolerance && std::isfinite(ub_[basis_[i]])) {
          limit = std::max(0.0, ub_[basis_[i]] - b_[i]) / -alpha;
        } else {
          continue;
        }
        if (limit < theta || (leave != m_ && limit == theta && basis_[i] < basis_[leave])) {
          theta = limit;
          leave = i;
        }
      }
      if (!std::isfinite(theta)) return false;

      for (std::size_t i = 0; i < m_; ++i) b_[i] -= at(i, enter) * dir * theta;
      if (leave == m_) {
        state_[enter] = state_[enter] == VarState::kAtLower ? VarState::kAtUpper : VarState::kAtLower;
      } else {
        const std::size_t out = basis_[leave];
        const double alpha = at(leave, enter) * dir;
        state_[out] = alpha > 0.0 ? VarState::kAtLower : VarState::kAtUpper;
        const double entering_value =
            state_[enter] == VarState::kAtLower ? theta : ub_[enter] - theta;
        pivot(leave, enter);
        b_[leave] = entering_value;
        basis_[leave] = enter;
        state_[enter] = VarState::kBasic;
      }
      if (theta < kDegenerateStep) {
        if (++degenerate_run > kDegenerateRunBeforeBland) bland = true;
      } else {
        degenerate_run = 0;
      }
    }
    throw Error(ErrorKind::kSolver, "simplex iteration limit reached");
  }
};

}  // namespace

Result solve(const Problem& problem) {
  const std::size_t n = problem.objective.size();
  if (problem.lower.size() != n || problem.upper.size() != n) {
    throw Error(ErrorKind::kInvalidArgument, "lp: bound vectors do not match the objective");
  }
  std::vector<double> ub(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(problem.lower[j])) {
      throw Error(ErrorKind::kInvalidArgument, "lp: lower bounds must be finite");
    }
    ub[j] = problem.upper[j] - problem.lower[j];
    if (ub[j] < -1e-9) return Result{Status::kInfeasible, 0.0, {}};
    ub[j] = std::max(0.0, ub[j]);
  }

  const std::size_t m = problem.rows.size();
  std::size_t slacks = 0;
  for (const Row& r : problem.rows) {
    if (r.coefficients.size() != n) {
      throw Error(ErrorKind::kInvalidArgument, "lp: row width does not match the objective");
    }
    if (r.sense != RowSense::kEqual) ++slacks;
  }
  const std::size_t first_slack = n;
  const std::size_t first_artificial = n + slacks;
  Tableau t(m, n + slacks + m);
  t.frozen_.assign(t.n_, false);
  for (std::size_t j = 0; j < n; ++j) t.ub_[j] = ub[j];

  std::size_t slack = first_slack;
  std::vector<double> phase_one(t.n_, 0.0);
  bool need_phase_one = false;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = problem.rows[i];
    double rhs = r.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(i, j) = r.coefficients[j];
      rhs -= r.coefficients[j] * problem.lower[j];
    }
    std::size_t slack_col = t.n_;
    if (r.sense != RowSense::kEqual) {
      slack_col = slack++;
      t.at(i, slack_col) = r.sense == RowSense::kLessEqual ? 1.0 : -1.0;
    }
    if (rhs < 0.0) {
      for (std::size_t k = 0; k < first_artificial; ++k) t.at(i, k) = -t.at(i, k);
      rhs = -rhs;
    }
    t.b_[i] = rhs;
    const std::size_t art = first_artificial + i;
    t.at(i, art) = 1.0;
    if (slack_col != t.n_ && t.at(i, slack_col) > 0.0) {
      t.basis_[i] = slack_col;
      t.state_[slack_col] = VarState::kBasic;
      t.ub_[art] = 0.0;
      t.frozen_[art] = true;
    } else {
      t.basis_[i] = art;
      t.state_[art] = VarState::kBasic;
      phase_one[art] = 1.0;
      need_phase_one = true;
    }
  }
  // Slack columns are identity where they are basic; fix the tableau so the
  // basic columns form an identity (artificial columns of slack-based rows).
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis_[i] != first_artificial + i) t.at(i, first_artificial + i) = 0.0;
  }

  if (need_phase_one) {
    if (!t.minimize(phase_one)) throw Error(ErrorKind::kSolver, "lp: phase one unbounded");
    double infeasibility = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis_[i] >= first_artificial) infeasibility += std::max(0.0, t.b_[i]);
      scale = std::max(scale, std::abs(problem.rows[i].rhs));
    }
    if (infeasibility > 1e-8 * scale) return Result{Status::kInfeasible, 0.0, {}};
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis_[i] < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (t.state_[j] == VarState::kBasic || std::abs(t.at(i, j)) <= kPivotTolerance) continue;
        const double v = t.state_[j] == VarState::kAtUpper ? t.ub_[j] : 0.0;
        const std::size_t out = t.basis_[i];
        t.pivot(i, j);
        t.b_[i] = v;
        t.basis_[i] = j;
        t.state_[j] = VarState::kBasic;
        t.state_[out] = VarState::kAtLower;
        break;
      }
    }
    for (std::size_t k = first_artificial; k < t.n_; ++k) {
      t.frozen_[k] = true;
      t.ub_[k] = 0.0;
    }
  }

  std::vector<double> cost(t.n_, 0.0);
  std::copy(problem.objective.begin(), problem.objective.end(), cost.begin());
  if (!t.minimize(cost)) return Result{Status::kUnbounded, 0.0, {}};

  Result result;
  result.status = Status::kOptimal;
  result.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = std::clamp(t.value(j), 0.0, ub[j]);
    result.x[j] = problem.lower[j] + v;
    result.objective += problem.objective[j] * result.x[j];
  }
  return result;
}

}  // namespace scnrisk::lp
