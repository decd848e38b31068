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

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "scnrisk/errors.hpp"
#include "scnrisk/milp.hpp"

using namespace scnrisk::milp;
using scnrisk::lp::kInfinity;

TEST_CASE("pure LP without binaries") {
  Problem p;
  p.direction = Direction::kMaximize;
  p.lower = {0.0};
  p.upper = {kInfinity};
  p.objective = {1.0};
  p.rows.push_back(Row{{{0, 1.0}}, {}, RowSense::kLessEqual, 3.0, {}, "cap"});
  const auto s = solve_exact(p);
  REQUIRE(s);
  CHECK(s->objective == doctest::Approx(3.0));
  CHECK(s->values[0] == doctest::Approx(3.0));
}

TEST_CASE("binary switches a continuous variable on") {
  // max 3x - 2b  s.t.  x <= 5b, x <= 4
  Problem p;
  p.direction = Direction::kMaximize;
  p.binary_count = 1;
  p.lower = {0.0};
  p.upper = {4.0};
  p.objective = {3.0};
  p.binary_objective = {-2.0};
  p.rows.push_back(Row{{{0, 1.0}}, {{0, -5.0}}, RowSense::kLessEqual, 0.0, {}, ""});
  const auto s = solve_exact(p);
  REQUIRE(s);
  CHECK(s->binaries[0] == 1);
  CHECK(s->objective == doctest::Approx(10.0));
}

TEST_CASE("guarded rows only apply when the guard is set") {
  // max 2b + x  s.t.  [b] x = 1, x <= 3
  Problem p;
  p.direction = Direction::kMaximize;
  p.binary_count = 1;
  p.lower = {0.0};
  p.upper = {3.0};
  p.objective = {1.0};
  p.binary_objective = {2.0};
  p.rows.push_back(Row{{{0, 1.0}}, {}, RowSense::kEqual, 1.0, 0, "fix"});
  const auto s = solve_exact(p);
  REQUIRE(s);
  // b = 0 gives 3, b = 1 gives 2 + 1.
  CHECK(s->objective == doctest::Approx(3.0));
  CHECK(s->binaries[0] == 0);
}

TEST_CASE("binary products pay only when every factor is set") {
  Problem p;
  p.direction = Direction::kMaximize;
  p.binary_count = 2;
  p.binary_objective = {-1.0, -1.0};
  p.binary_products.push_back(BinaryProduct{{0, 1}, 5.0});
  const auto s = solve_exact(p);
  REQUIRE(s);
  CHECK(s->objective == doctest::Approx(3.0));
  CHECK(s->binaries == std::vector<std::uint8_t>{1, 1});
  CHECK(binary_objective_value(p, {1, 0}) == doctest::Approx(-1.0));
}

TEST_CASE("ties go to the lexicographically smallest binary vector") {
  Problem p;
  p.binary_count = 3;
  p.binary_objective = {1.0, 1.0, 1.0};
  // exactly one binary set
  p.rows.push_back(Row{{}, {{0, 1.0}, {1, 1.0}, {2, 1.0}}, RowSense::kEqual, 1.0, {}, ""});
  const auto s = solve_exact(p);
  REQUIRE(s);
  CHECK(s->binaries == std::vector<std::uint8_t>{0, 0, 1});
}

TEST_CASE("infeasible problems return nothing") {
  Problem p;
  p.binary_count = 1;
  p.lower = {0.0};
  p.upper = {1.0};
  p.objective = {0.0};
  p.rows.push_back(Row{{{0, 1.0}}, {{0, 1.0}}, RowSense::kGreaterEqual, 3.0, {}, ""});
  CHECK_FALSE(solve_exact(p).has_value());
}

TEST_CASE("binary cap and unbounded leaves raise errors") {
  Problem big;
  big.binary_count = 30;
  try {
    solve_exact(big);
    FAIL("expected a cap error");
  } catch (const scnrisk::Error& e) {
    CHECK(e.kind() == scnrisk::ErrorKind::kSolverCap);
  }

  Problem unbounded;
  unbounded.direction = Direction::kMaximize;
  unbounded.lower = {0.0};
  unbounded.upper = {kInfinity};
  unbounded.objective = {1.0};
  try {
    solve_exact(unbounded);
    FAIL("expected a solver error");
  } catch (const scnrisk::Error& e) {
    CHECK(e.kind() == scnrisk::ErrorKind::kSolver);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  Problem p;
  p.lower = {0.0};
  p.upper = {1.0};
  p.objective = {};
  CHECK_THROWS_AS(solve_exact(p), scnrisk::Error);
}

TEST_CASE("random mixed problems agree with naive enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    Problem p;
    p.direction = rng() % 2 ? Direction::kMaximize : Direction::kMinimize;
    p.binary_count = rng() % 9;
    const std::size_t n = 1 + rng() % 4;
    for (std::size_t j = 0; j < n; ++j) {
      p.lower.push_back(0.0);
      p.upper.push_back(1.0 + std::round(4.0 * (u(rng) + 1.0)));
      p.objective.push_back(std::round(5.0 * u(rng)));
    }
    for (std::size_t i = 0; i < p.binary_count; ++i) p.binary_objective.push_back(std::round(5.0 * u(rng)));
    if (p.binary_count >= 2) {
      p.binary_products.push_back(BinaryProduct{{0, p.binary_count - 1}, std::round(6.0 * u(rng))});
    }
    const std::size_t m = 1 + rng() % 5;
    for (std::size_t r = 0; r < m; ++r) {
      Row row;
      for (std::size_t j = 0; j < n; ++j) {
        if (rng() % 2) row.continuous.push_back({j, std::round(3.0 * u(rng))});
      }
      for (std::size_t i = 0; i < p.binary_count; ++i) {
        if (rng() % 3 == 0) row.binary.push_back({i, std::round(6.0 * u(rng))});
      }
      const auto s = rng() % 6;
      row.sense = s == 0 ? RowSense::kEqual : s == 1 ? RowSense::kGreaterEqual : RowSense::kLessEqual;
      row.rhs = std::round(4.0 * u(rng));
      if (p.binary_count > 0 && rng() % 4 == 0) row.guard = rng() % p.binary_count;
      p.rows.push_back(row);
    }
    CAPTURE(trial);
    const auto fast = solve_exact(p);
    const auto slow = oracle::naive_milp(p);
    REQUIRE(fast.has_value() == slow.has_value());
    if (!fast) continue;
    CHECK(fast->objective == doctest::Approx(slow->objective).epsilon(1e-9));
    CHECK(fast->binaries == slow->binaries);
  }
}

TEST_CASE("text dump names variables and rows") {
  Problem p;
  p.binary_count = 1;
  p.lower = {0.0};
  p.upper = {2.0};
  p.objective = {1.0};
  p.binary_objective = {0.5};
  p.continuous_names = {"flow"};
  p.binary_names = {"open"};
  p.rows.push_back(Row{{{0, 1.0}}, {{0, -2.0}}, RowSense::kLessEqual, 0.0, {}, "link"});
  const std::string text = to_text(p);
  CHECK(text.find("flow") != std::string::npos);
  CHECK(text.find("open") != std::string::npos);
  CHECK(text.find("link") != std::string::npos);
}
