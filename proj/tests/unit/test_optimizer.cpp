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

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "scnrisk/errors.hpp"
#include "scnrisk/optimizer.hpp"

using namespace scnrisk;

namespace {

ResponseModel one_pair(double amount, double deadline, double capacity, double income,
                       double reward) {
  ResponseModel m;
  m.supplier = AgentId("Z");
  m.products.push_back({ProductId("k"), capacity, 0.0});
  ResponsePair p;
  p.demand = AgentId("J");
  p.product = ProductId("k");
  p.amount = amount;
  p.deadline = deadline;
  p.unit_income = income;
  p.over_capacity_multiplier = 1.5;
  p.reward_quantity = reward;
  p.reward_time = reward;
  m.pairs.push_back(p);
  return m;
}

void check_feasible(const ResponseModel& m, const ResponseSample& s, const SampleDecision& d) {
  std::vector<double> nominal(m.products.size(), 0.0);
  std::vector<double> total(m.products.size(), 0.0);
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const ResponseLine& l = d.lines[i];
    CHECK(l.nominal_quantity >= 0.0);
    CHECK(l.over_quantity >= 0.0);
    CHECK(l.nominal_quantity + l.over_quantity <= m.pairs[i].amount + 1e-9);
    CHECK(l.over_arrival >= l.nominal_arrival);
    nominal[m.pairs[i].product_index] += l.nominal_quantity;
    total[m.pairs[i].product_index] += l.nominal_quantity + l.over_quantity;
  }
  for (std::size_t k = 0; k < m.products.size(); ++k) {
    CHECK(nominal[k] <= m.products[k].capacity + 1e-9);
    CHECK(total[k] <= std::max(0.0, s.production[k] - m.products[k].committed) + 1e-9);
  }
}

}  // namespace

TEST_CASE("ample capacity and an early arrival fill the request") {
  const ResponseModel m = one_pair(5, 10, 10, 1, 3);
  const ResponseSample s{{10}, {1}, {4}};
  const SampleDecision d = solve_response_sample(m, s);
  CHECK(d.lines[0].nominal_quantity == doctest::Approx(5));
  CHECK(d.lines[0].over_quantity == doctest::Approx(0));
  CHECK(d.lines[0].nominal_arrival == doctest::Approx(5));
  // income 5 plus both rewards
  CHECK(d.objective == doctest::Approx(5 + 3 + 3));
  check_feasible(m, s, d);
}

TEST_CASE("sampled production below demand caps the offer") {
  ResponseModel m = one_pair(5, 10, 10, 1, 3);
  m.overcapacity_weight = 100;
  const ResponseSample s{{3}, {1}, {4}};
  const SampleDecision d = solve_response_sample(m, s);
  CHECK(d.lines[0].nominal_quantity == doctest::Approx(3));
  CHECK(d.lines[0].over_quantity == doctest::Approx(0));
  check_feasible(m, s, d);
}

TEST_CASE("a large quantity reward buys over-capacity") {
  ResponseModel m = one_pair(5, 20, 3, 1, 50);
  m.overcapacity_weight = 2;
  const ResponseSample s{{10}, {0}, {4}};
  const SampleDecision d = solve_response_sample(m, s);
  CHECK(d.lines[0].nominal_quantity == doctest::Approx(3));
  CHECK(d.lines[0].over_quantity == doctest::Approx(2));
  CHECK(d.lines[0].over_arrival == doctest::Approx(1.5 * d.lines[0].nominal_arrival));
  check_feasible(m, s, d);
}

TEST_CASE("over-capacity that would miss the deadline forfeits the time reward") {
  ResponseModel m = one_pair(5, 5, 3, 1, 0);
  m.pairs[0].reward_time = 40;
  m.overcapacity_weight = 0.5;
  // arrival 4 meets the deadline only without the 1.5x over-capacity delay
  const ResponseSample s{{10}, {0}, {4}};
  const milp::Problem p = response_problem(m, s);
  const SampleDecision d = solve_response_sample(m, s);
  const auto sol = milp::solve_exact(p);
  REQUIRE(sol);
  CHECK(sol->binaries[3] == 1);  // on time
  CHECK(sol->binaries[0] == 0);  // so no over-capacity
  CHECK(d.lines[0].over_quantity == doctest::Approx(0));
}

TEST_CASE("competing demand agents: the higher reward is served first") {
  ResponseModel m;
  m.supplier = AgentId("Z");
  m.products.push_back({ProductId("k"), 5, 0});
  for (const auto& [name, reward] : {std::pair{"A", 30.0}, std::pair{"B", 10.0}}) {
    ResponsePair p;
    p.demand = AgentId(name);
    p.product = ProductId("k");
    p.product_index = 0;
    p.amount = 4;
    p.deadline = 10;
    p.unit_income = 1;
    p.reward_quantity = reward;
    m.pairs.push_back(p);
  }
  m.overcapacity_weight = 5;
  const ResponseSample s{{5}, {0}, {3, 3}};
  const SampleDecision d = solve_response_sample(m, s);
  CHECK(d.lines[0].nominal_quantity == doctest::Approx(4));
  CHECK(d.lines[1].nominal_quantity == doctest::Approx(1));
  check_feasible(m, s, d);
}

TEST_CASE("big-M covers every demand and arrival") {
  const ResponseModel m = one_pair(7, 9, 10, 1, 1);
  const ResponseSample s{{10}, {2}, {6}};
  const double big_m = response_big_m(m, s);
  CHECK(big_m >= 7);
  CHECK(big_m >= 9 + 1.5 * 8);
}

TEST_CASE("response samples must match the model") {
  const ResponseModel m = one_pair(5, 10, 10, 1, 3);
  CHECK_THROWS_AS(response_problem(m, ResponseSample{{10}, {0}, {}}), Error);
}

TEST_CASE("aggregation: neutral averages, averse takes the worst sample") {
  std::vector<SampleDecision> samples;
  for (double q : {2.0, 6.0, 4.0}) {
    SampleDecision d;
    d.lines.push_back(ResponseLine{AgentId("J"), ProductId("k"), q, 0, q, q});
    d.objective = q;
    samples.push_back(d);
  }
  const SupplierResponse neutral = aggregate_saa(AgentId("Z"), samples, RiskAttitude::kNeutral);
  CHECK(neutral.lines[0].nominal_quantity == doctest::Approx(4));
  const SupplierResponse averse = aggregate_saa(AgentId("Z"), samples, RiskAttitude::kAverse);
  CHECK(averse.lines[0].nominal_quantity == doctest::Approx(2));

  std::vector<SampleDecision> shuffled = {samples[2], samples[0], samples[1]};
  CHECK(aggregate_saa(AgentId("Z"), shuffled, RiskAttitude::kNeutral).lines[0].nominal_quantity ==
        doctest::Approx(4));
  CHECK(aggregate_saa(AgentId("Z"), shuffled, RiskAttitude::kAverse) == averse);

  samples[2].objective = 2.0;  // tie with sample 0: first index wins
  samples[2].lines[0].nominal_quantity = 9;
  CHECK(aggregate_saa(AgentId("Z"), samples, RiskAttitude::kAverse).lines[0].nominal_quantity ==
        doctest::Approx(2));
  CHECK_THROWS_AS(aggregate_saa(AgentId("Z"), std::vector<SampleDecision>{}, RiskAttitude::kNeutral), Error);
}

TEST_CASE("identical samples make both attitudes agree") {
  const ResponseModel m = one_pair(5, 10, 4, 1, 3);
  const std::vector<ResponseSample> samples(4, ResponseSample{{10}, {1}, {4}});
  CHECK(solve_supplier_response(m, samples, RiskAttitude::kNeutral) ==
        solve_supplier_response(m, samples, RiskAttitude::kAverse));
}

TEST_CASE("random response instances match naive enumeration and stay feasible") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const ResponseModel m = oracle::random_response_model(rng);
    const ResponseSample s = oracle::random_response_sample(m, rng);
    CAPTURE(trial);
    const milp::Problem p = response_problem(m, s);
    const auto fast = milp::solve_exact(p);
    const auto slow = oracle::naive_milp(p);
    REQUIRE(fast);
    REQUIRE(slow);
    CHECK(fast->objective == doctest::Approx(slow->objective).epsilon(1e-9));
    check_feasible(m, s, solve_response_sample(m, s));
  }
}

TEST_CASE("response model from a network subtracts other commitments") {
  const Scenario sc = fixtures::two_suppliers();
  std::vector<DemandRequest> requests{{AgentId("A"), ProductId("part"), 10, 10, AgentId("OLD")}};
  const ResponseModel old = build_response_model(sc.network, AgentId("OLD"), requests, sc.initial_plan);
  REQUIRE(old.pairs.size() == 1);
  // the flow being replaced does not count against OLD's capacity
  CHECK(old.products[0].capacity == doctest::Approx(20));
  CHECK(old.products[0].committed == doctest::Approx(0));
  CHECK(old.pairs[0].reward_quantity == doctest::Approx(10));

  std::vector<DemandRequest> fresh{{AgentId("A"), ProductId("part"), 5, 10, std::nullopt}};
  const ResponseModel kept = build_response_model(sc.network, AgentId("OLD"), fresh, sc.initial_plan);
  CHECK(kept.products[0].capacity == doctest::Approx(10));
  CHECK(kept.products[0].committed == doctest::Approx(10));

  const ResponseModel none = build_response_model(sc.network, AgentId("C"), requests, sc.initial_plan);
  CHECK(none.pairs.empty());
}

// ---------------------------------------------------------------------------

namespace {

SelectionModel two_offers(RiskAttitude attitude) {
  SelectionModel m;
  m.demand = AgentId("J");
  m.attitude = attitude;
  m.lateness_weight = 100;
  m.unmet_weight = 1000;
  m.products.push_back({ProductId("k"), 10, 5});
  SelectionCandidate slow{AgentId("SLOW"), 0, ResponseLine{AgentId("J"), ProductId("k"), 10, 0, 6, 9}, 1, 0};
  SelectionCandidate fast{AgentId("FAST"), 0, ResponseLine{AgentId("J"), ProductId("k"), 10, 0, 4, 6}, 2, 0};
  m.candidates = {fast, slow};
  return m;
}

}  // namespace

TEST_CASE("selection with nothing on offer leaves all demand unmet") {
  SelectionModel m = two_offers(RiskAttitude::kNeutral);
  m.candidates.clear();
  const std::vector<SelectionSample> samples(2);
  const SelectionDecision d = solve_selection(m, samples);
  CHECK(d.lines.empty());
  CHECK(d.objective == doctest::Approx(1000 * 10));
}

TEST_CASE("an on-time alternative takes the whole request") {
  const SelectionModel m = two_offers(RiskAttitude::kNeutral);
  RandomStream rng(1);
  const auto samples = draw_selection_samples(m, 3, rng);
  const SelectionDecision d = solve_selection(m, samples);
  CHECK(d.lines[0].supplier == AgentId("FAST"));
  CHECK(d.lines[0].quantity == doctest::Approx(10));
  CHECK(d.lines[1].quantity == doctest::Approx(0));
  CHECK(d.objective == doctest::Approx(20));
}

TEST_CASE("selection never exceeds the offer or the request") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const SelectionModel m = oracle::random_selection_model(rng);
    const auto samples = oracle::random_selection_samples(m, rng);
    const SelectionDecision d = solve_selection(m, samples);
    std::vector<double> used(m.products.size(), 0.0);
    for (std::size_t c = 0; c < m.candidates.size(); ++c) {
      const ResponseLine& offer = m.candidates[c].offer;
      CHECK(d.lines[c].quantity >= 0.0);
      CHECK(d.lines[c].quantity <= offer.nominal_quantity + offer.over_quantity + 1e-9);
      used[m.candidates[c].product_index] += d.lines[c].quantity;
    }
    for (std::size_t k = 0; k < used.size(); ++k) CHECK(used[k] <= m.products[k].amount + 1e-9);
  }
}

TEST_CASE("selection matches the quantity-grid oracle within one grid step") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    const SelectionModel m = oracle::random_selection_model(rng);
    const auto samples = oracle::random_selection_samples(m, rng);
    const SelectionDecision d = solve_selection(m, samples);
    std::vector<double> y;
    for (const SelectionLine& l : d.lines) y.push_back(l.quantity);
    const double semantic = oracle::selection_value(m, samples, y);
    const double grid = oracle::selection_grid_best(m, samples);
    double step = 0.0;
    for (const auto& p : m.products) step = std::max(step, p.amount / 10.0);
    CAPTURE(trial);
    CHECK(d.objective == doctest::Approx(semantic).epsilon(1e-9));
    CHECK(d.objective <= grid + 1e-6);
    CHECK(grid <= d.objective + static_cast<double>(m.candidates.size()) * step * m.unmet_weight + 1e-6);
  }
}

TEST_CASE("selection MILP matches naive enumeration") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const SelectionModel m = oracle::random_selection_model(rng);
    const auto samples = oracle::random_selection_samples(m, rng);
    const milp::Problem p = selection_problem(m, samples);
    const auto fast = milp::solve_exact(p);
    const auto slow = oracle::naive_milp(p);
    REQUIRE(fast);
    REQUIRE(slow);
    CHECK(fast->objective == doctest::Approx(slow->objective).epsilon(1e-9));
  }
}

TEST_CASE("scaling all selection weights and costs keeps the choice") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const SelectionModel m = oracle::random_selection_model(rng);
    const auto samples = oracle::random_selection_samples(m, rng);
    SelectionModel scaled = m;
    scaled.lateness_weight *= 7.0;
    scaled.unmet_weight *= 7.0;
    for (auto& c : scaled.candidates) c.unit_cost *= 7.0;
    const SelectionDecision a = solve_selection(m, samples);
    const SelectionDecision b = solve_selection(scaled, samples);
    CHECK(b.objective == doctest::Approx(7.0 * a.objective).epsilon(1e-9));
    for (std::size_t c = 0; c < a.lines.size(); ++c) {
      CHECK(a.lines[c].nominal_selected == b.lines[c].nominal_selected);
      CHECK(a.lines[c].over_selected == b.lines[c].over_selected);
    }
  }
}

TEST_CASE("averse selection guards against the worst sample") {
  // SLOW is cheap and usually on time, but one trust sample is badly late.
  SelectionModel m = two_offers(RiskAttitude::kNeutral);
  m.products[0].deadline = 6.5;
  m.candidates[0].unit_cost = 10;
  m.candidates[1].unit_cost = 0;
  std::vector<SelectionSample> samples;
  for (double late : {6.0, 6.0, 6.0, 9.0}) {
    samples.push_back({m.candidates[0].offer, m.candidates[1].offer});
    samples.back()[1].nominal_arrival = late;
  }
  const SelectionDecision neutral = solve_selection(m, samples);
  m.attitude = RiskAttitude::kAverse;
  const SelectionDecision averse = solve_selection(m, samples);
  // mean lateness penalty 62.5 is below FAST's extra cost of 100, the
  // worst-case penalty 250 is not
  CHECK(neutral.lines[1].quantity == doctest::Approx(10));
  CHECK(averse.lines[0].quantity == doctest::Approx(10));
}
