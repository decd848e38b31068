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

#include "fixtures.hpp"
#include "scnrisk/errors.hpp"
#include "scnrisk/experiment.hpp"

using namespace scnrisk;

TEST_CASE("notifications move arrivals in the unrepaired plan") {
  const Scenario sc = fixtures::two_suppliers();
  const Notification n{AgentId("OLD"), AgentId("A"), ProductId("part"), 8, 12.8};
  const FlowPlan plan = apply_notifications(sc.initial_plan, std::span(&n, 1));
  const FlowKey k{AgentId("OLD"), AgentId("A"), ProductId("part")};
  CHECK(plan.at(k).arrival == doctest::Approx(12.8));
  CHECK(plan.at(k).quantity == sc.initial_plan.at(k).quantity);
}

TEST_CASE("two-supplier experiment repairs the lateness") {
  const Scenario sc = fixtures::two_suppliers();
  ExperimentConfig cfg;
  cfg.scale = 0.6;
  cfg.rounds = 50;
  const ExperimentResult r = run_experiment(sc, cfg);
  CHECK(r.replanned);
  CHECK(r.seed == 3);
  CHECK(r.samples == 8);
  CHECK(r.initial.lateness == 0.0);
  CHECK(r.initial.cost == doctest::Approx(20));
  CHECK(r.baseline.lateness == doctest::Approx(2.8));
  CHECK(r.baseline.objective == doctest::Approx(20 + 2.8e5));
  CHECK(r.replan.lateness == 0.0);
  CHECK(r.replan.cost == doctest::Approx(30));
  CHECK(r.replan_simulation.mean_total_lateness < r.baseline_simulation.mean_total_lateness);
  CHECK(r.replan_simulation.rounds == 50);
  CHECK(r.lateness_csv.rfind("plan,round,delay,share\n", 0) == 0);
}

TEST_CASE("overrides reach the solver and the simulation") {
  const Scenario sc = fixtures::two_suppliers();
  ExperimentConfig cfg;
  cfg.scale = 0.6;
  cfg.rounds = 5;
  cfg.samples = 3;
  cfg.seed = 99;
  const ExperimentResult r = run_experiment(sc, cfg);
  CHECK(r.samples == 3);
  CHECK(r.seed == 99);
  CHECK(summary_json(r) == summary_json(run_experiment(sc, cfg)));
}

TEST_CASE("zero scale is a no-op experiment") {
  const Scenario sc = fixtures::bundled();
  ExperimentConfig cfg;
  cfg.rounds = 10;
  const ExperimentResult r = run_experiment(sc, cfg);
  CHECK_FALSE(r.replanned);
  CHECK(r.plan == sc.initial_plan);
  CHECK(r.initial.objective == r.replan.objective);
}

TEST_CASE("invalid configuration") {
  const Scenario sc = fixtures::two_suppliers();
  ExperimentConfig cfg;
  cfg.scale = 0.6;
  cfg.rounds = 0;
  CHECK_THROWS_AS(run_experiment(sc, cfg), Error);
  cfg.rounds = 1;
  cfg.scale = -0.5;
  CHECK_THROWS_AS(run_experiment(sc, cfg), Error);
}
