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

#include <cmath>

#include "fixtures.hpp"
#include "scnrisk/errors.hpp"
#include "scnrisk/protocol.hpp"

using namespace scnrisk;

namespace {

double inflow(const FlowPlan& plan, const AgentId& receiver, const ProductId& product) {
  double total = 0.0;
  for (const auto& [key, entry] : plan) {
    if (key.receiver == receiver && key.product == product) total += entry.quantity;
  }
  return total;
}

}  // namespace

TEST_CASE("disruption shifts every outflow of the disrupted agent") {
  Scenario sc = fixtures::two_suppliers();
  const auto notes = identify_disruption(sc.network, sc.initial_plan, Disruption{AgentId("OLD"), 0.6, 0});
  REQUIRE(notes.size() == 1);
  CHECK(notes[0].receiver == AgentId("A"));
  CHECK(notes[0].planned_arrival == doctest::Approx(8));
  CHECK(notes[0].new_arrival == doctest::Approx(8 + 0.6 * 8));

  const auto none = identify_disruption(sc.network, sc.initial_plan, Disruption{AgentId("C"), 0.6, 0});
  CHECK(none.empty());
  CHECK_THROWS_AS(identify_disruption(sc.network, sc.initial_plan, Disruption{AgentId("OLD"), -1, 0}),
                  Error);
}

TEST_CASE("requests follow the strict deadline check") {
  Scenario sc = fixtures::two_suppliers();
  Notification n{AgentId("OLD"), AgentId("A"), ProductId("part"), 8, 10};
  CHECK(build_requests(sc.network, sc.initial_plan, std::span(&n, 1)).empty());
  n.new_arrival = 10.5;
  const auto reqs = build_requests(sc.network, sc.initial_plan, std::span(&n, 1));
  REQUIRE(reqs.size() == 1);
  CHECK(reqs[0].from == AgentId("A"));
  CHECK(reqs[0].amount == doctest::Approx(10));
  CHECK(reqs[0].deadline == doctest::Approx(10));
  CHECK(reqs[0].replaces == AgentId("OLD"));
}

TEST_CASE("every late product gets its own request") {
  const Scenario sc = fixtures::bundled();
  const auto notes = identify_disruption(sc.network, sc.initial_plan, Disruption{AgentId("S3"), 0.6, 0});
  CHECK(notes.size() == 3);
  const auto reqs = build_requests(sc.network, sc.initial_plan, notes);
  REQUIRE(reqs.size() == 3);
  CHECK(reqs[0].from == AgentId("A1"));
  CHECK(reqs[2].from == AgentId("A3"));
  for (const auto& r : reqs) CHECK(r.amount == doctest::Approx(100));
}

TEST_CASE("zero scale leaves the plan untouched") {
  for (const Scenario& sc : {fixtures::two_suppliers(), fixtures::bundled()}) {
    const auto result = run_replanning(sc.network, sc.initial_plan,
                                       Disruption{sc.disruption.agent, 0.0, 0}, sc.saa);
    CHECK(result.plan == sc.initial_plan);
    CHECK(result.trace.rounds.empty());
  }
}

TEST_CASE("the late supplier is replaced by the on-time one") {
  const Scenario sc = fixtures::two_suppliers();
  const auto result = run_replanning(sc.network, sc.initial_plan, sc.disruption, sc.saa);
  const FlowKey old_key{AgentId("OLD"), AgentId("A"), ProductId("part")};
  const FlowKey new_key{AgentId("NEW"), AgentId("A"), ProductId("part")};
  CHECK(result.plan.count(old_key) == 0);
  REQUIRE(result.plan.count(new_key) == 1);
  CHECK(result.plan.at(new_key).quantity == doctest::Approx(10));
  CHECK(result.plan.at(new_key).arrival <= 10.0);
  CHECK(result.trace.rounds.size() == 1);
  CHECK(result.trace.rounds[0].unmet.empty());
}

TEST_CASE("request coverage is conserved") {
  const Scenario sc = fixtures::bundled();
  for (double scale : {0.2, 0.6, 1.0}) {
    for (auto att : {RiskAttitude::kNeutral, RiskAttitude::kAverse}) {
      Network net = sc.network;
      for (const Agent& a : sc.network.agents()) net = net.with_demand_attitude(a.id, att);
      const auto result = run_replanning(net, sc.initial_plan, Disruption{AgentId("S3"), scale, 0}, sc.saa);
      for (const RoundTrace& round : result.trace.rounds) {
        for (const DemandRequest& req : round.requests) {
          double covered = 0.0;
          for (const Inform& inf : round.informs) {
            if (inf.demand == req.from && inf.product == req.product) covered += inf.quantity;
          }
          for (const Unmet& u : round.unmet) {
            if (u.demand == req.from && u.product == req.product) covered += u.amount;
          }
          CHECK(std::abs(covered - req.amount) <= 1e-9);
        }
      }
      // Each OEM still receives the cluster quantity it needs.
      for (const char* oem : {"A1", "A2", "A3"}) {
        const ProductId product("cluster_" + std::string(1, oem[1]));
        CHECK(inflow(result.plan, AgentId(oem), product) == doctest::Approx(100).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("shortfalls propagate upstream") {
  const Scenario sc = fixtures::bundled();
  const auto result = run_replanning(sc.network, sc.initial_plan, Disruption{AgentId("S3"), 0.6, 0}, sc.saa);
  REQUIRE(result.trace.rounds.size() >= 2);
  const auto& second = result.trace.rounds[1];
  REQUIRE_FALSE(second.requests.empty());
  CHECK(second.requests[0].from == AgentId("S2"));
  CHECK(second.requests[0].product == ProductId("pcb"));
  CHECK_FALSE(second.requests[0].replaces.has_value());
  CHECK(inflow(result.plan, AgentId("S2"), ProductId("pcb")) >=
        total_outflow(result.plan, AgentId("S2"), ProductId("cluster_2")) +
            total_outflow(result.plan, AgentId("S2"), ProductId("cluster_3")) - 1e-9);
}

TEST_CASE("traces are deterministic") {
  const Scenario sc = fixtures::bundled();
  const auto a = run_replanning(sc.network, sc.initial_plan, sc.disruption, sc.saa);
  const auto b = run_replanning(sc.network, sc.initial_plan, sc.disruption, sc.saa);
  CHECK(a.trace == b.trace);
  CHECK(a.plan == b.plan);
  const std::string text = trace_to_json(a.trace);
  CHECK(text == trace_to_json(b.trace));
  CHECK(text.back() == '\n');
}
