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

#include <string>

#include "scnrisk/scenario.hpp"

namespace fixtures {

// S -> A -> C chain: S ships "part" with lead `first`, A builds "widget"
// from it and ships with lead `second`; the customer wants it by `deadline`.
inline scnrisk::Scenario chain(double first, double second, double deadline) {
  const std::string f = std::to_string(first);
  const std::string s = std::to_string(second);
  const std::string d = std::to_string(deadline);
  return scnrisk::parse_scenario(R"({
    "agents": [
      {"id": "C", "kind": "customer", "deadlines": {"widget": )" + d + R"(}, "demand": {"widget": 4}},
      {"id": "A", "kind": "oem", "produces": [{"product": "widget", "capacity": 10, "unit_cost": 3}],
       "bom": {"widget": ["part"]}, "planned_start": {"widget": )" + f + R"(},
       "stochastic": {"lead_time": [{"to": "C", "product": "widget", "mean": )" + s + R"(}]}},
      {"id": "S", "kind": "tier_supplier", "produces": [{"product": "part", "capacity": 10, "unit_cost": 1}],
       "stochastic": {"lead_time": [{"to": "A", "product": "part", "mean": )" + f + R"(}]}}
    ],
    "edges": [{"from": "S", "to": "A", "product": "part"}, {"from": "A", "to": "C", "product": "widget"}],
    "initial_plan": [
      {"supplier": "S", "receiver": "A", "product": "part", "quantity": 4, "arrival": )" + f + R"(},
      {"supplier": "A", "receiver": "C", "product": "widget", "quantity": 4, "arrival": )" +
                                 std::to_string(first + second) + R"(}
    ],
    "disruption": {"agent": "S", "lead_time_scale": 0.0}
  })");
}

// One assembler A fed by the incumbent "OLD" (lead 8) with an idle
// alternative "NEW" (lead 6, ample capacity). A starts building at 10.
inline const char* kTwoSuppliers = R"({
  "agents": [
    {"id": "C", "kind": "customer", "deadlines": {"widget": 20}, "demand": {"widget": 10}},
    {"id": "A", "kind": "oem", "produces": [{"product": "widget", "capacity": 10, "unit_cost": 5}],
     "bom": {"widget": ["part"]}, "planned_start": {"widget": 10},
     "stochastic": {"lead_time": [{"to": "C", "product": "widget", "mean": 5}]},
     "rewards": {"quantity": 10, "time": 10}},
    {"id": "OLD", "kind": "tier_supplier",
     "produces": [{"product": "part", "capacity": 20, "unit_income": 2, "unit_cost": 2}],
     "stochastic": {"lead_time": [{"to": "A", "product": "part", "mean": 8, "stddev": 0.5}]}},
    {"id": "NEW", "kind": "tier_supplier",
     "produces": [{"product": "part", "capacity": 50, "unit_income": 3, "unit_cost": 3}],
     "stochastic": {"lead_time": [{"to": "A", "product": "part", "mean": 6, "stddev": 0.2}]}}
  ],
  "edges": [
    {"from": "OLD", "to": "A", "product": "part"},
    {"from": "NEW", "to": "A", "product": "part"},
    {"from": "A", "to": "C", "product": "widget"}
  ],
  "initial_plan": [
    {"supplier": "OLD", "receiver": "A", "product": "part", "quantity": 10, "arrival": 8},
    {"supplier": "A", "receiver": "C", "product": "widget", "quantity": 10, "arrival": 15}
  ],
  "disruption": {"agent": "OLD", "lead_time_scale": 0.6},
  "saa": {"sample_count": 8, "seed": 3}
})";

inline scnrisk::Scenario two_suppliers() { return scnrisk::parse_scenario(kTwoSuppliers); }

// Copy of `scenario` with every standard deviation set to zero.
scnrisk::Scenario degenerate(const scnrisk::Scenario& scenario);

scnrisk::Scenario bundled();

}  // namespace fixtures
