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

#include <optional>
#include <vector>

#include "scnrisk/model.hpp"

namespace scnrisk {

// (d_jk, t_jk) sent by demand agent `from`. `replaces` names the supplier
// whose original flow is being re-sourced; propagated requests have none.
struct DemandRequest {
  AgentId from;
  ProductId product;
  double amount = 0.0;
  double deadline = 0.0;
  std::optional<AgentId> replaces;
  friend bool operator==(const DemandRequest&, const DemandRequest&) = default;
};

struct ResponseLine {
  AgentId demand;
  ProductId product;
  double nominal_quantity = 0.0;  // within estimated capacity
  double over_quantity = 0.0;     // beyond nominal capacity
  double nominal_arrival = 0.0;
  double over_arrival = 0.0;
  friend bool operator==(const ResponseLine&, const ResponseLine&) = default;
};

struct SupplierResponse {
  AgentId supplier;
  std::vector<ResponseLine> lines;
  friend bool operator==(const SupplierResponse&, const SupplierResponse&) = default;
};

struct SelectionLine {
  AgentId supplier;
  ProductId product;
  double quantity = 0.0;
  bool nominal_selected = false;  // lambda^u
  bool over_selected = false;     // lambda^o
  friend bool operator==(const SelectionLine&, const SelectionLine&) = default;
};

struct SelectionDecision {
  AgentId demand;
  std::vector<SelectionLine> lines;
  double objective = 0.0;
  friend bool operator==(const SelectionDecision&, const SelectionDecision&) = default;
};

}  // namespace scnrisk
