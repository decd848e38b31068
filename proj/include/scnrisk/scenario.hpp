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

#include <filesystem>
#include <string>
#include <string_view>

#include "scnrisk/model.hpp"

namespace scnrisk {

// Fallbacks applied to agents whose `weights` object omits a field.
struct WeightDefaults {
  RiskWeights weights;
  friend bool operator==(const WeightDefaults&, const WeightDefaults&) = default;
};

struct Scenario {
  Network network;
  FlowPlan initial_plan;
  Disruption disruption;
  SaaConfig saa;
  WeightDefaults weight_defaults;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::string_view json_text);

// Canonical form: sorted keys, every defaulted field written out, two-space
// indentation, trailing newline.
std::string serialize_scenario(const Scenario& scenario);
std::string serialize_plan(const FlowPlan& plan);

}  // namespace scnrisk
