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

#include "fixtures.hpp"

namespace fixtures {

scnrisk::Scenario degenerate(const scnrisk::Scenario& scenario) {
  std::vector<scnrisk::Agent> agents(scenario.network.agents().begin(), scenario.network.agents().end());
  for (scnrisk::Agent& a : agents) {
    for (auto& [k, g] : a.stochastic.production) g.stddev = 0.0;
    for (auto& [k, g] : a.stochastic.start_time) g.stddev = 0.0;
    for (auto& [k, g] : a.stochastic.lead_time) g.stddev = 0.0;
  }
  std::vector<scnrisk::Edge> edges(scenario.network.edges().begin(), scenario.network.edges().end());
  scnrisk::Scenario out = scenario;
  out.network = scnrisk::Network(std::move(agents), std::move(edges), scenario.network.trust_table());
  return out;
}

scnrisk::Scenario bundled() { return scnrisk::load_scenario(SCNRISK_DATA_DIR "/cockpit_analog.json"); }

}  // namespace fixtures
