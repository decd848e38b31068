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

#include "scnrisk/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "scnrisk/errors.hpp"

namespace scnrisk {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kParse, where + ": " + what);
}

const json& require_object(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  return j;
}

const json& require_array(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

void allow_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) schema_error(where, "unknown key '" + key + "'");
  }
}

const json& member(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing key '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

double number_or(const json& j, const std::string& where, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, where + "." + key);
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

Gaussian gaussian(const json& j, const std::string& where) {
  require_object(j, where);
  allow_keys(j, where, {"mean", "stddev"});
  return Gaussian{number(member(j, where, "mean"), where + ".mean"),
                  number_or(j, where, "stddev", 0.0)};
}

std::map<ProductId, double> product_numbers(const json& j, const std::string& where) {
  require_object(j, where);
  std::map<ProductId, double> out;
  for (const auto& [key, value] : j.items()) out[ProductId(key)] = number(value, where + "." + key);
  return out;
}

std::map<ProductId, Gaussian> product_gaussians(const json& j, const std::string& where) {
  require_object(j, where);
  std::map<ProductId, Gaussian> out;
  for (const auto& [key, value] : j.items()) out[ProductId(key)] = gaussian(value, where + "." + key);
  return out;
}

RiskAttitude attitude(const json& j, const std::string& where) {
  auto parsed = parse_risk_attitude(text(j, where));
  if (!parsed) schema_error(where, "expected 'neutral' or 'averse'");
  return *parsed;
}

RiskWeights weights(const json& j, const std::string& where, const RiskWeights& base) {
  require_object(j, where);
  allow_keys(j, where, {"reward_quantity", "reward_time", "overcapacity_risk", "lateness", "unmet"});
  RiskWeights w = base;
  w.reward_quantity = number_or(j, where, "reward_quantity", w.reward_quantity);
  w.reward_time = number_or(j, where, "reward_time", w.reward_time);
  w.overcapacity_risk = number_or(j, where, "overcapacity_risk", w.overcapacity_risk);
  w.lateness = number_or(j, where, "lateness", w.lateness);
  w.unmet = number_or(j, where, "unmet", w.unmet);
  return w;
}

Agent parse_agent(const json& j, const std::string& where, const RiskWeights& defaults) {
  require_object(j, where);
  allow_keys(j, where, {"id", "kind", "produces", "bom", "planned_start", "deadlines", "demand",
                        "stochastic", "risk_attitude", "weights", "rewards"});
  Agent a;
  a.id = AgentId(text(member(j, where, "id"), where + ".id"));
  const std::string at = "agent '" + a.id.str() + "'";
  auto kind = parse_agent_kind(text(member(j, at, "kind"), at + ".kind"));
  if (!kind) schema_error(at + ".kind", "unknown agent kind");
  a.kind = *kind;

  if (auto it = j.find("produces"); it != j.end()) {
    for (const auto& p : require_array(*it, at + ".produces")) {
      const std::string pw = at + ".produces[]";
      require_object(p, pw);
      allow_keys(p, pw, {"product", "capacity", "unit_income", "unit_cost"});
      a.produces.push_back(ProductionLine{ProductId(text(member(p, pw, "product"), pw + ".product")),
                                          number(member(p, pw, "capacity"), pw + ".capacity"),
                                          number_or(p, pw, "unit_income", 0.0),
                                          number_or(p, pw, "unit_cost", 0.0)});
    }
  }
  if (auto it = j.find("bom"); it != j.end()) {
    for (const auto& [output, inputs] : require_object(*it, at + ".bom").items()) {
      const std::string bw = at + ".bom." + output;
      auto& list = a.bom[ProductId(output)];
      for (const auto& in : require_array(inputs, bw)) {
        if (in.is_string()) {
          list.push_back(BomInput{ProductId(in.get<std::string>()), 1.0});
          continue;
        }
        require_object(in, bw);
        allow_keys(in, bw, {"input", "ratio"});
        list.push_back(BomInput{ProductId(text(member(in, bw, "input"), bw + ".input")),
                                number_or(in, bw, "ratio", 1.0)});
      }
    }
  }
  if (auto it = j.find("planned_start"); it != j.end()) a.planned_start = product_numbers(*it, at + ".planned_start");
  if (auto it = j.find("deadlines"); it != j.end()) a.deadlines = product_numbers(*it, at + ".deadlines");
  if (auto it = j.find("demand"); it != j.end()) a.demand = product_numbers(*it, at + ".demand");

  if (auto it = j.find("stochastic"); it != j.end()) {
    const std::string sw = at + ".stochastic";
    require_object(*it, sw);
    allow_keys(*it, sw, {"production", "start_time", "lead_time"});
    if (auto p = it->find("production"); p != it->end()) a.stochastic.production = product_gaussians(*p, sw + ".production");
    if (auto p = it->find("start_time"); p != it->end()) a.stochastic.start_time = product_gaussians(*p, sw + ".start_time");
    if (auto p = it->find("lead_time"); p != it->end()) {
      for (const auto& l : require_array(*p, sw + ".lead_time")) {
        const std::string lw = sw + ".lead_time[]";
        require_object(l, lw);
        allow_keys(l, lw, {"to", "product", "mean", "stddev", "over_capacity_multiplier"});
        OutKey key{AgentId(text(member(l, lw, "to"), lw + ".to")),
                   ProductId(text(member(l, lw, "product"), lw + ".product"))};
        if (a.stochastic.lead_time.contains(key)) {
          schema_error(lw, "duplicate lead time to '" + key.receiver.str() + "'");
        }
        a.stochastic.lead_time[key] = Gaussian{number(member(l, lw, "mean"), lw + ".mean"),
                                               number_or(l, lw, "stddev", 0.0)};
        if (auto b = l.find("over_capacity_multiplier"); b != l.end()) {
          a.stochastic.over_capacity_multiplier[key] = number(*b, lw + ".over_capacity_multiplier");
        }
      }
    }
  }
  if (auto it = j.find("risk_attitude"); it != j.end()) {
    if (it->is_string()) {
      a.attitude.as_supplier = a.attitude.as_demand = attitude(*it, at + ".risk_attitude");
    } else {
      const std::string rw = at + ".risk_attitude";
      require_object(*it, rw);
      allow_keys(*it, rw, {"as_supplier", "as_demand"});
      if (auto s = it->find("as_supplier"); s != it->end()) a.attitude.as_supplier = attitude(*s, rw + ".as_supplier");
      if (auto d = it->find("as_demand"); d != it->end()) a.attitude.as_demand = attitude(*d, rw + ".as_demand");
    }
  }
  a.weights = defaults;
  if (auto it = j.find("weights"); it != j.end()) a.weights = weights(*it, at + ".weights", defaults);
  if (auto it = j.find("rewards"); it != j.end()) {
    const std::string rw = at + ".rewards";
    require_object(*it, rw);
    allow_keys(*it, rw, {"quantity", "time"});
    a.rewards.quantity = number_or(*it, rw, "quantity", 0.0);
    a.rewards.time = number_or(*it, rw, "time", 0.0);
  }
  return a;
}

Scenario parse_document(const json& root) {
  const std::string where = "scenario";
  require_object(root, where);
  allow_keys(root, where, {"agents", "edges", "trust", "initial_plan", "disruption", "saa",
                           "weights_defaults"});

  WeightDefaults defaults;
  if (auto it = root.find("weights_defaults"); it != root.end()) {
    defaults.weights = weights(*it, "weights_defaults", RiskWeights{});
  }

  std::vector<Agent> agents;
  for (const auto& a : require_array(member(root, where, "agents"), "agents")) {
    agents.push_back(parse_agent(a, "agents[]", defaults.weights));
  }

  std::vector<Edge> edges;
  for (const auto& e : require_array(member(root, where, "edges"), "edges")) {
    const std::string ew = "edges[]";
    require_object(e, ew);
    allow_keys(e, ew, {"from", "to", "product"});
    edges.push_back(Edge{AgentId(text(member(e, ew, "from"), ew + ".from")),
                         AgentId(text(member(e, ew, "to"), ew + ".to")),
                         ProductId(text(member(e, ew, "product"), ew + ".product"))});
  }

  std::map<std::pair<AgentId, AgentId>, double> trust;
  if (auto it = root.find("trust"); it != root.end()) {
    for (const auto& t : require_array(*it, "trust")) {
      const std::string tw = "trust[]";
      require_object(t, tw);
      allow_keys(t, tw, {"demand", "supplier", "sigma"});
      std::pair key{AgentId(text(member(t, tw, "demand"), tw + ".demand")),
                    AgentId(text(member(t, tw, "supplier"), tw + ".supplier"))};
      if (trust.contains(key)) schema_error(tw, "duplicate trust entry");
      trust[key] = number(member(t, tw, "sigma"), tw + ".sigma");
    }
  }

  FlowPlan plan;
  for (const auto& f : require_array(member(root, where, "initial_plan"), "initial_plan")) {
    const std::string fw = "initial_plan[]";
    require_object(f, fw);
    allow_keys(f, fw, {"supplier", "receiver", "product", "quantity", "arrival", "over_quantity",
                       "over_arrival"});
    FlowKey key{AgentId(text(member(f, fw, "supplier"), fw + ".supplier")),
                AgentId(text(member(f, fw, "receiver"), fw + ".receiver")),
                ProductId(text(member(f, fw, "product"), fw + ".product"))};
    if (plan.contains(key)) schema_error(fw, "duplicate flow entry");
    plan[key] = FlowEntry{number(member(f, fw, "quantity"), fw + ".quantity"),
                          number(member(f, fw, "arrival"), fw + ".arrival"),
                          number_or(f, fw, "over_quantity", 0.0),
                          number_or(f, fw, "over_arrival", 0.0)};
  }

  const json& d = require_object(member(root, where, "disruption"), "disruption");
  allow_keys(d, "disruption", {"agent", "lead_time_scale", "detection_time"});
  Disruption disruption{AgentId(text(member(d, "disruption", "agent"), "disruption.agent")),
                        number(member(d, "disruption", "lead_time_scale"), "disruption.lead_time_scale"),
                        number_or(d, "disruption", "detection_time", 0.0)};

  SaaConfig saa;
  if (auto it = root.find("saa"); it != root.end()) {
    require_object(*it, "saa");
    allow_keys(*it, "saa", {"sample_count", "seed"});
    if (auto s = it->find("sample_count"); s != it->end()) {
      if (!s->is_number_integer()) schema_error("saa.sample_count", "expected an integer");
      if (s->get<long long>() < 1) {
        throw Error(ErrorKind::kValidation, "saa.sample_count must be at least 1");
      }
      saa.sample_count = s->get<std::size_t>();
    }
    if (auto s = it->find("seed"); s != it->end()) {
      if (!s->is_number_unsigned()) schema_error("saa.seed", "expected a non-negative integer");
      saa.seed = s->get<std::uint64_t>();
    }
  }

  Network network(std::move(agents), std::move(edges), std::move(trust));
  validate_plan(network, plan);
  if (network.find(disruption.agent) == nullptr) {
    throw Error(ErrorKind::kValidation, "disruption references unknown agent '" + disruption.agent.str() + "'");
  }
  if (!std::isfinite(disruption.lead_time_scale) || disruption.lead_time_scale < 0.0) {
    throw Error(ErrorKind::kValidation, "disruption.lead_time_scale must be >= 0");
  }
  if (!std::isfinite(disruption.detection_time) || disruption.detection_time < 0.0) {
    throw Error(ErrorKind::kValidation, "disruption.detection_time must be >= 0");
  }
  return Scenario{std::move(network), std::move(plan), std::move(disruption), saa, defaults};
}

json weights_json(const RiskWeights& w) {
  return json{{"reward_quantity", w.reward_quantity}, {"reward_time", w.reward_time},
              {"overcapacity_risk", w.overcapacity_risk}, {"lateness", w.lateness},
              {"unmet", w.unmet}};
}

json gaussian_json(const Gaussian& g) { return json{{"mean", g.mean}, {"stddev", g.stddev}}; }

json agent_json(const Agent& a) {
  json j{{"id", a.id.str()}, {"kind", to_string(a.kind)}};
  json produces = json::array();
  for (const auto& l : a.produces) {
    produces.push_back(json{{"product", l.product.str()}, {"capacity", l.capacity},
                            {"unit_income", l.unit_income}, {"unit_cost", l.unit_cost}});
  }
  j["produces"] = produces;
  json bom = json::object();
  for (const auto& [output, inputs] : a.bom) {
    json list = json::array();
    for (const auto& in : inputs) list.push_back(json{{"input", in.input.str()}, {"ratio", in.ratio}});
    bom[output.str()] = list;
  }
  j["bom"] = bom;
  auto numbers = [](const std::map<ProductId, double>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[k.str()] = v;
    return out;
  };
  j["planned_start"] = numbers(a.planned_start);
  j["deadlines"] = numbers(a.deadlines);
  j["demand"] = numbers(a.demand);
  json stochastic{{"production", json::object()}, {"start_time", json::object()},
                  {"lead_time", json::array()}};
  for (const auto& [k, g] : a.stochastic.production) stochastic["production"][k.str()] = gaussian_json(g);
  for (const auto& [k, g] : a.stochastic.start_time) stochastic["start_time"][k.str()] = gaussian_json(g);
  for (const auto& [key, g] : a.stochastic.lead_time) {
    json l{{"to", key.receiver.str()}, {"product", key.product.str()}, {"mean", g.mean},
           {"stddev", g.stddev}};
    if (auto b = a.stochastic.over_capacity_multiplier.find(key);
        b != a.stochastic.over_capacity_multiplier.end()) {
      l["over_capacity_multiplier"] = b->second;
    }
    stochastic["lead_time"].push_back(l);
  }
  j["stochastic"] = stochastic;
  if (a.attitude.as_supplier == a.attitude.as_demand) {
    j["risk_attitude"] = to_string(a.attitude.as_demand);
  } else {
    j["risk_attitude"] = json{{"as_supplier", to_string(a.attitude.as_supplier)},
                              {"as_demand", to_string(a.attitude.as_demand)}};
  }
  j["weights"] = weights_json(a.weights);
  j["rewards"] = json{{"quantity", a.rewards.quantity}, {"time", a.rewards.time}};
  return j;
}

json plan_json(const FlowPlan& plan) {
  json out = json::array();
  for (const auto& [key, e] : plan) {
    out.push_back(json{{"supplier", key.supplier.str()}, {"receiver", key.receiver.str()},
                       {"product", key.product.str()}, {"quantity", e.quantity},
                       {"arrival", e.arrival}, {"over_quantity", e.over_quantity},
                       {"over_arrival", e.over_arrival}});
  }
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("malformed scenario JSON: ") + e.what());
  }
  return parse_document(root);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  json root;
  json agents = json::array();
  for (const Agent& a : s.network.agents()) agents.push_back(agent_json(a));
  root["agents"] = agents;
  json edges = json::array();
  for (const Edge& e : s.network.edges()) {
    edges.push_back(json{{"from", e.from.str()}, {"to", e.to.str()}, {"product", e.product.str()}});
  }
  root["edges"] = edges;
  json trust = json::array();
  for (const auto& [pair, sigma] : s.network.trust_table()) {
    trust.push_back(json{{"demand", pair.first.str()}, {"supplier", pair.second.str()}, {"sigma", sigma}});
  }
  root["trust"] = trust;
  root["initial_plan"] = plan_json(s.initial_plan);
  root["disruption"] = json{{"agent", s.disruption.agent.str()},
                            {"lead_time_scale", s.disruption.lead_time_scale},
                            {"detection_time", s.disruption.detection_time}};
  root["saa"] = json{{"sample_count", s.saa.sample_count}, {"seed", s.saa.seed}};
  root["weights_defaults"] = weights_json(s.weight_defaults.weights);
  return root.dump(2) + "\n";
}

std::string serialize_plan(const FlowPlan& plan) { return plan_json(plan).dump(2) + "\n"; }

}  // namespace scnrisk
