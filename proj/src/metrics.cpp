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

#include "scnrisk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "scnrisk/errors.hpp"

namespace scnrisk {
namespace {

double bucket(double delay) { return std::round(delay * 1e6) / 1e6; }

bool watched(const MonitoredSet& monitored, const FlowKey& key) {
  return monitored.contains({key.receiver, key.product});
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string share_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

MonitoredSet monitored_from(std::span<const Notification> notifications) {
  MonitoredSet out;
  for (const Notification& n : notifications) out.insert({n.receiver, n.product});
  return out;
}

std::vector<LatenessBucket> lateness_distribution(const FlowPlan& plan,
                                                  const SimulationOutcome& outcome,
                                                  const MonitoredSet& monitored) {
  if (monitored.empty()) throw Error(ErrorKind::kInvalidArgument, "no monitored flows");
  std::map<double, double> mass;
  double total = 0.0;
  for (const FlowOutcome& f : outcome.flows) {
    if (!watched(monitored, f.key)) continue;
    const auto it = plan.find(f.key);
    if (it == plan.end()) throw Error(ErrorKind::kInvalidArgument, "outcome does not match the plan");
    const double nominal = it->second.quantity - it->second.over_quantity;
    const double over = it->second.over_quantity;
    if (nominal > 0.0) mass[bucket(f.lateness)] += nominal;
    if (over > 0.0) mass[bucket(f.over_lateness)] += over;
    total += nominal + over;
  }
  std::vector<LatenessBucket> out;
  if (total <= 0.0) return out;
  for (const auto& [delay, q] : mass) out.push_back(LatenessBucket{delay, q / total});
  return out;
}

double total_lateness(const SimulationOutcome& outcome, const MonitoredSet& monitored) {
  double sum = 0.0;
  for (const FlowOutcome& f : outcome.flows) {
    if (!watched(monitored, f.key)) continue;
    sum += (f.quantity - f.over_quantity) * f.lateness + f.over_quantity * f.over_lateness;
  }
  return sum;
}

ObjectiveSummary aggregate_objectives(std::span<const DemandAgentTally> tallies,
                                      double lateness_weight) {
  ObjectiveSummary s;
  for (const DemandAgentTally& t : tallies) {
    s.cost += t.cost;
    s.lateness += t.lateness;
  }
  s.objective = s.cost + lateness_weight * s.lateness;
  return s;
}

std::vector<DemandAgentTally> tally_plan(const Network& network, const FlowPlan& plan,
                                         const MonitoredSet& monitored) {
  std::map<AgentId, DemandAgentTally> by_agent;
  for (const auto& [receiver, product] : monitored) by_agent[receiver].agent = receiver;
  for (const auto& [key, entry] : plan) {
    if (!watched(monitored, key)) continue;
    DemandAgentTally& t = by_agent[key.receiver];
    const ProductionLine* line = network.agent(key.supplier).line(key.product);
    t.cost += (line != nullptr ? line->unit_cost : 0.0) * entry.quantity;
    const double required = network.required_time(key.receiver, key.product);
    if (entry.quantity - entry.over_quantity > 0.0) t.lateness += std::max(entry.arrival - required, 0.0);
    if (entry.over_quantity > 0.0) t.lateness += std::max(entry.over_arrival - required, 0.0);
  }
  std::vector<DemandAgentTally> out;
  for (auto& [id, t] : by_agent) out.push_back(t);
  return out;
}

CustomerService customer_service_metrics(const Network& network,
                                         const SimulationOutcome& outcome) {
  CustomerService s;
  for (const auto& [id, unmet] : outcome.customer_unmet) s.unmet += unmet;
  for (const FlowOutcome& f : outcome.flows) {
    if (network.agent(f.key.receiver).kind != AgentKind::kCustomer) continue;
    s.lateness += (f.quantity - f.over_quantity) * f.lateness + f.over_quantity * f.over_lateness;
  }
  return s;
}

SimulationSummary summarize(const Network& network, const FlowPlan& plan,
                            std::span<const SimulationOutcome> outcomes,
                            const MonitoredSet& monitored) {
  SimulationSummary s;
  s.rounds = outcomes.size();
  if (outcomes.empty()) return s;
  double monitored_quantity = 0.0;
  for (const auto& [key, entry] : plan) {
    if (watched(monitored, key)) monitored_quantity += entry.quantity;
  }
  for (const SimulationOutcome& o : outcomes) {
    const double total = total_lateness(o, monitored);
    s.mean_total_lateness += total;
    if (monitored_quantity > 0.0) s.mean_unit_lateness += total / monitored_quantity;
    if (!monitored.empty()) {
      for (const LatenessBucket& b : lateness_distribution(plan, o, monitored)) {
        if (b.delay == 0.0) s.on_time_share += b.share;
      }
    }
    const CustomerService c = customer_service_metrics(network, o);
    s.mean_customer_unmet += c.unmet;
    s.mean_customer_lateness += c.lateness;
  }
  const double n = static_cast<double>(outcomes.size());
  s.mean_total_lateness /= n;
  s.mean_unit_lateness /= n;
  s.on_time_share /= n;
  s.mean_customer_unmet /= n;
  s.mean_customer_lateness /= n;
  return s;
}

std::string lateness_csv(const std::string& plan_label, const FlowPlan& plan,
                         std::span<const SimulationOutcome> outcomes,
                         const MonitoredSet& monitored, bool with_header) {
  std::string out = with_header ? "plan,round,delay,share\n" : "";
  if (monitored.empty()) return out;
  for (const SimulationOutcome& o : outcomes) {
    for (const LatenessBucket& b : lateness_distribution(plan, o, monitored)) {
      out += plan_label + "," + std::to_string(o.round) + "," + number(b.delay) + "," +
             share_text(b.share) + "\n";
    }
  }
  return out;
}

}  // namespace scnrisk
