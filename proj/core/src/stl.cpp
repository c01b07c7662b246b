// Copyright 2026 The stldecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "stldecomp/stl.hpp"

#include <cmath>
#include <limits>

#include "stldecomp/errors.hpp"

namespace stldecomp {

using detail::throw_input;

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
}

std::string to_string(TemporalOp op) { return op == TemporalOp::kAlways ? "always" : "eventually"; }

AtomicTask AtomicTask::oriented(const Edge& edge) const {
  if (!subject.is_pair()) throw_input("cannot orient a single-agent task");
  if (edge == subject.edge()) return *this;
  if (edge != subject.edge().reversed())
    throw_input("task on " + to_string(subject.edge()) + " cannot be read on " + to_string(edge));
  AtomicTask out = *this;
  out.subject = Subject::pair(edge.from, edge.to);
  out.predicate = predicate.negated();
  return out;
}

void validate(const AtomicTask& task) {
  const auto& iv = task.interval;
  if (!std::isfinite(iv.start) || !std::isfinite(iv.end)) throw_input("interval must be finite");
  if (iv.start < 0.0) throw_input("interval start must be non-negative");
  if (iv.end < iv.start) throw_input("interval end before start");
  if (task.subject.agent() < 1) throw_input("agent indices start at 1");
  if (task.subject.is_pair() && task.subject.edge().from == task.subject.edge().to)
    throw_input("pair subject needs two distinct agents");
  if (task.subject.is_pair() && task.subject.edge().to < 1) throw_input("agent indices start at 1");
}

TaskFormula::TaskFormula(std::vector<AtomicTask> conjuncts) {
  if (conjuncts.empty()) throw_input("task formula needs at least one conjunct");
  validate(conjuncts.front());
  conjuncts_.push_back(conjuncts.front());
  for (std::size_t k = 1; k < conjuncts.size(); ++k) add(conjuncts[k]);
}

void TaskFormula::add(const AtomicTask& task) {
  validate(task);
  const auto& s = subject();
  if (s.is_pair() != task.subject.is_pair()) throw_input("mixed single and pair subjects in one formula");
  if (!s.is_pair()) {
    if (task.subject.agent() != s.agent()) throw_input("formula conjuncts must share one agent");
    conjuncts_.push_back(task);
    return;
  }
  conjuncts_.push_back(task.oriented(s.edge()));
}

void GlobalSpec::add(const AtomicTask& task) {
  validate(task);
  auto check = [&](AgentId a) {
    if (a < 1 || a > num_agents)
      throw_input("agent " + std::to_string(a) + " outside 1.." + std::to_string(num_agents));
  };
  check(task.subject.agent());
  if (task.predicate.dimension() != dimension) throw_input("predicate dimension does not match spec");
  if (!task.subject.is_pair()) {
    auto it = independent.find(task.subject.agent());
    if (it == independent.end()) independent.emplace(task.subject.agent(), TaskFormula({task}));
    else it->second.add(task);
    return;
  }
  check(task.subject.edge().to);
  const Edge key = task.subject.edge().canonical();
  auto it = collaborative.find(key);
  if (it == collaborative.end()) collaborative.emplace(key, TaskFormula({task}));
  else it->second.add(task);
}

std::size_t GlobalSpec::task_count() const {
  std::size_t n = 0;
  for (const auto& [_, f] : independent) n += f.size();
  for (const auto& [_, f] : collaborative) n += f.size();
  return n;
}

double GlobalSpec::horizon() const {
  double h = 0.0;
  for (const auto& [_, f] : independent)
    for (const auto& c : f.conjuncts()) h = std::max(h, c.interval.end);
  for (const auto& [_, f] : collaborative)
    for (const auto& c : f.conjuncts()) h = std::max(h, c.interval.end);
  return h;
}

Trajectory::Trajectory(std::vector<double> times, std::vector<Eigen::MatrixXd> states)
    : times_(std::move(times)), states_(std::move(states)) {
  if (times_.empty()) throw_input("trajectory needs at least one sample");
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k])) throw_input("trajectory times must be finite");
    if (k > 0 && !(times_[k] > times_[k - 1]))
      throw_input("trajectory times must be strictly increasing");
  }
  for (const auto& s : states_) {
    if (s.rows() != static_cast<Eigen::Index>(times_.size()))
      throw_input("every agent needs one state per sample");
    if (s.cols() != states_.front().cols()) throw_input("agents differ in state dimension");
  }
}

Eigen::Index Trajectory::dimension() const { return states_.empty() ? 0 : states_.front().cols(); }

const Eigen::MatrixXd& Trajectory::states(AgentId agent) const {
  if (agent < 1 || agent > num_agents())
    throw_input("unknown agent " + std::to_string(agent) + " in trajectory");
  return states_[static_cast<std::size_t>(agent - 1)];
}

Vec Trajectory::state(AgentId agent, std::size_t k) const {
  return states(agent).row(static_cast<Eigen::Index>(k)).transpose();
}

Eigen::MatrixXd relative_signal(const Trajectory& traj, AgentId i, AgentId j) {
  return traj.states(j) - traj.states(i);
}

std::vector<std::size_t> window_samples(const Trajectory& traj, double lo, double hi) {
  const auto& t = traj.times();
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double snap = 1e-9 * scale;
  if (hi > t.back() + snap)
    throw_input("trajectory ends at " + std::to_string(t.back()) + " before the window end " +
                std::to_string(hi));
  if (lo < t.front() - snap)
    throw_input("trajectory starts at " + std::to_string(t.front()) + " after the window start " +
                std::to_string(lo));
  std::vector<std::size_t> idx;
  const auto first = std::lower_bound(t.begin(), t.end(), lo - snap);
  for (auto it = first; it != t.end() && *it <= hi + snap; ++it)
    idx.push_back(static_cast<std::size_t>(it - t.begin()));
  if (idx.empty())
    throw_input("no trajectory sample inside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return idx;
}

double robustness(const AtomicTask& task, const Trajectory& traj, double t0) {
  const auto idx = window_samples(traj, t0 + task.interval.start, t0 + task.interval.end);
  const bool always = task.op == TemporalOp::kAlways;
  double r = always ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
  for (std::size_t k : idx) {
    Vec z = task.subject.is_pair()
                ? Vec(traj.state(task.subject.edge().to, k) - traj.state(task.subject.edge().from, k))
                : traj.state(task.subject.agent(), k);
    const double h = eval_predicate(task.predicate, z);
    r = always ? std::min(r, h) : std::max(r, h);
  }
  return r;
}

double robustness(const TaskFormula& formula, const Trajectory& traj, double t0) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& c : formula.conjuncts()) r = std::min(r, robustness(c, traj, t0));
  return r;
}

double robustness(const GlobalSpec& spec, const Trajectory& traj, double t0) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& [_, f] : spec.independent) r = std::min(r, robustness(f, traj, t0));
  for (const auto& [_, f] : spec.collaborative) r = std::min(r, robustness(f, traj, t0));
  return r;
}

}  // namespace stldecomp
