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


#include "stldecomp/validation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "stldecomp/errors.hpp"
#include "stldecomp/problem.hpp"
#include "stldecomp/solver.hpp"

namespace stldecomp {

using detail::throw_input;

namespace {

struct ActiveTask {
  const AtomicTask* task;
  std::string label;
  double instant;  // Eventually tasks are placed at this instant
};

std::string task_label(const AtomicTask& t) {
  if (!t.name.empty()) return t.name;
  if (t.subject.is_pair()) return fmt::format("{} {}", to_string(t.op), to_string(t.subject.edge()));
  return fmt::format("{} agent {}", to_string(t.op), t.subject.agent());
}

std::vector<ActiveTask> collect(const GlobalSpec& spec) {
  std::vector<ActiveTask> out;
  auto add = [&](const TaskFormula& f) {
    for (const auto& c : f.conjuncts())
      out.push_back({&c, task_label(c), 0.5 * (c.interval.start + c.interval.end)});
  };
  for (const auto& [_, f] : spec.independent) add(f);
  for (const auto& [_, f] : spec.collaborative) add(f);
  return out;
}

bool active_at(const ActiveTask& a, double t) {
  if (a.task->op == TemporalOp::kAlways) return a.task->interval.contains(t);
  return a.instant == t;
}

// Unbounded regions have no center to pull towards.
std::optional<Vec> region_center(const PredicateFunction& pf) {
  if (const auto* b = std::get_if<Ball>(&pf.shape())) return b->center;
  try {
    return inscribe_rect(pf).center();
  } catch (const InputError&) {
    return std::nullopt;
  }
}

// Union-find over agents linked by active pair tasks.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(static_cast<std::size_t>(n + 1)) {
    for (int i = 0; i <= n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }
  int find(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    return i;
  }
  void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

double worst_margin(const std::vector<const ActiveTask*>& tasks, const Eigen::VectorXd& X, int n,
                    const ActiveTask** worst) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto* a : tasks) {
    const auto& s = a->task->subject;
    Vec z = s.is_pair() ? Vec(X.segment((s.edge().to - 1) * n, n) - X.segment((s.edge().from - 1) * n, n))
                        : Vec(X.segment((s.agent() - 1) * n, n));
    const double h = eval_predicate(a->task->predicate, z);
    if (h < m) {
      m = h;
      if (worst) *worst = a;
    }
  }
  return m;
}

Eigen::VectorXd place(const std::vector<const ActiveTask*>& tasks, const Eigen::VectorXd& prev, int agents,
                      int n, AgentId preferred_anchor, double t) {
  const auto dim = static_cast<Eigen::Index>(agents) * n;
  Components comp(agents);
  std::vector<bool> absolute(static_cast<std::size_t>(agents + 1), false);
  std::map<const ActiveTask*, std::optional<Vec>> centers;
  for (const auto* a : tasks) {
    const auto& s = a->task->subject;
    if (!centers.emplace(a, region_center(a->task->predicate)).first->second) continue;
    if (s.is_pair()) comp.join(s.edge().from, s.edge().to);
    else absolute[static_cast<std::size_t>(s.agent())] = true;
  }
  std::map<int, bool> comp_absolute;
  std::map<int, AgentId> anchor;
  for (AgentId i = 1; i <= agents; ++i) {
    const int r = comp.find(i);
    comp_absolute[r] = comp_absolute[r] || absolute[static_cast<std::size_t>(i)];
    if (!anchor.count(r)) anchor[r] = i;
  }
  if (preferred_anchor >= 1 && preferred_anchor <= agents) anchor[comp.find(preferred_anchor)] = preferred_anchor;

  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  auto unit = [&](AgentId i, int k, double v, Eigen::VectorXd& row) { row[(i - 1) * n + k] += v; };
  for (const auto* a : tasks) {
    const auto& s = a->task->subject;
    const auto& center = centers.at(a);
    if (!center) continue;
    const Vec& c = *center;
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(dim);
      if (s.is_pair()) {
        unit(s.edge().to, k, 1.0, row);
        unit(s.edge().from, k, -1.0, row);
      } else {
        unit(s.agent(), k, 1.0, row);
      }
      rows.push_back(std::move(row));
      rhs.push_back(c[k]);
    }
  }
  for (const auto& [root, a] : anchor) {
    if (comp_absolute[root]) continue;
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(dim);
      unit(a, k, 1.0, row);
      rows.push_back(std::move(row));
      rhs.push_back(prev[(a - 1) * n + k]);
    }
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), dim);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    A.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    b[static_cast<Eigen::Index>(r)] = rhs[r];
  }
  Eigen::VectorXd X = A.completeOrthogonalDecomposition().solve(b);

  const ActiveTask* worst = nullptr;
  if (tasks.empty() || worst_margin(tasks, X, n, &worst) > 0.0) return X;

  // Least squares left some region; maximize the smallest margin instead.
  solver::Problem prob;
  prob.num_variables = static_cast<std::size_t>(dim);
  for (const auto* a : tasks) {
    const auto& s = a->task->subject;
    std::vector<solver::LinearForm> point(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      auto& f = point[static_cast<std::size_t>(k)];
      if (s.is_pair()) {
        f.add(static_cast<std::size_t>((s.edge().to - 1) * n + k), 1.0);
        f.add(static_cast<std::size_t>((s.edge().from - 1) * n + k), -1.0);
      } else {
        f.add(static_cast<std::size_t>((s.agent() - 1) * n + k), 1.0);
      }
    }
    append_membership_rows(prob, a->task->predicate, point, prob.add_group(a->label));
  }
  prob.initial_point = X;
  const auto r = solver::minimize_max_violation(prob);
  if (r.point.size() == dim && worst_margin(tasks, r.point, n, &worst) > 0.0) return r.point;
  throw InfeasibleError(fmt::format("cannot place agents at t = {} inside the region of task {}", t,
                                    worst ? worst->label : std::string("?")),
                        r.certificate);
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

Trajectory synthesize_trajectory(const GlobalSpec& spec, const SynthesisOptions& options) {
  if (!(options.dt > 0.0)) throw_input("synthesis step dt must be positive");
  if (!(options.max_speed > 0.0)) throw_input("max_speed must be positive");
  const int agents = spec.num_agents;
  const int n = spec.dimension;
  if (agents <= 0 || n <= 0) throw_input("spec needs agents and a positive dimension");
  const auto tasks = collect(spec);
  if (!(options.horizon >= 0.0)) throw_input("synthesis horizon must be non-negative");
  const double horizon = std::max(spec.horizon(), options.horizon);

  std::set<double> key_set{0.0, horizon};
  for (const auto& a : tasks) {
    if (a.task->op == TemporalOp::kAlways) {
      key_set.insert(a.task->interval.start);
      key_set.insert(a.task->interval.end);
    } else {
      key_set.insert(a.instant);
    }
  }
  const std::vector<double> keys(key_set.begin(), key_set.end());

  std::vector<double> times = keys;
  const auto steps = static_cast<long>(std::floor(horizon / options.dt + 1e-9));
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * options.dt;
    const auto it = std::lower_bound(keys.begin(), keys.end(), t);
    const bool dup = (it != keys.end() && near(*it, t)) || (it != keys.begin() && near(*(it - 1), t));
    if (!dup) times.push_back(t);
  }
  std::sort(times.begin(), times.end());

  const auto dim = static_cast<Eigen::Index>(agents) * n;
  std::vector<Eigen::VectorXd> frames;
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(dim);
  for (std::size_t q = 0; q < keys.size(); ++q) {
    std::vector<const ActiveTask*> act;
    for (const auto& a : tasks)
      if (active_at(a, keys[q])) act.push_back(&a);
    Eigen::VectorXd X = place(act, prev, agents, n, options.anchor, keys[q]);
    if (q > 0 && std::isfinite(options.max_speed)) {
      const double span = keys[q] - keys[q - 1];
      for (int i = 0; i < agents; ++i) {
        const double dist = (X.segment(i * n, n) - prev.segment(i * n, n)).norm();
        if (dist > options.max_speed * span + 1e-12)
          throw_input(fmt::format("agent {} cannot reach its keyframe at t = {} under speed {}", i + 1, keys[q],
                                  options.max_speed));
      }
    }
    frames.push_back(X);
    prev = X;
  }

  std::vector<Eigen::MatrixXd> states(static_cast<std::size_t>(agents), Eigen::MatrixXd(times.size(), n));
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double t = times[s];
    auto hi = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), t) - keys.begin());
    Eigen::VectorXd X;
    if (hi < keys.size() && keys[hi] == t) {
      X = frames[hi];
    } else if (hi == 0) {
      X = frames.front();
    } else if (hi >= keys.size()) {
      X = frames.back();
    } else {
      const double w = (t - keys[hi - 1]) / (keys[hi] - keys[hi - 1]);
      X = (1.0 - w) * frames[hi - 1] + w * frames[hi];
    }
    for (int i = 0; i < agents; ++i)
      states[static_cast<std::size_t>(i)].row(static_cast<Eigen::Index>(s)) = X.segment(i * n, n).transpose();
  }
  Trajectory traj(std::move(times), std::move(states));
  if (!tasks.empty()) {
    const double rho = robustness(spec, traj);
    if (!(rho > 0.0))
      throw InfeasibleError(fmt::format("synthesized trajectory has robustness {:.6g}", rho), -rho);
  }
  return traj;
}

Trajectory synthesize_trajectory(const DecompositionResult& result, const SynthesisOptions& options) {
  SynthesisOptions opts = options;
  for (const auto& f : result.families) opts.horizon = std::max(opts.horizon, f.origin.interval.end);
  return synthesize_trajectory(result.rewritten, opts);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kVacuous: return "vacuous";
    case Verdict::kViolated: return "violated";
  }
  return "vacuous";
}

std::vector<TaskRobustness> robustness_breakdown(const GlobalSpec& spec, const Trajectory& traj,
                                                 const std::string& which) {
  std::vector<TaskRobustness> out;
  for (const auto& a : collect(spec)) out.push_back({which, a.label, robustness(*a.task, traj)});
  return out;
}

ImplicationReport verify_implication(const Trajectory& traj, const GlobalSpec& rewritten,
                                     const GlobalSpec& original) {
  ImplicationReport rep;
  rep.rewritten = robustness(rewritten, traj);
  rep.original = robustness(original, traj);
  rep.breakdown = robustness_breakdown(rewritten, traj, "rewritten");
  auto orig = robustness_breakdown(original, traj, "original");
  rep.breakdown.insert(rep.breakdown.end(), orig.begin(), orig.end());
  if (rep.rewritten > 0.0) rep.verdict = rep.original > 0.0 ? Verdict::kHolds : Verdict::kViolated;
  else rep.verdict = Verdict::kVacuous;
  return rep;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const int agents = traj.num_agents();
  const auto n = traj.dimension();
  std::string line = "t";
  for (int i = 1; i <= agents; ++i)
    for (Eigen::Index k = 1; k <= n; ++k) line += fmt::format(",x{}_{}", i, k);
  out << line << '\n';
  for (std::size_t s = 0; s < traj.num_samples(); ++s) {
    line = fmt::format("{:.17g}", traj.times()[s]);
    for (int i = 1; i <= agents; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        line += fmt::format(",{:.17g}", traj.states(i)(static_cast<Eigen::Index>(s), k));
    out << line << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  for (auto& f : out) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
    while (!f.empty() && f.front() == ' ') f.erase(f.begin());
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty())
    throw_input(fmt::format("trajectory CSV line {}: '{}' is not a number", line, s));
  return v;
}

}  // namespace

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw_input("trajectory CSV is empty");
  const auto header = split_csv(line);
  if (header.empty() || header.front() != "t") throw_input("trajectory CSV line 1: header must start with 't'");
  int agents = 0, dim = 0;
  for (std::size_t c = 1; c < header.size(); ++c) {
    int i = 0, k = 0;
    if (std::sscanf(header[c].c_str(), "x%d_%d", &i, &k) != 2)
      throw_input(fmt::format("trajectory CSV line 1: bad column name '{}'", header[c]));
    agents = std::max(agents, i);
    dim = std::max(dim, k);
  }
  if (agents == 0 || static_cast<std::size_t>(agents * dim) + 1 != header.size())
    throw_input("trajectory CSV line 1: columns do not form agents x dimension");
  for (std::size_t c = 1; c < header.size(); ++c) {
    const int i = static_cast<int>((c - 1) / static_cast<std::size_t>(dim)) + 1;
    const int k = static_cast<int>((c - 1) % static_cast<std::size_t>(dim)) + 1;
    if (header[c] != fmt::format("x{}_{}", i, k))
      throw_input(fmt::format("trajectory CSV line 1: expected column x{}_{}, got '{}'", i, k, header[c]));
  }
  std::vector<double> times;
  std::vector<std::vector<double>> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size())
      throw_input(fmt::format("trajectory CSV line {}: expected {} fields, got {}", lineno, header.size(),
                              fields.size()));
    times.push_back(parse_double(fields[0], lineno));
    std::vector<double> row;
    for (std::size_t c = 1; c < fields.size(); ++c) row.push_back(parse_double(fields[c], lineno));
    values.push_back(std::move(row));
  }
  std::vector<Eigen::MatrixXd> states(static_cast<std::size_t>(agents),
                                      Eigen::MatrixXd(static_cast<Eigen::Index>(times.size()), dim));
  for (std::size_t s = 0; s < times.size(); ++s)
    for (int i = 0; i < agents; ++i)
      for (int k = 0; k < dim; ++k)
        states[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(s), k) =
            values[s][static_cast<std::size_t>(i * dim + k)];
  return Trajectory(std::move(times), std::move(states));
}

}  // namespace stldecomp
