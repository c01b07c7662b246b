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


// Acceptance runner. `acceptance` runs every criterion; `acceptance K...`
// runs the listed ones. Each prints one line "criterion K PASS|FAIL ..." and
// the process exits non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "random_instances.hpp"
#include "stldecomp/conflict.hpp"
#include "stldecomp/decomposer.hpp"
#include "stldecomp/errors.hpp"
#include "stldecomp/geometry.hpp"
#include "stldecomp/scenario.hpp"
#include "stldecomp/validation.hpp"

namespace stldecomp {
namespace {

using testing::Rng;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_double(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

const std::string kDir = STLDECOMP_SOURCE_DIR "/scenarios/";

// Worst-corner margin of an axis-aligned box against a disc, from first
// principles: the farthest corner is the one on the far side of each axis.
double disc_corner_margin(const Vec& box_center, const Vec& box_size, const Vec& disc_center, double radius) {
  double d2 = 0.0;
  for (Eigen::Index k = 0; k < box_center.size(); ++k) {
    const double far = std::abs(box_center[k] - disc_center[k]) + 0.5 * box_size[k];
    d2 += far * far;
  }
  return radius - std::sqrt(d2);
}

// 1. Reference parameters pass the aggregate-inclusion audit.
Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto sc = load_scenario(kDir + "formation_8agents.scn");
  const auto params = load_params(kDir + "formation_8agents_reference_params.yaml");
  const auto check = check_params(sc, params, 0.05);
  const double elapsed = seconds_since(t0);

  std::map<std::string, double> inclusion;
  for (const auto& c : check.evaluated)
    if (c.kind == ConstraintKind::kInclusion) inclusion[c.label] = c.margin;
  o.require(check.unmatched.empty(), "unmatched params entries");
  o.require(inclusion.size() == 5, "expected 5 inclusion checks, got " + std::to_string(inclusion.size()));
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& [label, m] : inclusion) {
    worst = std::min(worst, m);
    o.require(m >= -0.05, label + " margin " + fmt_double(m));
  }
  o.require(!inclusion.count("inclusion phi_52"), "phi_52 must stay out of the audit");

  // Independent corner-distance oracle on two of the paths.
  const double m47 = disc_corner_margin((Vec(2) << -9.99 + 25.00, 9.99 + 5.00).finished(),
                                        (Vec(2) << 1.89 + 0.91, 1.89 + 0.91).finished(),
                                        (Vec(2) << 15, 15).finished(), 3.0);
  const double m87 = disc_corner_margin((Vec(2) << 7.99 + 7.99, 7.99 - 7.99).finished(),
                                        (Vec(2) << 1.26 + 0.95, 1.26 + 0.95).finished(),
                                        (Vec(2) << 16, 0).finished(), 2.0 * std::sqrt(2.0));
  o.require(std::abs(inclusion["inclusion phi_74"] - m47) < 1e-9, "phi_74 margin disagrees with oracle");
  o.require(std::abs(inclusion["inclusion phi_87"] - m87) < 1e-9, "phi_87 margin disagrees with oracle");
  o.require(elapsed < 1.0, "runtime " + fmt_double(elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("min inclusion margin ") + fmt_double(worst) +
              ", phi_74 " + fmt_double(m47) + ", phi_87 " + fmt_double(m87) + ", " + fmt_double(elapsed, 2) +
              " s";
  return o;
}

// 2. End-to-end decomposition of the bundled scenario.
Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto sc = load_scenario(kDir + "formation_8agents.scn");
  const auto gc = sc.communication_graph();
  const auto r = decompose(sc.spec(), gc, sc.decompose_options());
  const double elapsed = seconds_since(t0);

  o.require(r.solution.status == solver::Status::kOptimal, "status " + solver::to_string(r.solution.status));
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < r.problem.constraints.size(); ++c) {
    worst = std::min(worst, r.constraint_margins[c]);
    o.require(r.constraint_margins[c] >= -1e-6, r.problem.constraints[c].label);
  }
  o.require(r.families.size() == 6, std::to_string(r.families.size()) + " decomposed tasks");
  for (const auto& f : r.families) o.require(f.path.num_edges() == 2, f.label + " path length");
  for (AgentId i = 1; i <= gc.num_nodes(); ++i)
    for (AgentId j : r.rewritten_graph.neighbors(i)) o.require(gc.has_edge(i, j), "neighbourhood of " + std::to_string(i));
  o.require(elapsed < 5.0, "runtime " + fmt_double(elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("objective ") + fmt_double(r.solution.objective, 6) +
              ", min margin " + fmt_double(worst) + ", " + std::to_string(r.problem.constraints.size()) +
              " constraints, " + fmt_double(elapsed, 3) + " s";
  return o;
}

// 3. Single ball task over a two-edge path against the inscribed-square
// optimum, cross-checked by a grid search over the split.
Outcome criterion3() {
  Outcome o;
  GlobalSpec spec;
  spec.num_agents = 3;
  spec.dimension = 2;
  spec.add({TemporalOp::kAlways, {0, 10}, Subject::pair(1, 3), Ball{(Vec(2) << 3, -1).finished(), 3.0}, "far"});
  const auto r = decompose(spec, UndirectedGraph(3, {{1, 2}, {2, 3}}));

  // Grid oracle: aggregate sizes (A, B) on the circle A^2 + B^2 = 36 (the
  // aggregate box inscribed in the disc), split a1 + a2 = A, b1 + b2 = B.
  double best = std::numeric_limits<double>::infinity();
  double best_a1 = 0, best_b1 = 0;
  const int nt = 400, ns = 200;
  for (int it = 1; it < nt; ++it) {
    const double th = 0.5 * M_PI * it / nt;
    const double A = 6.0 * std::cos(th), B = 6.0 * std::sin(th);
    for (int ia = 1; ia < ns; ++ia) {
      const double a1 = A * ia / ns, a2 = A - a1;
      for (int ib = 1; ib < ns; ++ib) {
        const double b1 = B * ib / ns, b2 = B - b1;
        const double f = 1.0 / (a1 * b1) + 1.0 / (a2 * b2);
        if (f < best) {
          best = f;
          best_a1 = a1;
          best_b1 = b1;
        }
      }
    }
  }
  const double analytic_nu = 3.0 / std::sqrt(2.0);
  o.require(std::abs(best - 4.0 / 9.0) < 1e-3, "grid optimum " + fmt_double(best));
  o.require(std::abs(best_a1 - analytic_nu) < 2e-2 && std::abs(best_b1 - analytic_nu) < 2e-2, "grid argmin");

  o.require(r.ok(), "status " + solver::to_string(r.solution.status));
  std::string sizes;
  for (const auto& s : r.families.at(0).subtasks) {
    for (int k = 0; k < 2; ++k) {
      const double nu = s.solved->size()[k];
      o.require(std::abs(nu - analytic_nu) <= 1e-2, "nu " + fmt_double(nu));
      sizes += fmt_double(nu, 6) + " ";
    }
  }
  o.require(std::abs(r.solution.objective - 4.0 / 9.0) <= 1e-3, "objective " + fmt_double(r.solution.objective));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("nu ") + sizes + "objective " +
              fmt_double(r.solution.objective, 6) + " (grid " + fmt_double(best, 6) + ")";
  return o;
}

Trajectory jitter(const Trajectory& traj, Rng& rng, double sigma) {
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<Eigen::MatrixXd> states;
  for (AgentId i = 1; i <= traj.num_agents(); ++i) {
    Eigen::MatrixXd m = traj.states(i);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) += noise(rng);
    states.push_back(m);
  }
  return Trajectory(traj.times(), states);
}

// 4. Randomized implication suite.
Outcome criterion4() {
  Outcome o;
  const auto t0 = Clock::now();
  Rng rng(20261018);
  const int wanted = 100;
  int feasible = 0, draws = 0, rejected = 0, synthesized = 0, synthesis_failed = 0, counterexamples = 0;
  int trajectories = 0, premise_met = 0;
  while (feasible < wanted && draws < 2000) {
    ++draws;
    const auto inst = testing::random_instance(rng);
    DecompositionResult r;
    try {
      r = decompose(inst.spec, inst.gc);
    } catch (const InfeasibleError&) {
      ++rejected;
      continue;
    }
    if (!r.ok()) {
      ++rejected;
      continue;
    }
    ++feasible;
    Trajectory traj({0.0}, std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(inst.spec.num_agents),
                                                        Eigen::MatrixXd::Zero(1, 2)));
    try {
      traj = synthesize_trajectory(r);
    } catch (const InfeasibleError&) {
      ++synthesis_failed;
      continue;
    }
    ++synthesized;
    std::vector<Trajectory> probes{traj};
    for (double sigma : {0.05, 0.2, 0.5, 1.0}) probes.push_back(jitter(traj, rng, sigma));
    for (const auto& p : probes) {
      ++trajectories;
      const auto rep = verify_implication(p, r.rewritten, inst.spec);
      if (rep.rewritten > 0.0) ++premise_met;
      if (rep.verdict == Verdict::kViolated) ++counterexamples;
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(feasible == wanted, "only " + std::to_string(feasible) + " feasible scenarios");
  o.require(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  o.require(synthesized >= 90, "synthesis succeeded on " + std::to_string(synthesized) + " scenarios");
  o.require(elapsed < 60.0, "runtime " + fmt_double(elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(feasible) + " feasible of " +
              std::to_string(draws) + " draws (" + std::to_string(rejected) + " infeasible), " +
              std::to_string(synthesized) + " synthesized, " + std::to_string(synthesis_failed) +
              " synthesis failures, " + std::to_string(trajectories) + " trajectories, " +
              std::to_string(premise_met) + " with rewritten robustness > 0, " +
              std::to_string(counterexamples) + " counterexamples, " + fmt_double(elapsed, 3) + " s";
  return o;
}

// 5. Geometry against brute-force vertex oracles.
Outcome criterion5() {
  Outcome o;
  Rng rng(5);
  int sums_ok = 0, inclusion_cases = 0, bib_agree = 0, bib_inside = 0;
  long samples = 0;
  const int pairs = 1000;
  for (int trial = 0; trial < pairs; ++trial) {
    const int n = testing::uniform_int(rng, 1, 3);
    auto rect = [&](double spread) {
      Vec c(n), s(n);
      for (int k = 0; k < n; ++k) {
        c[k] = testing::dyadic(rng, -spread, spread);
        s[k] = std::max(1.0 / 64.0, testing::dyadic(rng, 0.0, 4.0));
      }
      return HyperRect(c, s);
    };
    const HyperRect r1 = rect(5.0), r2 = rect(5.0);

    // Minkowski sum against every pairwise vertex sum.
    const auto sum = minkowski_sum(r1, r2);
    const auto v1 = vertices(r1), v2 = vertices(r2);
    Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity()), hi = -lo;
    for (const auto& a : v1)
      for (const auto& b : v2) {
        lo = lo.cwiseMin(a + b);
        hi = hi.cwiseMax(a + b);
      }
    bool ok = lo == sum.lower() && hi == sum.upper();
    const auto vs = vertices(sum);
    for (std::size_t k = 0; k < vs.size(); ++k) ok = ok && vs[k] == v1[k] + v2[k];
    sums_ok += ok;

    // Vertex inclusion implies membership of interior samples.
    PredicateFunction pf = Ball{Vec::Zero(n), 1.0};
    const int kind = testing::uniform_int(rng, 0, 2);
    const Vec far = r1.upper() - r1.center();
    if (kind == 0) {
      pf = Ball{r1.center() + testing::random_vec(rng, n, -0.5, 0.5), std::max(0.05, far.norm() + testing::uniform(rng, -0.3, 1.0))};
    } else if (kind == 1) {
      Vec size = r1.size();
      for (int k = 0; k < n; ++k) size[k] += testing::uniform(rng, -0.2, 1.0);
      pf = HyperRect(r1.center() + testing::random_vec(rng, n, -0.2, 0.2), size.cwiseMax(0.05));
    } else {
      Polytope poly;
      for (int h = 0; h < n + 3; ++h) {
        Vec a = testing::random_vec(rng, n, -1.0, 1.0);
        if (a.norm() < 1e-3) a = Vec::Unit(n, 0);
        a.normalize();
        const double support = a.dot(r1.center()) + a.cwiseAbs().dot(0.5 * r1.size());
        poly.rows.push_back({a, support + testing::uniform(rng, -0.2, 0.5)});
      }
      pf = poly;
    }
    if (superlevel_margin(r1, pf) >= 0.0) {
      ++inclusion_cases;
      bool inside = true;
      for (int s = 0; s < 10000; ++s) {
        Vec z(n);
        for (int k = 0; k < n; ++k) z[k] = testing::uniform(rng, r1.lower()[k], r1.upper()[k]);
        inside = inside && eval_predicate(pf, z) >= -1e-9;
      }
      samples += 10000;
      o.require(inside, "sample outside an included box at trial " + std::to_string(trial));
    }

    // box_in_box_margin sign against exhaustive vertex membership.
    const HyperRect outer = rect(2.0);
    Vec ic(n), is(n);
    for (int k = 0; k < n; ++k) {
      is[k] = std::max(1.0 / 64.0, testing::dyadic(rng, 0.0, outer.size()[k] * 1.2));
      ic[k] = outer.center()[k] + testing::dyadic(rng, -0.6, 0.6) * (outer.size()[k] - is[k] + 0.25);
    }
    const HyperRect inner(ic, is);
    bool all_in = true;
    for (const auto& v : vertices(inner))
      for (int k = 0; k < n; ++k) all_in = all_in && std::abs(v[k] - outer.center()[k]) <= 0.5 * outer.size()[k];
    bib_agree += (box_in_box_margin(inner, outer) >= 0.0) == all_in;
    bib_inside += all_in;
  }
  o.require(sums_ok == pairs, std::to_string(pairs - sums_ok) + " Minkowski mismatches");
  o.require(bib_agree == pairs, std::to_string(pairs - bib_agree) + " box-in-box disagreements");
  o.require(inclusion_cases >= 100, "only " + std::to_string(inclusion_cases) + " inclusion cases");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(pairs) + " pairs, " + std::to_string(sums_ok) +
              " exact sums, " + std::to_string(inclusion_cases) + " included boxes (" + std::to_string(samples) +
              " samples), box-in-box agreement " + std::to_string(bib_agree) + " (" + std::to_string(bib_inside) +
              " contained)";
  return o;
}

// 6. Edge detectors against the emptiness oracle; post-solve audits on
// randomized cyclic scenarios.
Outcome criterion6() {
  Outcome o;
  Rng rng(6);
  const int bundles = 500;
  int agree = 0, conflicts = 0;
  for (int trial = 0; trial < bundles; ++trial) {
    ParameterSet ps(2);
    Eigen::VectorXd values(0);
    struct Region {
      bool ball;
      Vec c;
      double r;
      Vec s;
    };
    std::vector<Region> regions;
    EdgeTaskBundle b{{1, 2}, {}};
    for (std::size_t id = 0; id < 2; ++id) {
      BundleConjunct c;
      c.id = id;
      c.label = "c" + std::to_string(id);
      c.op = testing::coin(rng, 0.6) ? TemporalOp::kAlways : TemporalOp::kEventually;
      const double a = testing::uniform_int(rng, 0, 6);
      c.interval = {a, a + testing::uniform_int(rng, 0, 5)};
      Region reg{testing::coin(rng, 0.5), testing::random_vec(rng, 2, -3, 3), testing::uniform(rng, 0.3, 2.0),
                 testing::random_vec(rng, 2, 0.3, 3.0)};
      const bool parametric = !reg.ball && testing::coin(rng, 0.3);
      if (parametric) {
        const auto block = ps.add_block(id, {1, 2});
        c.parametric = RectExpr::block(block, 2);
        values.conservativeResize(values.size() + 4);
        values.tail(4) << reg.c, reg.s;
      } else if (reg.ball) {
        c.fixed = PredicateFunction(Ball{reg.c, reg.r});
      } else {
        c.fixed = PredicateFunction(HyperRect(reg.c, reg.s));
      }
      regions.push_back(reg);
      b.conjuncts.push_back(std::move(c));
    }
    const auto& x = b.conjuncts[0];
    const auto& y = b.conjuncts[1];
    const bool both_g = x.op == TemporalOp::kAlways && y.op == TemporalOp::kAlways;
    const bool overlap = std::max(x.interval.start, y.interval.start) <= std::min(x.interval.end, y.interval.end);
    const bool t2 = (x.op == TemporalOp::kAlways && y.op == TemporalOp::kEventually &&
                     x.interval.start <= y.interval.start && y.interval.end <= x.interval.end) ||
                    (y.op == TemporalOp::kAlways && x.op == TemporalOp::kEventually &&
                     y.interval.start <= x.interval.start && x.interval.end <= y.interval.end);
    const auto& p = regions[0];
    const auto& q = regions[1];
    bool meet;
    if (p.ball && q.ball) meet = testing::balls_meet(p.c, p.r, q.c, q.r);
    else if (p.ball) meet = testing::ball_rect_meet(p.c, p.r, q.c, q.s);
    else if (q.ball) meet = testing::ball_rect_meet(q.c, q.r, p.c, p.s);
    else meet = testing::rects_meet(p.c, p.s, q.c, q.s);
    std::vector<ConflictType> expected;
    if (both_g && overlap && !meet) expected.push_back(ConflictType::kType1);
    else if (t2 && !meet) expected.push_back(ConflictType::kType2);
    const auto got = detect_edge_conflicts(b, RegionValues{&ps, &values});
    std::vector<ConflictType> types;
    for (const auto& rec : got) types.push_back(rec.type);
    agree += types == expected;
    conflicts += !expected.empty();
  }
  o.require(agree == bundles, std::to_string(bundles - agree) + " edge-detector disagreements");

  const int wanted = 50;
  int audited = 0, draws = 0, dirty = 0;
  std::size_t rows = 0, combos = 0;
  testing::InstanceOptions opts;
  opts.min_agents = 4;
  opts.extra_edge_prob = 0.5;
  opts.min_tasks = 4;
  opts.max_tasks = 8;
  opts.non_communicating_prob = 0.6;
  while (audited < wanted && draws < 2000) {
    ++draws;
    const auto inst = testing::random_instance(rng, opts);
    DecompositionResult r;
    try {
      r = decompose(inst.spec, inst.gc);
    } catch (const InfeasibleError&) {
      continue;
    }
    if (!r.ok() || r.census.combinations_checked == 0) continue;
    ++audited;
    rows += r.census.type1 + r.census.type2 + r.census.type3 + r.census.type4;
    combos += r.census.combinations_checked;
    const auto found = audit_conflicts(r.bundles, r.rewritten_graph,
                                       RegionValues{&r.problem.parameters, &r.solution.values});
    dirty += !found.empty();
  }
  o.require(audited == wanted, "only " + std::to_string(audited) + " cyclic scenarios");
  o.require(dirty == 0, std::to_string(dirty) + " scenarios with conflicts after resolution");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(agree) + "/" + std::to_string(bundles) +
              " bundles agree (" + std::to_string(conflicts) + " conflicting), " + std::to_string(audited) +
              " cyclic scenarios audited from " + std::to_string(draws) + " draws, " + std::to_string(rows) +
              " resolution rows, " + std::to_string(combos) + " combinations, " + std::to_string(dirty) +
              " with conflicts";
  return o;
}

// 7. Derivatives against central differences; repeatability.
Outcome criterion7() {
  Outcome o;
  const auto sc = load_scenario(kDir + "formation_8agents.scn");
  const auto r = decompose(sc.spec(), sc.communication_graph(), sc.decompose_options());
  const auto pr = lower(r.problem);
  const auto nv = static_cast<Eigen::Index>(pr.num_variables);
  Rng rng(7);
  double worst = 0.0;
  auto rel = [](const Eigen::VectorXd& g, const Eigen::VectorXd& fd) {
    return (g - fd).lpNorm<Eigen::Infinity>() / std::max(1.0, fd.lpNorm<Eigen::Infinity>());
  };
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd x = r.solution.values;
    for (std::size_t b = 0; b < r.problem.parameters.num_blocks(); ++b) {
      const auto& blk = r.problem.parameters.block(b);
      for (int k = 0; k < 2; ++k) {
        x[static_cast<Eigen::Index>(blk.center_offset) + k] += testing::uniform(rng, -0.1, 0.1);
        x[static_cast<Eigen::Index>(blk.size_offset) + k] *= testing::uniform(rng, 0.7, 0.98);
      }
    }
    const double h = 1e-6;
    Eigen::VectorXd fd(nv);
    for (Eigen::Index k = 0; k < nv; ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      fd[k] = (solver::objective_value(pr, xp) - solver::objective_value(pr, xm)) / (2 * h);
    }
    worst = std::max(worst, rel(solver::objective_gradient(pr, x), fd));
    for (const auto& row : pr.rows) {
      if (!std::holds_alternative<solver::BallRow>(row) && testing::coin(rng, 0.8)) continue;
      for (Eigen::Index k = 0; k < nv; ++k) {
        Eigen::VectorXd xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        fd[k] = (solver::smooth_row_value(row, xp) - solver::smooth_row_value(row, xm)) / (2 * h);
      }
      worst = std::max(worst, rel(solver::smooth_row_gradient(row, pr.num_variables, x), fd));
    }
  }
  o.require(worst <= 1e-5, "gradient relative error " + fmt_double(worst));

  const auto again = decompose(sc.spec(), sc.communication_graph(), sc.decompose_options());
  const bool same_values =
      again.solution.values.size() == r.solution.values.size() &&
      std::memcmp(again.solution.values.data(), r.solution.values.data(),
                  sizeof(double) * static_cast<std::size_t>(r.solution.values.size())) == 0;
  o.require(same_values, "solution vectors differ between runs");
  o.require(again.solution.objective_history == r.solution.objective_history, "iterate histories differ");
  o.require(again.solution.newton_steps == r.solution.newton_steps, "Newton step counts differ");
  o.require(render_report(again) == render_report(r), "reports differ");
  const auto t1 = synthesize_trajectory(r), t2 = synthesize_trajectory(again);
  bool same_traj = t1.times() == t2.times();
  for (AgentId i = 1; same_traj && i <= t1.num_agents(); ++i) same_traj = t1.states(i) == t2.states(i);
  o.require(same_traj, "synthesized trajectories differ");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("100 points, worst gradient relative error ") +
              fmt_double(worst) + ", repeated runs bit-identical: " + (same_values && same_traj ? "yes" : "no");
  return o;
}

}  // namespace
}  // namespace stldecomp

int main(int argc, char** argv) {
  const std::vector<std::function<stldecomp::Outcome()>> criteria{
      stldecomp::criterion1, stldecomp::criterion2, stldecomp::criterion3, stldecomp::criterion4,
      stldecomp::criterion5, stldecomp::criterion6, stldecomp::criterion7};
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) {
    const int k = std::atoi(argv[a]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-7 ...]\n");
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty())
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.push_back(k);

  bool all = true;
  for (int k : selected) {
    stldecomp::Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d %s: %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
