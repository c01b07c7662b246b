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


#include "stldecomp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "stldecomp/errors.hpp"

namespace stldecomp {

using detail::throw_input;

namespace {

[[noreturn]] void fail(const std::string& what, const std::string& path) {
  throw InputError(path.empty() ? what : what + " at " + path);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t k) { return fmt::format("{}[{}]", path, k); }

void allow_keys(const YAML::Node& map, const std::string& path, std::initializer_list<const char*> keys) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
      fail("unknown field '" + key + "'", path.empty() ? key : join(path, key));
  }
}

YAML::Node require(const YAML::Node& map, const char* key, const std::string& path) {
  const auto node = map[key];
  if (!node) fail(std::string("missing field '") + key + "'", path.empty() ? std::string(key) : join(path, key));
  return node;
}

double as_double(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail("expected a number", path);
  try {
    const double v = n.as<double>();
    if (!std::isfinite(v)) fail("expected a finite number", path);
    return v;
  } catch (const YAML::BadConversion&) {
    fail("expected a number", path);
  }
}

int as_int(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail("expected an integer", path);
  try {
    return n.as<int>();
  } catch (const YAML::BadConversion&) {
    fail("expected an integer", path);
  }
}

std::string as_string(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail("expected a string", path);
  return n.as<std::string>();
}

Vec as_vec(const YAML::Node& n, int dim, const std::string& path) {
  if (!n.IsSequence()) fail("expected a list of numbers", path);
  if (dim >= 0 && static_cast<int>(n.size()) != dim)
    fail(fmt::format("expected {} entries, got {}", dim, n.size()), path);
  Vec v(static_cast<Eigen::Index>(n.size()));
  for (std::size_t k = 0; k < n.size(); ++k) v[static_cast<Eigen::Index>(k)] = as_double(n[k], index(path, k));
  return v;
}

Edge as_edge(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence() || n.size() != 2) fail("expected an agent pair [i, j]", path);
  return {as_int(n[0], index(path, 0)), as_int(n[1], index(path, 1))};
}

YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw InputError(fmt::format("syntax error at line {}, column {}: {}", e.mark.line + 1, e.mark.column + 1,
                                 e.msg));
  }
}

void check_schema(const YAML::Node& root, std::initializer_list<const char*> accepted) {
  if (!root.IsMap()) fail("document must be a mapping", "");
  const auto schema = as_string(require(root, "schema", ""), "schema");
  if (std::none_of(accepted.begin(), accepted.end(), [&](const char* s) { return schema == s; }))
    fail("unsupported schema '" + schema + "'", "schema");
}

PredicateFunction parse_predicate(const YAML::Node& n, int dim, const std::string& path) {
  if (!n.IsMap()) fail("expected a predicate mapping", path);
  const auto type = as_string(require(n, "type", path), join(path, "type"));
  if (type == "ball") {
    allow_keys(n, path, {"type", "center", "radius"});
    const Vec c = as_vec(require(n, "center", path), dim, join(path, "center"));
    const double r = as_double(require(n, "radius", path), join(path, "radius"));
    if (!(r > 0.0)) fail("radius must be positive", join(path, "radius"));
    return Ball{c, r};
  }
  if (type == "rect") {
    allow_keys(n, path, {"type", "center", "size"});
    const Vec c = as_vec(require(n, "center", path), dim, join(path, "center"));
    const Vec s = as_vec(require(n, "size", path), dim, join(path, "size"));
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (!(s[k] > 0.0)) fail("rect sizes must be positive", index(join(path, "size"), static_cast<std::size_t>(k)));
    return HyperRect(c, s);
  }
  if (type == "halfspaces") {
    allow_keys(n, path, {"type", "rows"});
    const auto rows = require(n, "rows", path);
    const auto rpath = join(path, "rows");
    if (!rows.IsSequence() || rows.size() == 0) fail("expected a non-empty list of rows", rpath);
    Polytope poly;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto p = index(rpath, k);
      if (!rows[k].IsMap()) fail("expected a row mapping", p);
      allow_keys(rows[k], p, {"normal", "offset"});
      poly.rows.push_back({as_vec(require(rows[k], "normal", p), dim, join(p, "normal")),
                           as_double(require(rows[k], "offset", p), join(p, "offset"))});
    }
    return poly;
  }
  fail("unknown predicate type '" + type + "' (expected ball, rect or halfspaces)", join(path, "type"));
}

bool same_predicate(const PredicateFunction& a, const PredicateFunction& b) {
  if (a.shape().index() != b.shape().index()) return false;
  if (const auto* x = std::get_if<Ball>(&a.shape())) {
    const auto& y = std::get<Ball>(b.shape());
    return x->center == y.center && x->radius == y.radius;
  }
  if (const auto* x = std::get_if<RectRegion>(&a.shape())) return x->rect == std::get<RectRegion>(b.shape()).rect;
  const auto& x = std::get<Polytope>(a.shape());
  const auto& y = std::get<Polytope>(b.shape());
  if (x.rows.size() != y.rows.size()) return false;
  for (std::size_t k = 0; k < x.rows.size(); ++k)
    if (x.rows[k].normal != y.rows[k].normal || x.rows[k].offset != y.rows[k].offset) return false;
  return true;
}

}  // namespace

bool operator==(const ScenarioTask& a, const ScenarioTask& b) {
  return a.tbar == b.tbar && a.task.op == b.task.op && a.task.interval == b.task.interval &&
         a.task.subject == b.task.subject && a.task.name == b.task.name &&
         same_predicate(a.task.predicate, b.task.predicate);
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.num_agents == b.num_agents && a.dimension == b.dimension && a.communication == b.communication &&
         a.tasks == b.tasks && a.options == b.options;
}

GlobalSpec Scenario::spec() const {
  GlobalSpec s;
  s.num_agents = num_agents;
  s.dimension = dimension;
  for (const auto& t : tasks) s.add(t.task);
  return s;
}

UndirectedGraph Scenario::communication_graph() const { return UndirectedGraph(num_agents, communication); }

DecomposeOptions Scenario::decompose_options() const {
  DecomposeOptions o;
  o.nu_min = options.nu_min;
  o.tol = options.tol;
  o.max_cycle_len = options.max_cycle_len;
  o.tbar_policy = options.tbar_policy;
  for (const auto& t : tasks)
    if (t.tbar) o.tbar_overrides[t.task.name] = *t.tbar;
  return o;
}

Scenario parse_scenario(const std::string& text) {
  const YAML::Node root = load_yaml(text);
  check_schema(root, {kScenarioSchema});
  allow_keys(root, "", {"schema", "agents", "dimension", "communication", "tasks", "options"});
  Scenario sc;
  sc.num_agents = as_int(require(root, "agents", ""), "agents");
  if (sc.num_agents < 1) fail("need at least one agent", "agents");
  sc.dimension = as_int(require(root, "dimension", ""), "dimension");
  if (sc.dimension < 1) fail("dimension must be at least 1", "dimension");
  auto check_agent = [&](int a, const std::string& path) {
    if (a < 1 || a > sc.num_agents) fail(fmt::format("unknown agent {}", a), path);
  };

  if (const auto comm = root["communication"]) {
    if (!comm.IsSequence()) fail("expected a list of agent pairs", "communication");
    std::set<Edge> seen;
    for (std::size_t k = 0; k < comm.size(); ++k) {
      const auto p = index("communication", k);
      const Edge e = as_edge(comm[k], p);
      check_agent(e.from, index(p, 0));
      check_agent(e.to, index(p, 1));
      if (e.from == e.to) fail("communication edge joins an agent to itself", p);
      if (!seen.insert(e.canonical()).second) fail("duplicate communication edge", p);
      sc.communication.push_back(e);
    }
  }
  if (!sc.communication_graph().is_connected()) fail("communication graph is not connected", "communication");

  if (const auto tasks = root["tasks"]; tasks && !tasks.IsNull()) {
    if (!tasks.IsSequence()) fail("expected a list of tasks", "tasks");
    std::set<std::string> names;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      const auto p = index("tasks", k);
      const auto& tn = tasks[k];
      if (!tn.IsMap()) fail("expected a task mapping", p);
      allow_keys(tn, p, {"name", "subject", "operator", "interval", "predicate", "tbar"});
      std::string name;
      if (tn["name"]) {
        name = as_string(tn["name"], join(p, "name"));
        if (!names.insert(name).second) fail("duplicate task name '" + name + "'", join(p, "name"));
      }
      const auto subj = require(tn, "subject", p);
      const auto sp = join(p, "subject");
      Subject subject = Subject::single(1);
      if (subj.IsScalar()) {
        const int a = as_int(subj, sp);
        check_agent(a, sp);
        subject = Subject::single(a);
      } else if (subj.IsSequence() && subj.size() == 1) {
        const int a = as_int(subj[0], index(sp, 0));
        check_agent(a, index(sp, 0));
        subject = Subject::single(a);
      } else {
        const Edge e = as_edge(subj, sp);
        check_agent(e.from, index(sp, 0));
        check_agent(e.to, index(sp, 1));
        if (e.from == e.to) fail("pair subject needs two distinct agents", sp);
        subject = Subject::pair(e.from, e.to);
      }
      const auto op_text = as_string(require(tn, "operator", p), join(p, "operator"));
      TemporalOp op;
      if (op_text == "always") op = TemporalOp::kAlways;
      else if (op_text == "eventually") op = TemporalOp::kEventually;
      else fail("operator must be 'always' or 'eventually'", join(p, "operator"));
      const auto ip = join(p, "interval");
      const Vec iv = as_vec(require(tn, "interval", p), 2, ip);
      if (iv[0] < 0.0) fail("interval start must be non-negative", ip);
      if (iv[1] < iv[0]) fail("interval end before start", ip);
      ScenarioTask st{AtomicTask{op, {iv[0], iv[1]}, subject,
                                 parse_predicate(require(tn, "predicate", p), sc.dimension, join(p, "predicate")),
                                 name},
                      std::nullopt};
      if (tn["tbar"]) {
        const double tb = as_double(tn["tbar"], join(p, "tbar"));
        if (op != TemporalOp::kEventually) fail("tbar only applies to eventually tasks", join(p, "tbar"));
        if (name.empty()) fail("a task with tbar needs a name", join(p, "tbar"));
        if (!st.task.interval.contains(tb)) fail("tbar outside the task interval", join(p, "tbar"));
        st.tbar = tb;
      }
      sc.tasks.push_back(std::move(st));
    }
  }

  if (const auto opts = root["options"]; opts && !opts.IsNull()) {
    if (!opts.IsMap()) fail("expected an options mapping", "options");
    allow_keys(opts, "options", {"nu_min", "tol", "max_cycle_len", "tbar_policy"});
    if (opts["nu_min"]) {
      sc.options.nu_min = as_double(opts["nu_min"], "options.nu_min");
      if (!(sc.options.nu_min > 0.0)) fail("nu_min must be positive", "options.nu_min");
    }
    if (opts["tol"]) {
      sc.options.tol = as_double(opts["tol"], "options.tol");
      if (!(sc.options.tol > 0.0)) fail("tol must be positive", "options.tol");
    }
    if (opts["max_cycle_len"]) {
      sc.options.max_cycle_len = as_int(opts["max_cycle_len"], "options.max_cycle_len");
      if (sc.options.max_cycle_len < 3) fail("max_cycle_len must be at least 3", "options.max_cycle_len");
    }
    if (opts["tbar_policy"]) {
      try {
        sc.options.tbar_policy = parse_tbar_policy(as_string(opts["tbar_policy"], "options.tbar_policy"));
      } catch (const InputError& e) {
        fail(e.what(), "options.tbar_policy");
      }
    }
  }
  // Surface remaining spec-level problems (mixed formula orientation and the like).
  try {
    (void)sc.spec();
  } catch (const InputError& e) {
    fail(e.what(), "tasks");
  }
  return sc;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_vec(YAML::Emitter& out, const Vec& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index k = 0; k < v.size(); ++k) out << v[k];
  out << YAML::EndSeq;
}

void emit_pair(YAML::Emitter& out, double a, double b) {
  out << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
}

void emit_edge(YAML::Emitter& out, const Edge& e) {
  out << YAML::Flow << YAML::BeginSeq << e.from << e.to << YAML::EndSeq;
}

void emit_nodes(YAML::Emitter& out, const std::vector<AgentId>& nodes) {
  out << YAML::Flow << YAML::BeginSeq;
  for (auto a : nodes) out << a;
  out << YAML::EndSeq;
}

void emit_predicate(YAML::Emitter& out, const PredicateFunction& pf) {
  out << YAML::Flow << YAML::BeginMap;
  if (const auto* b = std::get_if<Ball>(&pf.shape())) {
    out << YAML::Key << "type" << YAML::Value << "ball" << YAML::Key << "center" << YAML::Value;
    emit_vec(out, b->center);
    out << YAML::Key << "radius" << YAML::Value << b->radius;
  } else if (const auto* r = std::get_if<RectRegion>(&pf.shape())) {
    out << YAML::Key << "type" << YAML::Value << "rect" << YAML::Key << "center" << YAML::Value;
    emit_vec(out, r->rect.center());
    out << YAML::Key << "size" << YAML::Value;
    emit_vec(out, r->rect.size());
  } else {
    out << YAML::Key << "type" << YAML::Value << "halfspaces" << YAML::Key << "rows" << YAML::Value
        << YAML::BeginSeq;
    for (const auto& row : std::get<Polytope>(pf.shape()).rows) {
      out << YAML::BeginMap << YAML::Key << "normal" << YAML::Value;
      emit_vec(out, row.normal);
      out << YAML::Key << "offset" << YAML::Value << row.offset << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
}

YAML::Emitter& make_emitter(YAML::Emitter& out) {
  out.SetDoublePrecision(17);
  out.SetFloatPrecision(17);
  return out;
}

}  // namespace

Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

std::string render_scenario(const Scenario& sc) {
  YAML::Emitter out;
  make_emitter(out);
  out << YAML::BeginMap;
  out << YAML::Key << "schema" << YAML::Value << kScenarioSchema;
  out << YAML::Key << "agents" << YAML::Value << sc.num_agents;
  out << YAML::Key << "dimension" << YAML::Value << sc.dimension;
  out << YAML::Key << "communication" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : sc.communication) emit_edge(out, e);
  out << YAML::EndSeq;
  out << YAML::Key << "tasks" << YAML::Value << YAML::BeginSeq;
  for (const auto& st : sc.tasks) {
    const auto& t = st.task;
    out << YAML::BeginMap;
    if (!t.name.empty()) out << YAML::Key << "name" << YAML::Value << t.name;
    out << YAML::Key << "subject" << YAML::Value;
    if (t.subject.is_pair()) emit_edge(out, t.subject.edge());
    else out << t.subject.agent();
    out << YAML::Key << "operator" << YAML::Value << to_string(t.op);
    out << YAML::Key << "interval" << YAML::Value;
    emit_pair(out, t.interval.start, t.interval.end);
    out << YAML::Key << "predicate" << YAML::Value;
    emit_predicate(out, t.predicate);
    if (st.tbar) out << YAML::Key << "tbar" << YAML::Value << *st.tbar;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "options" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "nu_min" << YAML::Value << sc.options.nu_min;
  out << YAML::Key << "tol" << YAML::Value << sc.options.tol;
  out << YAML::Key << "max_cycle_len" << YAML::Value << sc.options.max_cycle_len;
  out << YAML::Key << "tbar_policy" << YAML::Value << to_string(sc.options.tbar_policy);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::vector<PathParams> parse_params(const std::string& text) {
  const YAML::Node root = load_yaml(text);
  check_schema(root, {kParamsSchema, kReportSchema});
  const auto paths = require(root, "paths", "");
  if (!paths.IsSequence()) fail("expected a list of paths", "paths");
  std::vector<PathParams> out;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto p = index("paths", k);
    const auto& pn = paths[k];
    if (!pn.IsMap()) fail("expected a path mapping", p);
    PathParams pp;
    const auto nodes = require(pn, "path", p);
    if (!nodes.IsSequence() || nodes.size() < 2) fail("expected a node list with at least two nodes", join(p, "path"));
    for (std::size_t q = 0; q < nodes.size(); ++q) pp.path.push_back(as_int(nodes[q], index(join(p, "path"), q)));
    if (pn["conjunct"]) {
      const int c = as_int(pn["conjunct"], join(p, "conjunct"));
      if (c < 0) fail("conjunct index must be non-negative", join(p, "conjunct"));
      pp.conjunct = static_cast<std::size_t>(c);
    }
    const auto edges = require(pn, "edges", p);
    const auto ep = join(p, "edges");
    if (!edges.IsSequence()) fail("expected a list of edge boxes", ep);
    for (std::size_t q = 0; q < edges.size(); ++q) {
      const auto eq = index(ep, q);
      if (!edges[q].IsMap()) fail("expected an edge mapping", eq);
      PathParams::EdgeBox box;
      box.edge = as_edge(require(edges[q], "edge", eq), join(eq, "edge"));
      box.center = as_vec(require(edges[q], "center", eq), -1, join(eq, "center"));
      box.size = as_vec(require(edges[q], "size", eq), static_cast<int>(box.center.size()), join(eq, "size"));
      pp.edges.push_back(std::move(box));
    }
    out.push_back(std::move(pp));
  }
  return out;
}

std::vector<PathParams> load_params(const std::string& path) { return parse_params(read_file(path)); }

namespace {

std::string nodes_text(const std::vector<AgentId>& nodes) {
  std::string s = "[";
  for (std::size_t k = 0; k < nodes.size(); ++k) s += (k ? "," : "") + std::to_string(nodes[k]);
  return s + "]";
}

void collect_blocks(const RectExpr& e, std::set<std::size_t>& out) {
  for (const auto& t : e.terms) out.insert(t.block);
}

}  // namespace

ParamsCheck check_params(const Scenario& scenario, const std::vector<PathParams>& params, double tol) {
  const auto spec = scenario.spec();
  const auto gc = scenario.communication_graph();
  const auto opts = scenario.decompose_options();
  const auto plan = plan_decomposition(spec, gc, opts);
  ConflictOptions copts;
  copts.max_cycle_len = opts.max_cycle_len;
  copts.max_combinations = opts.max_combinations;
  const auto res = resolution_constraints(plan.bundles, plan.rewritten_graph, copts);
  const auto prob = assemble_problem(plan, res.constraints, opts);
  const int n = plan.dimension;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(plan.parameters.num_variables()));
  std::set<std::size_t> supplied;
  ParamsCheck out;
  for (const auto& pp : params) {
    auto reversed = pp.path;
    std::reverse(reversed.begin(), reversed.end());
    const DecomposedConjunct* fam = nullptr;
    for (const auto& f : plan.families)
      if ((f.path.nodes == pp.path || f.path.nodes == reversed) && f.conjunct == pp.conjunct) fam = &f;
    if (!fam) {
      out.unmatched.push_back(nodes_text(pp.path));
      continue;
    }
    for (const auto& box : pp.edges) {
      if (box.center.size() != n) throw_input("edge box dimension does not match the scenario");
      bool placed = false;
      for (const auto& st : fam->subtasks) {
        if (st.edge == box.edge || st.edge == box.edge.reversed()) {
          const Vec c = st.edge == box.edge ? box.center : Vec(-box.center);
          plan.parameters.set(x, st.block, c, box.size);
          supplied.insert(st.block);
          placed = true;
        }
      }
      if (!placed)
        throw_input(fmt::format("edge {} is not on path {}", to_string(box.edge), nodes_text(fam->path.nodes)));
    }
  }
  out.min_margin = std::numeric_limits<double>::infinity();
  const auto per_block = static_cast<std::size_t>(2 * n);
  for (const auto& c : prob.constraints) {
    std::set<std::size_t> blocks;
    if (const auto* vi = std::get_if<VertexInclusion>(&c.body)) collect_blocks(vi->rect, blocks);
    else if (const auto* bb = std::get_if<BoxInBox>(&c.body)) {
      collect_blocks(bb->inner, blocks);
      collect_blocks(bb->outer, blocks);
    } else {
      blocks.insert(std::get<LowerBound>(c.body).variable / per_block);
    }
    const bool ready = std::all_of(blocks.begin(), blocks.end(), [&](std::size_t b) { return supplied.count(b) > 0; });
    if (!ready) {
      ++out.skipped;
      continue;
    }
    const double m = constraint_margin(prob, c, x);
    out.evaluated.push_back({c.label, c.kind, m});
    out.min_margin = std::min(out.min_margin, m);
  }
  out.passed = out.unmatched.empty() && out.min_margin >= -tol;
  return out;
}

std::string render_report(const DecompositionResult& r) {
  YAML::Emitter out;
  make_emitter(out);
  const auto& sol = r.solution;
  out << YAML::BeginMap;
  out << YAML::Key << "schema" << YAML::Value << kReportSchema;
  out << YAML::Key << "status" << YAML::Value << solver::to_string(sol.status);
  out << YAML::Key << "objective" << YAML::Value << sol.objective;
  out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "outer_iterations" << YAML::Value << sol.outer_iterations;
  out << YAML::Key << "newton_steps" << YAML::Value << sol.newton_steps;
  out << YAML::Key << "max_violation" << YAML::Value << sol.max_violation;
  out << YAML::Key << "kkt_residual" << YAML::Value << sol.kkt_residual;
  out << YAML::Key << "duality_gap" << YAML::Value << sol.duality_gap;
  out << YAML::EndMap;
  out << YAML::Key << "census" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "type1" << YAML::Value << r.census.type1;
  out << YAML::Key << "type2" << YAML::Value << r.census.type2;
  out << YAML::Key << "type3" << YAML::Value << r.census.type3;
  out << YAML::Key << "type4" << YAML::Value << r.census.type4;
  out << YAML::Key << "cycles_checked" << YAML::Value << r.census.cycles_checked;
  out << YAML::Key << "combinations_checked" << YAML::Value << r.census.combinations_checked;
  out << YAML::Key << "max_cycle_len" << YAML::Value << r.census.max_cycle_len;
  out << YAML::EndMap;
  out << YAML::Key << "constraints" << YAML::Value << YAML::BeginSeq;
  for (std::size_t k = 0; k < r.problem.constraints.size(); ++k) {
    const auto& c = r.problem.constraints[k];
    if (c.kind == ConstraintKind::kLowerBound) continue;
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << to_string(c.kind) << YAML::Key
        << "label" << YAML::Value << c.label << YAML::Key << "margin" << YAML::Value << r.constraint_margins.at(k)
        << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "paths" << YAML::Value << YAML::BeginSeq;
  for (std::size_t f = 0; f < r.families.size(); ++f) {
    const auto& fam = r.families[f];
    out << YAML::BeginMap;
    out << YAML::Key << "task" << YAML::Value << fam.label;
    out << YAML::Key << "conjunct" << YAML::Value << fam.conjunct;
    out << YAML::Key << "operator" << YAML::Value << to_string(fam.origin.op);
    out << YAML::Key << "interval" << YAML::Value;
    emit_pair(out, fam.origin.interval.start, fam.origin.interval.end);
    out << YAML::Key << "path" << YAML::Value;
    emit_nodes(out, fam.path.nodes);
    out << YAML::Key << "inclusion_margin" << YAML::Value << r.inclusion_margins.at(f);
    out << YAML::Key << "edges" << YAML::Value << YAML::BeginSeq;
    for (const auto& st : fam.subtasks) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "edge" << YAML::Value;
      emit_edge(out, st.edge);
      out << YAML::Key << "interval" << YAML::Value;
      emit_pair(out, st.interval.start, st.interval.end);
      out << YAML::Key << "center" << YAML::Value;
      emit_vec(out, st.solved->center());
      out << YAML::Key << "size" << YAML::Value;
      emit_vec(out, st.solved->size());
      out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "rewritten_graph" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "edges" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& e : r.rewritten_graph.edges()) emit_edge(out, e);
  out << YAML::EndSeq;
  out << YAML::Key << "self_loops" << YAML::Value;
  emit_nodes(out, r.rewritten_graph.self_loops());
  out << YAML::EndMap;
  out << YAML::Key << "cycles" << YAML::Value << YAML::BeginSeq;
  for (const auto& c : r.cycles) emit_nodes(out, c.nodes);
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string render_table(const DecompositionResult& r) {
  std::string s = fmt::format("status {}  objective {:.2f}  max violation {:.2e}\n",
                              solver::to_string(r.solution.status), r.solution.objective,
                              r.solution.max_violation);
  s += fmt::format("{:<10} {:<12} {:<8} {:<16} {:<20} {:<16}\n", "task", "path", "edge", "interval", "p", "nu");
  auto vec2 = [](const Vec& v) {
    std::string t = "[";
    for (Eigen::Index k = 0; k < v.size(); ++k) t += fmt::format("{}{:.2f}", k ? ", " : "", v[k]);
    return t + "]";
  };
  for (const auto& fam : r.families) {
    for (const auto& st : fam.subtasks) {
      s += fmt::format("{:<10} {:<12} {:<8} {:<16} {:<20} {:<16}\n", fam.label, nodes_text(fam.path.nodes),
                       to_string(st.edge), fmt::format("[{:.2f}, {:.2f}]", st.interval.start, st.interval.end),
                       vec2(st.solved->center()), vec2(st.solved->size()));
    }
  }
  s += fmt::format("conflict rows: type1 {} type2 {} type3 {} type4 {} ({} cycles, {} combinations)\n",
                   r.census.type1, r.census.type2, r.census.type3, r.census.type4, r.census.cycles_checked,
                   r.census.combinations_checked);
  return s;
}

}  // namespace stldecomp
