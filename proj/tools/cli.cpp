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


#include "cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "stldecomp/errors.hpp"
#include "stldecomp/scenario.hpp"
#include "stldecomp/validation.hpp"

namespace stldecomp::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct Overrides {
  std::optional<double> tol;
  std::optional<double> nu_min;
  std::optional<std::string> tbar_policy;
  std::optional<int> max_cycle_len;

  DecomposeOptions apply(const Scenario& sc) const {
    DecomposeOptions o = sc.decompose_options();
    if (tol) o.tol = *tol;
    if (nu_min) o.nu_min = *nu_min;
    if (tbar_policy) o.tbar_policy = parse_tbar_policy(*tbar_policy);
    if (max_cycle_len) o.max_cycle_len = *max_cycle_len;
    validate(o);
    return o;
  }
};

void add_overrides(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--tol", ov.tol, "Solver tolerance");
  cmd->add_option("--nu-min", ov.nu_min, "Lower bound on every box side");
  cmd->add_option("--tbar-policy", ov.tbar_policy, "Instant for eventually sub-tasks")
      ->check(CLI::IsMember({"midpoint", "start", "end"}));
  cmd->add_option("--max-cycle-len", ov.max_cycle_len, "Longest cycle checked for conflicts");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

int decompose_cmd(const std::string& scenario, const std::string& out_path, const Overrides& ov,
                  std::ostream& out) {
  const auto sc = load_scenario(scenario);
  const auto opts = ov.apply(sc);
  const auto result = decompose(sc.spec(), sc.communication_graph(), opts);
  const auto report = render_report(result);
  if (out_path.empty()) {
    out << report;
  } else {
    write_file(out_path, report);
    out << render_table(result);
  }
  return result.ok() && result.solution.max_violation <= opts.tol ? kOk : kFailed;
}

int check_cmd(const std::string& scenario, const std::string& params, std::optional<double> tol,
              std::ostream& out) {
  const auto sc = load_scenario(scenario);
  const auto check = check_params(sc, load_params(params), tol.value_or(sc.options.tol));
  for (const auto& c : check.evaluated)
    out << fmt::format("{:<12} {:>24.17g}  {}\n", to_string(c.kind), c.margin, c.label);
  for (const auto& u : check.unmatched) out << fmt::format("unmatched path {}\n", u);
  out << fmt::format("evaluated {} skipped {} min_margin {:.17g} {}\n", check.evaluated.size(), check.skipped,
                     check.min_margin, check.passed ? "PASS" : "FAIL");
  return check.passed ? kOk : kFailed;
}

int monitor_cmd(const std::string& scenario, const std::string& trajectory, const std::string& which,
                const Overrides& ov, std::ostream& out) {
  const auto sc = load_scenario(scenario);
  std::ifstream in(trajectory);
  if (!in) throw InputError("cannot open " + trajectory);
  const auto traj = read_trajectory_csv(in);
  if (traj.num_agents() != sc.num_agents || traj.dimension() != sc.dimension)
    throw InputError(fmt::format("trajectory has {} agents of dimension {}, scenario needs {} of dimension {}",
                                 traj.num_agents(), traj.dimension(), sc.num_agents, sc.dimension));
  GlobalSpec spec = sc.spec();
  if (which == "rewritten") spec = decompose(spec, sc.communication_graph(), ov.apply(sc)).rewritten;
  const auto breakdown = robustness_breakdown(spec, traj, which);
  const double rho = robustness(spec, traj);
  for (const auto& b : breakdown) out << fmt::format("{:>24.17g}  {}\n", b.value, b.label);
  out << fmt::format("robustness {:.17g}\n", rho);
  return rho > 0.0 ? kOk : kFailed;
}

int validate_cmd(const std::string& scenario, double dt, const std::string& traj_out, const Overrides& ov,
                 std::ostream& out) {
  const auto sc = load_scenario(scenario);
  const auto spec = sc.spec();
  const auto result = decompose(spec, sc.communication_graph(), ov.apply(sc));
  out << render_table(result);
  if (!result.ok()) {
    out << "decomposition did not converge\n";
    return kFailed;
  }
  SynthesisOptions so;
  so.dt = dt;
  const auto traj = synthesize_trajectory(result, so);
  if (!traj_out.empty()) {
    std::ofstream f(traj_out);
    if (!f) throw InputError("cannot write " + traj_out);
    write_trajectory_csv(f, traj);
  }
  const auto rep = verify_implication(traj, result.rewritten, spec);
  out << fmt::format("rewritten robustness {:.17g}\noriginal robustness {:.17g}\nverdict {}\n", rep.rewritten,
                     rep.original, to_string(rep.verdict));
  return rep.verdict == Verdict::kHolds ? kOk : kFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose collaborative STL tasks over a communication graph"};
  app.require_subcommand(1);
  std::string scenario, out_path, params, trajectory, which = "original", traj_out;
  std::optional<double> check_tol;
  double dt = 0.1;
  Overrides ov;

  auto* dec = app.add_subcommand("decompose", "Solve the decomposition program and write a report");
  dec->add_option("--scenario", scenario, "Scenario file")->required();
  dec->add_option("--out", out_path, "Report file (report goes to stdout when omitted)");
  add_overrides(dec, ov);

  auto* chk = app.add_subcommand("check", "Evaluate constraint margins of externally supplied parameters");
  chk->add_option("--scenario", scenario, "Scenario file")->required();
  chk->add_option("--params", params, "Params file or report")->required();
  chk->add_option("--tol", check_tol, "Pass threshold on margins");

  auto* mon = app.add_subcommand("monitor", "Robustness of a trajectory CSV");
  mon->add_option("--scenario", scenario, "Scenario file")->required();
  mon->add_option("--trajectory", trajectory, "Trajectory CSV")->required();
  mon->add_option("--which", which, "Specification to monitor")->check(CLI::IsMember({"original", "rewritten"}));
  add_overrides(mon, ov);

  auto* val = app.add_subcommand("validate", "Decompose, synthesize a trajectory and check the implication");
  val->add_option("--scenario", scenario, "Scenario file")->required();
  val->add_option("--dt", dt, "Synthesis sample step");
  val->add_option("--trajectory-out", traj_out, "Write the synthesized trajectory CSV");
  add_overrides(val, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  try {
    if (dec->parsed()) return decompose_cmd(scenario, out_path, ov, out);
    if (chk->parsed()) return check_cmd(scenario, params, check_tol, out);
    if (mon->parsed()) return monitor_cmd(scenario, trajectory, which, ov, out);
    return validate_cmd(scenario, dt, traj_out, ov, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace stldecomp::cli
