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

// Timings for the main pipeline stages on the 8-agent formation scenario and
// on synthetic geometry inputs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "stldecomp/conflict.hpp"
#include "stldecomp/decomposer.hpp"
#include "stldecomp/geometry.hpp"
#include "stldecomp/scenario.hpp"
#include "stldecomp/validation.hpp"

namespace stldecomp {
namespace {

const Scenario& formation() {
  static const Scenario s = load_scenario(STLDECOMP_SOURCE_DIR "/scenarios/formation_8agents.scn");
  return s;
}

void BM_Plan(benchmark::State& state) {
  const auto& s = formation();
  const auto spec = s.spec();
  const auto gc = s.communication_graph();
  const auto opts = s.decompose_options();
  for (auto _ : state) benchmark::DoNotOptimize(plan_decomposition(spec, gc, opts));
}
BENCHMARK(BM_Plan);

void BM_Resolution(benchmark::State& state) {
  const auto& s = formation();
  const auto opts = s.decompose_options();
  const auto plan = plan_decomposition(s.spec(), s.communication_graph(), opts);
  ConflictOptions co;
  co.max_cycle_len = opts.max_cycle_len;
  for (auto _ : state)
    benchmark::DoNotOptimize(resolution_constraints(plan.bundles, plan.rewritten_graph, co));
}
BENCHMARK(BM_Resolution);

void BM_Solve(benchmark::State& state) {
  const auto& s = formation();
  const auto opts = s.decompose_options();
  const auto plan = plan_decomposition(s.spec(), s.communication_graph(), opts);
  ConflictOptions co;
  co.max_cycle_len = opts.max_cycle_len;
  const auto res = resolution_constraints(plan.bundles, plan.rewritten_graph, co);
  const auto rows = lower(assemble_problem(plan, res.constraints, opts));
  for (auto _ : state) benchmark::DoNotOptimize(solver::solve(rows, opts.solver));
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const auto& s = formation();
  const auto spec = s.spec();
  const auto gc = s.communication_graph();
  const auto opts = s.decompose_options();
  for (auto _ : state) benchmark::DoNotOptimize(decompose(spec, gc, opts));
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  const auto& s = formation();
  const auto result = decompose(s.spec(), s.communication_graph(), s.decompose_options());
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_trajectory(result));
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond);

std::vector<HyperRect> random_rects(int n, int count) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> c(-10, 10), w(0.1, 5);
  std::vector<HyperRect> out;
  for (int k = 0; k < count; ++k) {
    Vec center(n), size(n);
    for (int d = 0; d < n; ++d) {
      center[d] = c(rng);
      size[d] = w(rng);
    }
    out.emplace_back(center, size);
  }
  return out;
}

void BM_MinkowskiSum(benchmark::State& state) {
  const auto rects = random_rects(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(minkowski_sum(rects));
}
BENCHMARK(BM_MinkowskiSum)->Arg(2)->Arg(3)->Arg(6);

void BM_SuperlevelMargin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rect = random_rects(n, 1).front();
  const PredicateFunction ball = Ball{Vec::Zero(n), 20.0};
  for (auto _ : state) benchmark::DoNotOptimize(superlevel_margin(rect, ball));
}
BENCHMARK(BM_SuperlevelMargin)->Arg(2)->Arg(3)->Arg(6)->Arg(10);

}  // namespace
}  // namespace stldecomp

BENCHMARK_MAIN();
