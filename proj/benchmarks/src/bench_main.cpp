#include <benchmark/benchmark.h>

#include "ebpoisson/cases.hpp"
#include "ebpoisson/grid.hpp"
#include "ebpoisson/rhs.hpp"
#include "ebpoisson/scheme.hpp"
#include "ebpoisson/solver.hpp"

namespace {

using namespace ebp;

NodeClassification starfish_grid(int nodes) {
  const TestCase tc = case_2d();
  return classify(Mesh::box(2, tc.domain_lo, tc.domain_hi, nodes), tc.geometry);
}

void BM_Classify(benchmark::State& state) {
  const TestCase tc = case_2d();
  const Mesh mesh = Mesh::box(2, -1.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify(mesh, tc.geometry).num_interior());
}
BENCHMARK(BM_Classify)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const TestCase tc = case_2d();
  const auto cls = starfish_grid(static_cast<int>(state.range(0)));
  const SchemeKind scheme = state.range(1) ? SchemeKind::quadratic() : SchemeKind::linear();
  for (auto _ : state) benchmark::DoNotOptimize(assemble(cls, scheme, tc.exact_phi).vals.size());
}
BENCHMARK(BM_Assemble)->Args({161, 0})->Args({161, 1})->Unit(benchmark::kMillisecond);

void BM_CicDeposit(benchmark::State& state) {
  const TestCase tc = case_2d();
  const auto cls = starfish_grid(151);
  const auto level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_rhs(tc, cls, RhsMode::sampled(level)).values);
}
BENCHMARK(BM_CicDeposit)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const TestCase tc = case_2d();
  const auto cls = starfish_grid(static_cast<int>(state.range(0)));
  const auto problem = assemble(cls, SchemeKind::linear(), tc.exact_phi, build_rhs(tc, cls, RhsMode::exact()));
  SolveOptions opt;
  opt.method = static_cast<SolveOptions::Method>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve(problem.system, problem.rhs_vector, opt).phi);
  state.SetLabel(method_name(opt.method));
}
BENCHMARK(BM_Solve)
    ->Args({161, static_cast<int>(SolveOptions::Method::DirectBanded)})
    ->Args({161, static_cast<int>(SolveOptions::Method::ConjugateGradient)})
    ->Args({161, static_cast<int>(SolveOptions::Method::StabilizedBiCG)})
    ->Unit(benchmark::kMillisecond);

void BM_Solve3d(benchmark::State& state) {
  const TestCase tc = case_3d();
  const auto cls = classify(Mesh::box(3, 0.0, 1.0, static_cast<int>(state.range(0))), tc.geometry);
  const auto problem = assemble(cls, SchemeKind::quadratic(), tc.exact_phi, build_rhs(tc, cls, RhsMode::exact()));
  for (auto _ : state) benchmark::DoNotOptimize(solve(problem.system, problem.rhs_vector, {}, 3).phi);
}
BENCHMARK(BM_Solve3d)->Arg(51)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
