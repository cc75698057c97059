#include <benchmark/benchmark.h>

#include "splitflow/flows.hpp"
#include "splitflow/integrator.hpp"
#include "splitflow/sample_fields.hpp"
#include "splitflow/spectral.hpp"

using namespace splitflow;

namespace {

ProblemSpec gpe(int points, int dim) {
  ProblemSpec p;
  p.equation = EquationKind::schrodinger();
  p.potential = {2, 1.0};
  p.theta = 1.0;
  p.grid = build_grid(dim, 10.0, points);
  return p;
}

void BM_Laplacian(benchmark::State& state) {
  const auto g = build_grid(static_cast<int>(state.range(1)), 10.0, static_cast<int>(state.range(0)));
  const ComplexField u = gaussian_initial_state(g);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_laplacian(u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g->size()));
}
BENCHMARK(BM_Laplacian)->Args({256, 1})->Args({4096, 1})->Args({128, 2})->Args({32, 3});

void BM_SchemeStep(benchmark::State& state, const char* name) {
  const ProblemSpec p = gpe(static_cast<int>(state.range(0)), 1);
  const OperatorContext ctx(p);
  const SplittingScheme scheme = make_scheme(name);
  const FlowStrategy strategy = default_strategy(Equation::schrodinger);
  ComplexField u = gaussian_initial_state(p.grid);
  for (auto _ : state) u = splitting_step(u, scheme, 1e-3, strategy, ctx);
  benchmark::DoNotOptimize(u);
}
BENCHMARK_CAPTURE(BM_SchemeStep, strang, "strang")->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(BM_SchemeStep, yoshida, "yoshida")->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(BM_SchemeStep, chin_modified, "chin_modified")->Arg(256)->Arg(4096);

// Closed-form modified flow against the RK4 fallback for the same stage
void BM_ModifiedClosedForm(benchmark::State& state) {
  const ProblemSpec p = gpe(256, 1);
  const OperatorContext ctx(p);
  const ComplexField v = random_smooth_field(p.grid);
  for (auto _ : state) benchmark::DoNotOptimize(gpe_modified_flow(v, ctx, 2.0 / 3.0, -1.0 / 72.0, 1e-2));
}
BENCHMARK(BM_ModifiedClosedForm);

void BM_ModifiedRk4(benchmark::State& state) {
  const ProblemSpec p = gpe(256, 1);
  const OperatorContext ctx(p);
  const ComplexField v = random_smooth_field(p.grid);
  const int substeps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4_combined_flow(v, ctx, 2.0 / 3.0, -1.0 / 72.0, 1e-2, substeps));
  }
}
BENCHMARK(BM_ModifiedRk4)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
