// Microbenchmarks for the hot paths: polynomial products, variational
// derivatives, nilpotency sweeps, and the master-equation check.
#include <benchmark/benchmark.h>

#include "jetvar/brst.hpp"
#include "jetvar/calculus.hpp"
#include "jetvar/models.hpp"

using namespace jetvar;

namespace {

void BM_PolyMultiply(benchmark::State& state) {
  TheoryModel m = builtin("yang-mills-su2");
  const GradedPoly& L = m.lagrangian;
  for (auto _ : state) {
    GradedPoly p = L * L;
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_PolyMultiply);

void BM_TotalDerivative(benchmark::State& state) {
  TheoryModel m = builtin("yang-mills-su2");
  const GradedPoly& L = m.lagrangian;
  for (auto _ : state) {
    GradedPoly p = total_derivative(L, 0, m.ctx);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_TotalDerivative);

void BM_EulerLagrangeYangMills(benchmark::State& state) {
  TheoryModel m = builtin("yang-mills-su2");
  for (auto _ : state) {
    EulerLagrangeResult el = field_euler_lagrange(m);
    benchmark::DoNotOptimize(el);
  }
}
BENCHMARK(BM_EulerLagrangeYangMills);

void BM_NoetherIdentityYangMills(benchmark::State& state) {
  TheoryModel m = builtin("yang-mills-su2");
  EulerLagrangeResult el = field_euler_lagrange(m);
  for (auto _ : state) {
    GradedPoly r = verify_ni(m, m.noether.front(), el);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_NoetherIdentityYangMills);

void BM_BrstNilpotencyChernSimons(benchmark::State& state) {
  TheoryModel m = builtin("chern-simons-3d");
  for (auto _ : state) {
    auto residuals = nilpotency_residuals(*m.brst, m.ctx);
    benchmark::DoNotOptimize(residuals);
  }
}
BENCHMARK(BM_BrstNilpotencyChernSimons);

void BM_MasterEquationYangMills(benchmark::State& state) {
  TheoryModel m = builtin("yang-mills-su2");
  for (auto _ : state) {
    bool ok = check_master_equation(*m.extended, m.antibracket_pairing(), m.ctx);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_MasterEquationYangMills);

}  // namespace

BENCHMARK_MAIN();
