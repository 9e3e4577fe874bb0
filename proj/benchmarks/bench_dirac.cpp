#include <benchmark/benchmark.h>

#include "dirac/oracle.hpp"
#include "dirac/stokes.hpp"

using namespace dirac;

namespace {

const ModelSystem& model() {
  static const ModelSystem m{Mu(0.3)};
  return m;
}

const Potential& potential() {
  static const Potential q = Potential::decay_pow(1.0, 1.0, 0.7);
  return q;
}

}  // namespace

static void BM_SeriesCoefficients(benchmark::State& st) {
  const Mu mu(0.3);
  for (auto _ : st) benchmark::DoNotOptimize(compute_series(mu, Normalization{}, int(st.range(0))));
}
BENCHMARK(BM_SeriesCoefficients)->Arg(16)->Arg(64);

static void BM_SeriesEval(benchmark::State& st) {
  const auto& M = model();
  const BranchPoint x(double(st.range(0)), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(M.C(x));
}
BENCHMARK(BM_SeriesEval)->Arg(1)->Arg(5);

static void BM_JostConstruct(benchmark::State& st) {
  const Mu mu(0.3);
  for (auto _ : st) benchmark::DoNotOptimize(JostSolution(mu));
}
BENCHMARK(BM_JostConstruct)->Unit(benchmark::kMillisecond);

static void BM_JostEval(benchmark::State& st) {
  const auto& M = model();
  const BranchPoint x(8.0, 0.3);
  for (auto _ : st) benchmark::DoNotOptimize(M.e(x));
}
BENCHMARK(BM_JostEval)->Unit(benchmark::kMicrosecond);

static void BM_Gamma0(benchmark::State& st) {
  const Mu mu(0.3);
  for (auto _ : st) benchmark::DoNotOptimize(compute_gamma0(mu, Normalization{}));
}
BENCHMARK(BM_Gamma0)->Unit(benchmark::kMillisecond);

static void BM_Volterra(benchmark::State& st) {
  const Cplx l(0.0, double(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(VolterraSolution(1.0, l, potential(), model()));
}
BENCHMARK(BM_Volterra)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Birkhoff(benchmark::State& st) {
  const Cplx l(0.0, double(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(BirkhoffSolution(l, potential(), model()));
}
BENCHMARK(BM_Birkhoff)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_GammaLambda(benchmark::State& st) {
  const Cplx l(0.0, double(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(compute_gamma_lambda(l, potential(), model()));
}
BENCHMARK(BM_GammaLambda)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_RungeKutta(benchmark::State& st) {
  const auto& M = model();
  const auto sys = OdeSystem::model(M.mu());
  const Mat2 Y0 = M.C(BranchPoint(0.1, 0.0));
  for (auto _ : st) benchmark::DoNotOptimize(integrate(sys, ContourSpec{{0.1, 5.0}}, Y0));
}
BENCHMARK(BM_RungeKutta)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
