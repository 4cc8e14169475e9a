#include "mskrock/chebyshev.hpp"
#include "mskrock/refined_heat.hpp"
#include "mskrock/spectral.hpp"
#include "mskrock/stochastic.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace mskrock;

namespace {

void BM_ChebyshevT(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  double x = 1.0001;
  for (auto _ : state) benchmark::DoNotOptimize(cheb::T(s, x));
}
BENCHMARK(BM_ChebyshevT)->Arg(10)->Arg(100);

// Step benchmarks on the refined heat problem; the argument k sets delta = 2^-k.
struct Heat {
  SplitSdeProblem prob;
  Vector x, dW, out;
  double rho_F = 0.0, rho_S = 0.0;

  explicit Heat(int k)
      : prob(make_refined_heat(std::ldexp(1.0, -k), 1.0 / 16.0, 0.5)),
        x(prob.dimension(), 1.0),
        dW(prob.noise_dim(), 0.01),
        out(prob.dimension()) {
    auto radius = [&](const VectorField& f) {
      const StateMap m = [&](std::span<const double> y, std::span<double> o) { f(0.0, y, o); };
      return estimate_radius(m, x).rho * kDefaultRadiusSafety;
    };
    rho_F = radius(prob.drift.fast);
    rho_S = radius(prob.drift.slow);
  }
};

constexpr double kTau = 0.01;

void BM_MskrockStep(benchmark::State& state) {
  Heat h(static_cast<int>(state.range(0)));
  const auto p = select_stages(kTau, h.rho_F, h.rho_S);
  Workspace ws(h.prob.dimension(), h.prob.diffusion.scratch_size(h.prob.dimension()));
  for (auto _ : state) {
    mskrock_step(h.prob.drift, h.prob.diffusion, p, h.x, 0.0, h.dW, h.out, ws);
    benchmark::DoNotOptimize(h.out.data());
  }
  state.counters["s"] = p.s;
  state.counters["m"] = p.m;
}
BENCHMARK(BM_MskrockStep)->DenseRange(2, 6);

void BM_SkrockStep(benchmark::State& state) {
  Heat h(static_cast<int>(state.range(0)));
  const auto c = OuterCoefficients::make(select_outer_stages(kTau, h.rho_F + h.rho_S), kDefaultDamping);
  Workspace ws(h.prob.dimension(), h.prob.diffusion.scratch_size(h.prob.dimension()));
  for (auto _ : state) {
    skrock_step(h.prob.drift, h.prob.diffusion, c, h.x, 0.0, kTau, h.dW, h.out, ws);
    benchmark::DoNotOptimize(h.out.data());
  }
  state.counters["s"] = c.s;
}
BENCHMARK(BM_SkrockStep)->DenseRange(2, 6);

void BM_PowerMethod(benchmark::State& state) {
  Heat h(static_cast<int>(state.range(0)));
  const StateMap m = [&](std::span<const double> y, std::span<double> o) { h.prob.drift.fast(0.0, y, o); };
  const auto first = estimate_radius(m, h.x);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_radius(m, h.x, first.eigvec).rho);
}
BENCHMARK(BM_PowerMethod)->Arg(2)->Arg(6);

} // namespace

BENCHMARK_MAIN();
