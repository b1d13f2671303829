#include <benchmark/benchmark.h>

#include "zetacusp/heat_terms.hpp"
#include "zetacusp/rootsys.hpp"
#include "zetacusp/specfun.hpp"
#include "zetacusp/zeta_functions.hpp"

namespace {

using namespace zetacusp;

LengthSpectrum bench_spectrum() {
  return synthesize_spectrum(64, 0.8, 1.05, 19, 2);
}

void digamma_complex(benchmark::State& state) {
  Complex z{0.3, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(digamma(z));
    z += Complex(1e-9, 0.0);  // defeat value caching across iterations
  }
}
BENCHMARK(digamma_complex);

void hyperbolic_even(benchmark::State& state) {
  const LengthSpectrum sp = bench_spectrum();
  const double t = 0.5;
  for (auto _ : state)
    benchmark::DoNotOptimize(hyperbolic_term(t, sp, 2, Parity::even));
}
BENCHMARK(hyperbolic_even);

void zeta_odd_series(benchmark::State& state) {
  const LengthSpectrum sp = bench_spectrum();
  const Complex s{2.5, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(zeta_odd(s, sp, 2));
}
BENCHMARK(zeta_odd_series);

void unipotent_quadrature(benchmark::State& state) {
  ManifoldConfig cfg;
  cfg.n = 3;
  cfg.kappa = 2;
  cfg.c_T1 = 0.2;
  for (auto _ : state)
    benchmark::DoNotOptimize(unipotent_term(0.05, cfg, Parity::even));
}
BENCHMARK(unipotent_quadrature);

}  // namespace

BENCHMARK_MAIN();
