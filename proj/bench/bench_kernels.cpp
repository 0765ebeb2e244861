#include <benchmark/benchmark.h>

#include <random>

#include "dkg/dynamics.hpp"
#include "dkg/fft.hpp"
#include "dkg/kernels.hpp"
#include "dkg/multipliers.hpp"

using namespace dkg;

namespace {

std::vector<cplx> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

// Serial reference and OpenMP variant side by side; arg 0 picks the grid side.
template <bool Par>
void BM_PotentialKick(benchmark::State& st) {
  GridSpec g{int(st.range(0)), 6.28};
  auto psi = noise(4 * g.size(), 1);
  std::vector<double> phi(g.size(), 0.3);
  for (auto _ : st) {
    if constexpr (Par)
      kernels::omp::potential_kick(psi.data(), phi.data(), g.size(), 0.01);
    else
      kernels::serial::potential_kick(psi.data(), phi.data(), g.size(), 0.01);
    benchmark::DoNotOptimize(psi.data());
  }
  st.SetItemsProcessed(st.iterations() * g.size());
}

template <bool Par>
void BM_DiracDensity(benchmark::State& st) {
  GridSpec g{int(st.range(0)), 6.28};
  auto psi = noise(4 * g.size(), 2);
  std::vector<cplx> out(g.size());
  for (auto _ : st) {
    if constexpr (Par)
      kernels::omp::dirac_density(psi.data(), psi.data(), out.data(), g.size());
    else
      kernels::serial::dirac_density(psi.data(), psi.data(), out.data(), g.size());
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * g.size());
}

template <bool Par>
void BM_SpinorSymbol(benchmark::State& st) {
  GridSpec g{int(st.range(0)), 6.28};
  auto psi = noise(4 * g.size(), 3);
  auto act = [](const Vec3& xi, cplx* v) {
    double b = bracket(xi, 1.0);
    for (int c = 0; c < 4; ++c) v[c] *= std::polar(1.0, 1e-3 * b);
  };
  for (auto _ : st) {
    if constexpr (Par)
      kernels::omp::apply_spinor(g, {0, 0, 0}, psi.data(), act);
    else
      kernels::serial::apply_spinor(g, {0, 0, 0}, psi.data(), act);
    benchmark::DoNotOptimize(psi.data());
  }
  st.SetItemsProcessed(st.iterations() * g.size());
}

template <bool Par>
void BM_PointwiseL4(benchmark::State& st) {
  GridSpec g{int(st.range(0)), 6.28};
  auto psi = noise(4 * g.size(), 4);
  for (auto _ : st) {
    double s = Par ? kernels::omp::sum_pointwise_pow(psi.data(), g.size(), 4, 4.0)
                   : kernels::serial::sum_pointwise_pow(psi.data(), g.size(), 4, 4.0);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(st.iterations() * g.size());
}

void BM_Fft3(benchmark::State& st) {
  const int n = int(st.range(0));
  auto a = noise(std::size_t(n) * n * n, 5);
  for (auto _ : st) {
    fft3(a.data(), n, -1);
    fft3(a.data(), n, +1);
    benchmark::DoNotOptimize(a.data());
  }
}

void BM_StrangStep(benchmark::State& st) {
  GridSpec g{int(st.range(0)), 6.28};
  Field psi(g, 4), phi(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 x = g.node(i);
    double e = 0.1 * std::exp(-0.5 * dot(x, x));
    for (int c = 0; c < 4; ++c) psi.comp(c)[i] = e;
    phi.data[i] = e;
  }
  DKGState s(psi, phi, 0.0, 1.0, 1.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.nt = 10;
  for (auto _ : st) {
    s = step(s, cfg);
    benchmark::DoNotOptimize(s.psi.data.data());
  }
}

}  // namespace

BENCHMARK(BM_PotentialKick<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_PotentialKick<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_DiracDensity<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_DiracDensity<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_SpinorSymbol<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_SpinorSymbol<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_PointwiseL4<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_PointwiseL4<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_Fft3)->Arg(32)->Arg(64);
BENCHMARK(BM_StrangStep)->Arg(32);

BENCHMARK_MAIN();
