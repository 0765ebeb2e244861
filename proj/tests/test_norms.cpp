#include <gtest/gtest.h>

#include <random>

#include "angular_oracle.hpp"
#include "dkg/norms.hpp"
#include "dkg/propagators.hpp"
#include "helpers.hpp"

using namespace dkg;

namespace {

constexpr double kPi = 3.14159265358979323846;

double exhaustive_variation(int n, double p, const std::vector<double>& D) {
  if (n == 1) return 0.0;
  double best = 0;
  for (unsigned mask = 0; mask < (1u << (n - 2)); ++mask) {
    double s = 0;
    int prev = 0;
    for (int j = 1; j < n; ++j) {
      if (j < n - 1 && !(mask & (1u << (j - 1)))) continue;
      s += std::pow(D[prev * n + j], p);
      prev = j;
    }
    best = std::max(best, s);
  }
  return std::pow(best, 1.0 / p);
}

std::vector<Field> random_sequence(const GridSpec& g, int n, unsigned seed) {
  std::vector<Field> seq;
  for (int j = 0; j < n; ++j) seq.push_back(test::random_field(g, 1, seed * 100 + j));
  return seq;
}

// Random data as a smooth perturbation of a free wave.
Trajectory perturbed_wave(const GridSpec& g, const TimeGrid& tg, int comps, unsigned seed, double band) {
  Field f = test::random_field(g, comps, seed, band), h = test::random_field(g, comps, seed + 1, band);
  std::vector<Field> frames;
  for (int j = 0; j <= tg.nt; ++j) {
    double t = tg.time(j);
    frames.push_back(half_wave(f, t, +1, 1.0) + cplx(0.3 * std::sin(3 * t)) * h);
  }
  return Trajectory(tg, frames);
}

}  // namespace

TEST(Variation, TrivialCases) {
  GridSpec g(4, 2.0);
  Field v = test::random_field(g, 1, 1);
  std::vector<Field> cst(5, v);
  EXPECT_EQ(p_variation(cst, 2).value, 0.0);
  Field w = test::random_field(g, 1, 2);
  EXPECT_NEAR(p_variation(std::vector<Field>{v, w}, 2).value, l2_norm(w - v), 1e-14 * l2_norm(w - v));
  Field mv = cplx(-1.0) * v;
  auto r = p_variation(std::vector<Field>{v, mv, v, mv, v}, 2);
  EXPECT_NEAR(r.value, 4 * l2_norm(v), 1e-13 * l2_norm(v));
  EXPECT_EQ(r.partition, (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_THROW(p_variation(std::vector<Field>{}, 2), UsageError);
  EXPECT_THROW(p_variation(cst, 0.5), UsageError);
}

TEST(Variation, DynamicProgramMatchesEnumeration) {
  GridSpec g(4, 2.0);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 12;
    double p = (trial % 3 == 0) ? 2.0 : 1.0 + 0.25 * (trial % 7);
    auto seq = random_sequence(g, n, trial + 1);
    // random magnitudes make long and short jumps compete
    for (auto& f : seq) f *= cplx(std::uniform_real_distribution<double>(0.1, 3.0)(rng));
    std::vector<double> D(n * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < seq[i].data.size(); ++k) s += std::norm(seq[j].data[k] - seq[i].data[k]);
        D[i * n + j] = std::sqrt(s * g.cell());
      }
    auto r = p_variation(n, p, [&](int i, int j) { return D[i * n + j]; });
    EXPECT_EQ(r.value, exhaustive_variation(n, p, D)) << "trial " << trial;
    for (std::size_t k = 1; k < r.partition.size(); ++k) EXPECT_LT(r.partition[k - 1], r.partition[k]);
    EXPECT_NEAR(p_variation(seq, p).value, r.value, 1e-13 * std::max(1.0, r.value));
  }
}

TEST(V2, FreeWaveHomogeneityRestriction) {
  GridSpec g(16, 2 * kPi);
  TimeGrid tg(0, 0.05, 40);
  double m = 1.0;
  Field f = test::random_field(g, 1, 3);
  for (int sign : {+1, -1}) {
    Trajectory u = half_wave_trajectory(f, tg, sign, m);
    EXPECT_NEAR(v2_norm(u, sign, m), l2_norm(f), 1e-10 * l2_norm(f));
  }
  Field psi = test::random_field(g, 4, 4);
  Trajectory d = dirac_free_trajectory(psi, tg, 1.0);
  EXPECT_NEAR(v2_norm_dirac(d, 1.0),
              l2_norm(dirac_projector(psi, +1, 1.0)) + l2_norm(dirac_projector(psi, -1, 1.0)), 1e-10 * l2_norm(psi));

  Trajectory u = perturbed_wave(g, tg, 1, 5, 0);
  double base = v2_norm(u, +1, m);
  Trajectory su = map_frames(u, [](const Field& x, double) { return cplx(-2.5, 1.0) * x; });
  EXPECT_NEAR(v2_norm(su, +1, m), std::abs(cplx(-2.5, 1.0)) * base, 1e-12 * base);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    int jb = std::uniform_int_distribution<int>(0, tg.nt)(rng);
    EXPECT_LE(v2_norm(interval_restrict(u, 0.0, tg.time(jb)), +1, m), 2 * base);
  }
}

TEST(Y, PacketSemantics) {
  GridSpec g(16, 2 * kPi);
  TimeGrid tg(0, 0.02, 200);
  double M = 1.0, lambda = 4;
  NormParams prm = NormParams::defaults(0, 0.25);
  Vec3 xi{3, 1, 0};
  for (int sign : {+1, -1}) {
    WavePacketSum free;
    free.add(-sign * bracket(xi, M), xi, {2.0});
    EXPECT_EQ(y_norm(free, g, tg, lambda, sign, M, prm).value, 0.0);
    for (double d0 : {8.0, 32.0}) {
      WavePacketSum w;
      cplx v(0.6, -0.8);
      w.add(-sign * bracket(xi, M) + (sign > 0 ? d0 : -d0), xi, {v});
      auto r = y_norm(w, g, tg, lambda, sign, M, prm);
      double ex = std::pow(d0, 1 / prm.a) * std::pow(std::min(d0, lambda) / lambda, prm.b) *
                  std::pow(tg.T(), 1 / prm.a) * std::pow(g.L, 1.5) * std::abs(v);
      EXPECT_NEAR(r.value, ex, 1e-10 * ex);
      EXPECT_EQ(r.d_star, d0);
      // block lambda = 2 does not contain |xi|
      EXPECT_EQ(y_norm(w, g, tg, 2, sign, M, prm).value, 0.0);
    }
  }
  EXPECT_THROW(y_norm(WavePacketSum{}, g, TimeGrid(0, 1.0, 1), lambda, 1, M, prm), UsageError);
}

TEST(Y, WindowedFreeWaveAndErrors) {
  GridSpec g(8, 2 * kPi);
  TimeGrid tg(0, 0.05, 64);
  NormParams prm = NormParams::defaults(0, 0.25);
  Field f = test::random_field(g, 1, 13);
  Trajectory u = half_wave_trajectory(f, tg, -1, 1.0);
  for (double lam : lp_blocks(g)) EXPECT_LE(y_norm(u, lam, -1, 1.0, prm).value, 1e-10 * l2_norm(f));
  Trajectory shortu = half_wave_trajectory(f, TimeGrid(0, 0.05, 4), -1, 1.0);
  EXPECT_THROW(y_norm(shortu, 2, -1, 1.0, prm), UsageError);
  NormParams bad = prm;
  bad.a = 2.0;
  EXPECT_THROW(y_norm(u, 2, -1, 1.0, bad), UsageError);
}

TEST(Params, Defaults) {
  auto p = NormParams::defaults(0.1, 0.5);
  EXPECT_NEAR(1 / p.a, 0.5 + 0.5 / 16, 1e-15);
  EXPECT_NEAR(p.b, 2 * (1 / p.a - 0.5), 1e-15);
  auto q = NormParams::defaults(0.1, 0.0, 0.08);
  EXPECT_NEAR(1 / q.a, 0.5 + 0.08 / 16, 1e-15);
  EXPECT_NO_THROW(p.validate());
  EXPECT_NO_THROW(q.validate());
}

TEST(Dispersive, RadialTimeFactorAndOracle) {
  GridSpec g(16, 2 * kPi);
  AngularTransformPlan plan(g, 8);
  Field rad = to_physical(test::fourier_profile(g, [](double r) { return std::exp(-0.5 * r * r); },
                                                [](const Vec3&) { return 1.0; }));
  TimeGrid tg(0, 0.1, 10);
  Trajectory u = half_wave_trajectory(rad, tg, +1, 1.0);
  double d0 = dispersive_norm(u, -0.5, 0, nullptr).value;
  for (double sigma : {0.1, 0.5, 1.0}) {
    auto r = dispersive_norm(u, -0.5, sigma, &plan);
    EXPECT_NEAR(r.value, d0, 1e-12 * d0);
    EXPECT_LE(r.truncated, 1e-12);
  }
  Field prof = test::random_field(g, 4, 17, 4.0);
  Trajectory c1(TimeGrid(0, 0.1, 10), std::vector<Field>(11, prof));
  Trajectory c2(TimeGrid(0, 0.1, 20), std::vector<Field>(21, prof));
  for (double sigma : {0.0, 0.5}) {
    double a = dispersive_norm(c1, 0.3, sigma, &plan).value, b = dispersive_norm(c2, 0.3, sigma, &plan).value;
    EXPECT_NEAR(b / a, std::pow(2.0, 0.25), 1e-12);
  }
  EXPECT_THROW(dispersive_norm(u, 0, 0.5, nullptr), UsageError);

  // brute-force block sum with the independent shell oracle
  Trajectory v = perturbed_wave(g, TimeGrid(0, 0.1, 4), 4, 19, 5.0);
  const double s = 0.5, sigma = 0.75;
  double acc = 0;
  for (int N : angular_blocks(plan)) {
    double l4 = 0;
    for (int j = 0; j <= v.time.nt; ++j) {
      Field hf = test::oracle_degree_filter(bessel_potential(v.frames[j], s, 1.0), 8, [&](int l) {
        return l > 8 ? 0.0 : angular_weight(l, N, DyadicProfile::sharp());
      });
      double sx = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        double p2 = 0;
        for (int c = 0; c < 4; ++c) p2 += std::norm(hf.comp(c)[i]);
        sx += p2 * p2;
      }
      l4 += v.time.weight(j) * g.cell() * sx;
    }
    acc += std::pow(N, 2 * sigma) * std::sqrt(l4);
  }
  double brute = std::sqrt(acc);
  double got = dispersive_norm(v, s, sigma, &plan).value;
  EXPECT_NEAR(got, brute, 1e-8 * brute);
}

TEST(Stacked, SingleBlockTwoBlocksMonotone) {
  GridSpec g(16, 2 * kPi);
  AngularTransformPlan plan(g, 8);
  TimeGrid tg(0, 0.05, 16);
  double m = 1.0;
  auto shellband = [](double lo, double hi) {
    return [lo, hi](double r) { return (r > lo && r <= hi) ? 1.0 : 0.0; };
  };
  Field f1 = to_physical(test::fourier_profile(g, shellband(2, 4), [](const Vec3& u) { return 3 * u[2] * u[2] - 1; }));
  Field f2 = to_physical(test::fourier_profile(g, shellband(1, 2), [](const Vec3&) { return 1.0; }));
  Trajectory u1 = half_wave_trajectory(f1, tg, +1, m), u2 = half_wave_trajectory(f2, tg, +1, m);
  NormParams prm = NormParams::defaults(0.7, 0.4);
  double v1 = v2_norm(u1, +1, m);
  EXPECT_NEAR(stacked_norm(u1, StackKind::V, +1, m, prm, &plan), std::pow(4, prm.s) * std::pow(2, prm.sigma) * v1,
              1e-10 * v1);
  EXPECT_LE(stacked_norm(u1, StackKind::Y, +1, m, prm, &plan), 1e-10 * v1);

  Trajectory both = map_frames(u1, [&](const Field& x, double t) {
    return x + cplx(0.5) * u2.frames[std::lround(t / tg.dt)];
  });
  double v2 = 0.5 * v2_norm(u2, +1, m);
  double hand = std::hypot(std::pow(4, prm.s) * std::pow(2, prm.sigma) * v1, std::pow(2, prm.s) * v2);
  EXPECT_NEAR(stacked_norm(both, StackKind::V, +1, m, prm, &plan), hand, 1e-10 * hand);

  Trajectory w = perturbed_wave(g, tg, 1, 23, 6.0);
  double prev = 0;
  for (double s : {0.0, 0.5, 1.0}) {
    NormParams q = NormParams::defaults(s, 0.3);
    double val = stacked_norm(w, StackKind::V, +1, m, q, &plan);
    EXPECT_GE(val, prev);
    prev = val;
  }
  prev = 0;
  for (double sigma : {0.1, 0.5, 1.0}) {
    NormParams q = NormParams::defaults(0.2, sigma);
    double val = stacked_norm(w, StackKind::V, +1, m, q, &plan);
    EXPECT_GE(val, prev);
    prev = val;
  }
  NormParams q = NormParams::defaults(0.2, 0.3);
  EXPECT_NEAR(stacked_norm(w, StackKind::F, +1, m, q, &plan),
              stacked_norm(w, StackKind::V, +1, m, q, &plan) + stacked_norm(w, StackKind::Y, +1, m, q, &plan), 1e-12);
}

TEST(Restrict, IdentitySplitAndErrors) {
  GridSpec g(8, 2 * kPi);
  TimeGrid tg(0, 0.1, 20);
  Trajectory u = perturbed_wave(g, tg, 1, 29, 0);
  Trajectory full = interval_restrict(u, 0.0, tg.T());
  for (int j = 0; j <= tg.nt; ++j) EXPECT_EQ(test::max_abs_diff(full.frames[j], u.frames[j]), 0.0);
  std::mt19937_64 rng(31);
  for (int k = 0; k < 30; ++k) {
    int a = std::uniform_int_distribution<int>(0, tg.nt - 2)(rng);
    int b = std::uniform_int_distribution<int>(a + 1, tg.nt)(rng);
    int c = std::uniform_int_distribution<int>(a, b - 1)(rng);
    double whole = v2_norm(interval_restrict(u, tg.time(a), tg.time(b)), +1, 1.0);
    double p1 = v2_norm(interval_restrict(u, tg.time(a), tg.time(c)), +1, 1.0);
    double p2 = v2_norm(interval_restrict(u, tg.time(c + 1), tg.time(b)), +1, 1.0);
    EXPECT_LE(whole, p1 + p2 + 1e-12);
  }
  EXPECT_THROW(interval_restrict(u, 0.05, 1.0), UsageError);
  EXPECT_THROW(interval_restrict(u, 0.0, 5.0), UsageError);
  EXPECT_THROW(interval_restrict(u, 1.0, 0.5), UsageError);
}
