#include <gtest/gtest.h>

#include "dkg/gamma.hpp"
#include "dkg/multipliers.hpp"
#include "dkg/propagators.hpp"
#include "helpers.hpp"

using namespace dkg;

namespace {

constexpr double kPi = 3.14159265358979323846;

// (gamma^j xi_j + M) per mode: the spectral form of -i gamma^j d_j + M.
Field dirac_spatial(const Field& psi, double M) {
  const auto& G = gammas();
  Field f = to_fourier(psi);
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    Vec3 xi = f.grid.mode(i);
    Mat4 A = M * Mat4::Identity() + xi[0] * G[1] + xi[1] * G[2] + xi[2] * G[3];
    Vec4 v(f.comp(0)[i], f.comp(1)[i], f.comp(2)[i], f.comp(3)[i]);
    Vec4 w = A * v;
    for (int c = 0; c < 4; ++c) f.comp(c)[i] = w(c);
  }
  return to_physical(f);
}

Field gamma0(Field psi) {
  for (int c = 2; c < 4; ++c)
    for (std::size_t i = 0; i < psi.nodes(); ++i) psi.comp(c)[i] = -psi.comp(c)[i];
  return psi;
}

// || -i gamma^0 (psi(t+dt) - psi(t-dt)) / 2dt + (-i gamma^j d_j + M) psi(t) - G ||
double dirac_residual(const Field& prev, const Field& cur, const Field& next, double dt, double M, const Field* G) {
  Field r = cplx(0, -1.0 / (2 * dt)) * gamma0(next - prev);
  r += dirac_spatial(cur, M);
  if (G) r -= *G;
  return l2_norm(r);
}

}  // namespace

TEST(HalfWave, IdentitySymbolUnitarityGroup) {
  GridSpec g(16, 2 * kPi);
  Field f = test::random_field(g, 4, 1);
  double m = 0.7;
  for (int sign : {+1, -1}) {
    EXPECT_LE(test::max_abs_diff(half_wave(f, 0.0, sign, m), f), 1e-13 * test::max_abs(f));
    Vec3 xi{1, -2, 3};
    Field pw = plane_wave(g, xi, {1.0});
    double t = 0.37;
    EXPECT_LE(test::max_abs_diff(half_wave(pw, t, sign, m), std::polar(1.0, -sign * t * bracket(xi, m)) * pw), 1e-12);
    Field u = half_wave(f, 1.9, sign, m);
    EXPECT_NEAR(l2_norm(u), l2_norm(f), 1e-13 * l2_norm(f));
    Field st = half_wave(half_wave(f, 0.4, sign, m), 1.1, sign, m);
    EXPECT_LE(test::max_abs_diff(st, half_wave(f, 1.5, sign, m)), 1e-12 * test::max_abs(f));
  }
}

TEST(DiracFree, DiagonalisationAndCommutation) {
  GridSpec g(16, 2 * kPi);
  double M = 1.2, t = 0.8;
  Field psi = test::random_field(g, 4, 3);
  Field pp = dirac_projector(psi, +1, M);
  EXPECT_LE(test::max_abs_diff(dirac_free(pp, t, M), half_wave(pp, t, +1, M)), 1e-12 * test::max_abs(psi));
  for (int s : {+1, -1}) {
    Field a = dirac_projector(dirac_free(psi, t, M), s, M);
    Field b = dirac_free(dirac_projector(psi, s, M), t, M);
    EXPECT_LE(test::max_abs_diff(a, b), 1e-12 * test::max_abs(psi));
  }
  EXPECT_NEAR(l2_norm(dirac_free(psi, t, M)), l2_norm(psi), 1e-12 * l2_norm(psi));
  EXPECT_THROW(dirac_free(psi, t, 0.0), UsageError);
}

TEST(DiracFree, FiniteDifferenceResidualSecondOrder) {
  GridSpec g(16, 2 * kPi);
  double M = 1.0, t = 0.5;
  Field psi = test::random_field(g, 4, 5, 3.0);
  double prev = 0;
  for (double dt : {0.02, 0.01, 0.005}) {
    double r = dirac_residual(dirac_free(psi, t - dt, M), dirac_free(psi, t, M), dirac_free(psi, t + dt, M), dt, M,
                              nullptr);
    if (prev > 0) EXPECT_NEAR(prev / r, 4.0, 0.2);
    prev = r;
  }
}

TEST(Duhamel, ZeroAndGroupLawIntegrand) {
  GridSpec g(8, 2 * kPi);
  TimeGrid tg(0, 0.1, 10);
  double m = 1.0;
  Trajectory zero(tg, std::vector<Field>(tg.samples(), Field(g, 1)));
  for (const auto& f : duhamel_half_wave(zero, 0.0, +1, m).frames) EXPECT_EQ(test::max_abs(f), 0.0);
  Field gf = test::random_field(g, 1, 7);
  for (int sign : {+1, -1}) {
    Trajectory F = half_wave_trajectory(gf, tg, sign, m);
    for (double t0 : {0.0, 0.3}) {
      Trajectory I = duhamel_half_wave(F, t0, sign, m);
      for (int j = 0; j <= tg.nt; ++j) {
        Field ex = cplx(0, tg.time(j) - t0) * F.frames[j];
        EXPECT_LE(test::max_abs_diff(I.frames[j], ex), 1e-12 * test::max_abs(gf));
      }
    }
  }
  Trajectory F = half_wave_trajectory(gf, tg, +1, m);
  EXPECT_THROW(duhamel_half_wave(F, 5.0, +1, m), UsageError);
  EXPECT_THROW(duhamel_half_wave(F, 0.05, +1, m), UsageError);
}

TEST(Duhamel, HalfWaveResidualSecondOrder) {
  GridSpec g(8, 2 * kPi);
  double m = 1.0;
  Field f1 = test::random_field(g, 1, 9, 2.0), f2 = test::random_field(g, 1, 10, 2.0);
  auto Fat = [&](double t) { return cplx(std::cos(t)) * f1 + cplx(std::sin(2 * t)) * f2; };
  for (int sign : {+1, -1}) {
    double prev = 0;
    for (int nt : {40, 80, 160}) {
      TimeGrid tg(0, 1.0 / nt, nt);
      std::vector<Field> frames;
      for (int j = 0; j <= nt; ++j) frames.push_back(Fat(tg.time(j)));
      Trajectory I = duhamel_half_wave(Trajectory(tg, frames), 0.0, sign, m);
      int j = nt / 2;
      // -i d_t u + sign <nabla> u = F
      Field r = cplx(0, -1.0 / (2 * tg.dt)) * (I.frames[j + 1] - I.frames[j - 1]);
      r += cplx(sign) * bessel_potential(I.frames[j], 1.0, m);
      r -= Fat(tg.time(j));
      double res = l2_norm(r);
      if (prev > 0) EXPECT_NEAR(prev / res, 4.0, 0.4);
      prev = res;
    }
  }
}

TEST(Duhamel, DiracZeroLinearityResidual) {
  GridSpec g(8, 2 * kPi);
  double M = 1.0;
  TimeGrid tg0(0, 0.1, 6);
  Trajectory zero(tg0, std::vector<Field>(tg0.samples(), Field(g, 4)));
  for (const auto& f : duhamel_dirac(zero, 0.0, M).frames) EXPECT_EQ(test::max_abs(f), 0.0);

  Field a = test::random_field(g, 4, 11, 2.0), b = test::random_field(g, 4, 12, 2.0);
  auto Gat = [&](double t) { return cplx(std::cos(t)) * a + cplx(std::sin(3 * t)) * b; };
  std::vector<Field> ga, gb, gs;
  for (int j = 0; j <= tg0.nt; ++j) {
    ga.push_back(Gat(tg0.time(j)));
    gb.push_back(cplx(std::exp(-tg0.time(j))) * b);
    gs.push_back(cplx(2.0) * ga.back() + cplx(0, 1) * gb.back());
  }
  Trajectory Ia = duhamel_dirac(Trajectory(tg0, ga), 0.0, M), Ib = duhamel_dirac(Trajectory(tg0, gb), 0.0, M);
  Trajectory Is = duhamel_dirac(Trajectory(tg0, gs), 0.0, M);
  for (int j = 0; j <= tg0.nt; ++j)
    EXPECT_LE(test::max_abs_diff(Is.frames[j], cplx(2.0) * Ia.frames[j] + cplx(0, 1) * Ib.frames[j]),
              1e-12 * test::max_abs(a));

  double prev = 0;
  for (int nt : {40, 80, 160}) {
    TimeGrid tg(0, 1.0 / nt, nt);
    std::vector<Field> frames;
    for (int j = 0; j <= nt; ++j) frames.push_back(Gat(tg.time(j)));
    Trajectory I = duhamel_dirac(Trajectory(tg, frames), 0.0, M);
    int j = nt / 2;
    Field G = Gat(tg.time(j));
    double res = dirac_residual(I.frames[j - 1], I.frames[j], I.frames[j + 1], tg.dt, M, &G);
    if (prev > 0) EXPECT_NEAR(prev / res, 4.0, 0.4);
    prev = res;
  }
}
