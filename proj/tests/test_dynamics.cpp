#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dkg/dynamics.hpp"
#include "dkg/gamma.hpp"
#include "dkg/multipliers.hpp"
#include "dkg/propagators.hpp"
#include "helpers.hpp"

using namespace dkg;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gaussian bump times a fixed spinor, modulated by a low mode.
Field smooth_spinor(const GridSpec& g, double amp, double width, const Vec3& k0) {
  Field f(g, 4);
  const cplx v[4] = {cplx(0.7, 0.1), cplx(-0.2, 0.5), cplx(0.3, -0.3), cplx(0.1, 0.4)};
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 x = g.node(i);
    cplx e = amp * std::exp(-dot(x, x) / (2 * width * width)) * std::polar(1.0, dot(k0, x));
    for (int c = 0; c < 4; ++c) f.comp(c)[i] = v[c] * e;
  }
  return f;
}

Field smooth_scalar(const GridSpec& g, double amp, double width, const Vec3& shift) {
  Field f(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 x = g.node(i) - shift;
    f.data[i] = cplx(amp * std::exp(-dot(x, x) / (2 * width * width)), 0.3 * amp * std::exp(-dot(x, x) / (width * width)));
  }
  return f;
}

DKGState smooth_state(const GridSpec& g, double amp) {
  return DKGState(smooth_spinor(g, amp, 1.0, {1, 0, -1}), smooth_scalar(g, amp, 1.2, {0.3, -0.2, 0.1}), 0.0, 1.0, 1.0);
}

SolverConfig quick_cfg(double dt, int nt) {
  SolverConfig c;
  c.dt = dt;
  c.nt = nt;
  c.cadence = nt;
  return c;
}

DKGState run(DKGState s, double dt, int nt, bool dealias = true) {
  SolverConfig c = quick_cfg(dt, nt);
  c.dealias = dealias;
  for (int j = 0; j < nt; ++j) s = step(s, c);
  return s;
}

Vec4 to_vec(const std::vector<cplx>& v) { return Vec4(v[0], v[1], v[2], v[3]); }

}  // namespace

TEST(RhsDirac, ZeroAndConstantMultiplier) {
  GridSpec g(8, 2 * kPi);
  Field psi = test::random_field(g, 4, 11);
  DKGState s(psi, Field(g, 1), 0, 1.0, 1.0);
  auto z = rhs_dirac(s);
  EXPECT_EQ(test::max_abs(z.plus), 0.0);
  EXPECT_EQ(test::max_abs(z.minus), 0.0);

  Field c(g, 1);
  for (auto& v : c.data) v = cplx(0.8, 0.3);  // only the real part acts
  s.phi_plus = c;
  auto f = rhs_dirac(s);
  Field g0psi = psi;
  for (int k = 2; k < 4; ++k)
    for (std::size_t i = 0; i < g.size(); ++i) g0psi.comp(k)[i] *= -1.0;
  EXPECT_LE(test::max_abs_diff(f.plus, 0.8 * dirac_projector(g0psi, +1, 1.0)), 1e-13);
  EXPECT_LE(test::max_abs_diff(f.minus, 0.8 * dirac_projector(g0psi, -1, 1.0)), 1e-13);
}

TEST(RhsDirac, SingleModeConvolution) {
  // psi = v e^{i q.x}, Re phi_+ = 2 cos(k.x): gamma^0 v at q + k and q - k
  GridSpec g(4, 2 * kPi);
  const double M = 1.3;
  std::vector<cplx> v{cplx(1, 0.5), cplx(-0.3, 0.2), cplx(0.1, -0.7), cplx(0.4, 0.4)};
  Vec3 q{1, 0, -1}, k{0, 1, 1};
  Field psi = plane_wave(g, q, v);
  Field phi = plane_wave(g, k, {1.0}) + plane_wave(g, -1.0 * k, {1.0});
  DKGState s(psi, phi, 0, M, 1.0);
  auto f = rhs_dirac(s);
  Vec4 g0v = gammas()[0] * to_vec(v);
  for (int sign : {+1, -1}) {
    Field expect(g, 4);
    for (const Vec3& xi : {q + k, q - k}) {
      Vec4 w = dirac_projector_matrix(xi, sign, M) * g0v;
      expect += plane_wave(g, xi, {w(0), w(1), w(2), w(3)});
    }
    EXPECT_LE(test::max_abs_diff(sign > 0 ? f.plus : f.minus, expect), 1e-12);
  }
}

TEST(RhsWave, ZeroHomogeneityAndTwoModes) {
  GridSpec g(4, 2 * kPi);
  const double m = 0.8;
  DKGState z(Field(g, 4), Field(g, 1), 0, 1.0, m);
  EXPECT_EQ(test::max_abs(rhs_wave(z)), 0.0);

  Field psi = test::random_field(g, 4, 5);
  DKGState s(psi, Field(g, 1), 0, 1.0, m), s3(3.0 * psi, Field(g, 1), 0, 1.0, m);
  EXPECT_LE(test::max_abs_diff(rhs_wave(s3), 9.0 * rhs_wave(s)), 1e-12 * test::max_abs(rhs_wave(s3)));

  // psi = v e^{iq.x} + w e^{ip.x}: psi-bar psi = vbar v + wbar w + 2 Re(vbar w e^{i(p-q).x})
  std::vector<cplx> v{cplx(1, 0.5), cplx(-0.3, 0.2), cplx(0.1, -0.7), cplx(0.4, 0.4)};
  std::vector<cplx> w{cplx(0.2, -0.1), cplx(0.9, 0.3), cplx(-0.5, 0.6), cplx(0.0, 1.0)};
  Vec3 q{1, 0, 0}, p{0, -1, 1};
  DKGState two(plane_wave(g, q, v) + plane_wave(g, p, w), Field(g, 1), 0, 1.0, m);
  const auto& G0 = gammas()[0];
  cplx vv = to_vec(v).dot(G0 * to_vec(v)), ww = to_vec(w).dot(G0 * to_vec(w)), vw = to_vec(v).dot(G0 * to_vec(w));
  Vec3 d = p - q;
  Field expect = plane_wave(g, {0, 0, 0}, {(vv + ww) / m});
  expect += plane_wave(g, d, {vw / bracket(d, m)});
  expect += plane_wave(g, -1.0 * d, {std::conj(vw) / bracket(d, m)});
  Field out = rhs_wave(two);
  EXPECT_LE(test::max_abs_diff(out, expect), 1e-12);
  for (auto x : out.data) EXPECT_EQ(x.imag(), 0.0);
}

TEST(Step, DecoupledEqualsFreeFlows) {
  GridSpec g(16, 2 * kPi);
  DKGState s = smooth_state(g, 0.5);
  SolverConfig c = quick_cfg(0.05, 40);
  c.coupling = false;
  c.cadence = 10;
  auto res = evolve(s, c);
  ASSERT_FALSE(res.halted);
  double T = 0.05 * 40;
  EXPECT_LE(test::max_abs_diff(res.final_state.psi, dirac_free(s.psi, T, s.M)), 1e-10);
  EXPECT_LE(test::max_abs_diff(res.final_state.phi_plus, half_wave(s.phi_plus, T, +1, s.m)), 1e-10);
  for (const auto& r : res.rows) EXPECT_LE(r.cauchy_inc, 1e-12);
}

TEST(Step, SelfConvergenceSecondOrder) {
  GridSpec g(16, 2 * kPi);
  DKGState s = smooth_state(g, 1.0);
  const double T = 0.4;
  auto a = run(s, T / 8, 8), b = run(s, T / 16, 16), c = run(s, T / 32, 32);
  double e1 = l2_norm(a.psi - b.psi) + l2_norm(a.phi_plus - b.phi_plus);
  double e2 = l2_norm(b.psi - c.psi) + l2_norm(b.phi_plus - c.phi_plus);
  EXPECT_GE(std::log2(e1 / e2), 1.9) << e1 << " " << e2;
}

TEST(Step, Rk4InteractionFourthOrderish) {
  GridSpec g(8, 2 * kPi);
  DKGState s = smooth_state(g, 1.0);
  SolverConfig c = quick_cfg(0.05, 8);
  c.scheme = Scheme::rk4_interaction;
  auto go = [&](double dt, int nt) {
    SolverConfig cc = c;
    cc.dt = dt;
    DKGState st = s;
    for (int j = 0; j < nt; ++j) st = step(st, cc);
    return st;
  };
  auto a = go(0.05, 8), b = go(0.025, 16), d = go(0.0125, 32);
  double e1 = l2_norm(a.psi - b.psi), e2 = l2_norm(b.psi - d.psi);
  EXPECT_GE(std::log2(e1 / e2), 3.5);
  // and agrees with Strang at the Strang error level
  auto st = run(s, 0.0125, 32);
  EXPECT_LE(l2_norm(st.psi - d.psi), 1e-3 * l2_norm(s.psi));
  c.dt = 2.0;
  EXPECT_THROW(c.validate(g, 1.0), UsageError);
}

TEST(Step, TimeReversal) {
  GridSpec g(16, 2 * kPi);
  DKGState s = smooth_state(g, 1.0);
  SolverConfig fw = quick_cfg(0.02, 1), bw = quick_cfg(-0.02, 1);
  DKGState x = s;
  for (int j = 0; j < 10; ++j) x = step(x, fw);
  for (int j = 0; j < 10; ++j) x = step(x, bw);
  EXPECT_LE(test::max_abs_diff(x.psi, s.psi), 1e-10);
  EXPECT_LE(test::max_abs_diff(x.phi_plus, s.phi_plus), 1e-10);
  EXPECT_NEAR(x.t, 0.0, 1e-14);
}

TEST(Step, NonFiniteAborts) {
  GridSpec g(8, 2 * kPi);
  DKGState s = smooth_state(g, 1.0);
  s.psi.data[3] = cplx(NAN, 0);
  EXPECT_THROW(step(s, quick_cfg(0.01, 1)), std::runtime_error);
}

TEST(Evolve, ZeroData) {
  GridSpec g(8, 2 * kPi);
  DKGState s(Field(g, 4), Field(g, 1), 0, 1.0, 1.0);
  SolverConfig c = quick_cfg(0.1, 20);
  c.cadence = 5;
  auto res = evolve(s, c);
  ASSERT_FALSE(res.halted);
  EXPECT_EQ(res.rows.size(), 5u);
  for (const auto& r : res.rows) {
    EXPECT_EQ(r.charge, 0.0);
    EXPECT_EQ(r.wave_norm, 0.0);
    EXPECT_EQ(r.running_D, 0.0);
    EXPECT_EQ(r.cauchy_inc, 0.0);
    EXPECT_EQ(r.h_complement, 0.0);
  }
  EXPECT_EQ(res.psi.frames.size(), 5u);
  EXPECT_EQ(test::max_abs(res.final_state.psi), 0.0);
}

TEST(Evolve, ChargeAndDensityReality) {
  GridSpec g(16, 2 * kPi);
  DKGState s = smooth_state(g, 1.0);
  SolverConfig c = quick_cfg(0.01, 1000);
  c.cadence = 100;
  auto res = evolve(s, c);
  ASSERT_FALSE(res.halted) << res.message;
  double q0 = res.rows.front().charge;
  for (const auto& r : res.rows) EXPECT_LE(std::abs(r.charge - q0) / q0, 1e-6);
  for (const auto& f : res.psi.frames) {
    Field rho = dirac_bilinear(f, f);
    for (auto v : rho.data) ASSERT_LE(std::abs(v.imag()), 1e-13);
  }
}

TEST(Evolve, ConfigErrorsAndCeiling) {
  GridSpec g(8, 2 * kPi);
  DKGState s = smooth_state(g, 1.0);
  SolverConfig c = quick_cfg(0.01, 10);
  c.cadence = 3;
  EXPECT_THROW(evolve(s, c), UsageError);
  c.cadence = 5;
  c.ceiling = 1.0;
  EXPECT_THROW(evolve(s, c), UsageError);
  // Strang steps are unitary, so bounded data never trips the ceiling; overflow
  // takes the same halt path and keeps the last valid state
  DKGState big(smooth_spinor(g, 1e160, 1.0, {1, 0, 0}), Field(g, 1), 0, 1.0, 1.0);
  SolverConfig h = quick_cfg(0.05, 20);
  h.cadence = 1;
  auto res = evolve(big, h);
  EXPECT_TRUE(res.halted);
  EXPECT_NE(res.message.find("step-size/ceiling exceeded"), std::string::npos);
  EXPECT_TRUE(res.psi.frames.empty());
  EXPECT_EQ(res.final_state.t, 0.0);
}

TEST(Evolve, DiagnosticsCsv) {
  GridSpec g(8, 2 * kPi);
  DKGState s = smooth_state(g, 0.5);
  SolverConfig c = quick_cfg(0.05, 10);
  c.cadence = 5;
  auto res = evolve(s, c);
  auto path = std::filesystem::temp_directory_path() / "dkg_diag_test.csv";
  write_diagnostics_csv(path.string(), res.rows);
  std::ifstream is(path);
  std::string header, line;
  std::getline(is, header);
  EXPECT_EQ(header, "# dkg-csv diagnostics v1");
  std::getline(is, header);
  EXPECT_EQ(header, "t,charge,wave_norm,running_D,cauchy_inc,h_complement");
  int n = 0;
  while (std::getline(is, line)) ++n;
  EXPECT_EQ(n, 3);
  std::filesystem::remove(path);
}

TEST(SecondOrder, FreeWaveQuadraticDecay) {
  GridSpec g(16, 2 * kPi);
  const double m = 1.0;
  Field phi0 = smooth_scalar(g, 1.0, 1.0, {0, 0, 0});
  auto resid = [&](double dt) {
    TimeGrid tg(0, dt, 4);
    Trajectory ph = half_wave_trajectory(phi0, tg, +1, m);
    std::vector<Field> zero(5, Field(g, 4));
    return second_order_residual(Trajectory(tg, zero), ph, m, false);
  };
  double r1 = resid(0.1), r2 = resid(0.05);
  EXPECT_GE(r1 / r2, 3.8);
  EXPECT_LE(r1 / r2, 4.2);
}

TEST(SecondOrder, StaticBalanceAndNegativeControl) {
  GridSpec g(8, 2 * kPi);
  const double m = 0.7, c = 0.4;
  Field phi(g, 1), psi(g, 4);
  for (auto& v : phi.data) v = c;
  for (std::size_t i = 0; i < g.size(); ++i) psi.comp(0)[i] = std::sqrt(m * m * c);
  TimeGrid tg(0, 0.1, 3);
  Trajectory P(tg, std::vector<Field>(4, psi)), F(tg, std::vector<Field>(4, phi));
  EXPECT_LE(second_order_residual(P, F, m, false), 1e-13);

  std::vector<Field> rp, rf;
  for (int j = 0; j < 4; ++j) {
    rp.push_back(test::random_field(g, 4, 100 + j));
    rf.push_back(test::random_field(g, 1, 200 + j));
  }
  EXPECT_GE(second_order_residual(Trajectory(tg, rp), Trajectory(tg, rf), m, false), 1.0);
  TimeGrid t2(0, 0.1, 1);
  EXPECT_THROW(second_order_residual(Trajectory(t2, {psi, psi}), Trajectory(t2, {phi, phi}), m, false), UsageError);
}

TEST(SecondOrder, SolverOutputConverges) {
  GridSpec g(16, 2 * kPi);
  DKGState s = smooth_state(g, 1.0);
  auto resid = [&](double dt, int nt) {
    SolverConfig c = quick_cfg(dt, nt);
    c.cadence = 1;
    auto res = evolve(s, c);
    return second_order_residual(res.psi, res.phi_plus, s.m, c.dealias);
  };
  double r1 = resid(0.04, 10), r2 = resid(0.02, 20);
  EXPECT_GE(r1 / r2, 3.8) << r1 << " " << r2;
}

TEST(Scattering, FreeDataIncrementsVanish) {
  GridSpec g(16, 2 * kPi);
  Field psi = smooth_spinor(g, 1.0, 1.0, {1, 0, 0});
  TimeGrid tg(0.5, 0.25, 8);
  auto inc = scattering_diagnostic(dirac_free_trajectory(psi, tg, 1.0), 1.0);
  ASSERT_EQ(inc.size(), 8u);
  for (double v : inc) EXPECT_LE(v, 1e-12);
}
