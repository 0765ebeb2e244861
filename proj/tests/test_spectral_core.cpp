#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "dkg/gamma.hpp"
#include "dkg/snapshot.hpp"
#include "helpers.hpp"

using namespace dkg;
using dkg::test::random_field;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST(Grid, Invariants) {
  GridSpec g(16, 10.0);
  EXPECT_DOUBLE_EQ(g.h(), 10.0 / 16);
  EXPECT_DOUBLE_EQ(g.nyquist(), kPi / 10.0 * 16);
  EXPECT_THROW(GridSpec(12, 1.0), UsageError);
  EXPECT_THROW(GridSpec(2, 1.0), UsageError);
  EXPECT_THROW(GridSpec(8, 0.0), UsageError);
  EXPECT_THROW(TimeGrid(0, 0.0, 4), UsageError);
  EXPECT_THROW(TimeGrid(0, 0.1, 0), UsageError);
  TimeGrid tg(1.0, 0.25, 8);
  EXPECT_DOUBLE_EQ(tg.T(), 2.0);
  EXPECT_EQ(tg.samples(), 9);
  // origin is a node
  EXPECT_EQ(g.node(g.index(8, 8, 8)), (Vec3{0, 0, 0}));
}

TEST(Transform, PlaneWaveIsSingleCoefficient) {
  GridSpec g(16, 2 * kPi);
  Vec3 xi = (g.dk()) * Vec3{3, -2, 5};
  Field f = to_fourier(plane_wave(g, xi, {1.0}));
  std::array<int, 3> k{};
  ASSERT_TRUE(g.on_lattice(xi, &k));
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool hit = norm(g.mode(i) - xi) < 1e-12;
    EXPECT_NEAR(std::abs(f.data[i]), hit ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Transform, Roundtrip) {
  GridSpec g(16, 7.0);
  Field f = random_field(g, 4, 1);
  Field r = to_physical(to_fourier(f));
  EXPECT_LE(test::max_abs_diff(f, r), 1e-12 * test::max_abs(f));
  EXPECT_THROW(to_physical(f), UsageError);
  EXPECT_THROW(to_fourier(to_fourier(f)), UsageError);
}

TEST(Transform, NaiveDftOracle) {
  GridSpec g(4, 3.0);
  Field f = random_field(g, 1, 2);
  Field F = to_fourier(f);
  double parseval_phys = 0, parseval_naive = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    cplx c = 0;
    for (std::size_t x = 0; x < g.size(); ++x) c += f.data[x] * std::polar(1.0, -dot(g.mode(k), g.node(x)));
    c /= double(g.size());
    EXPECT_NEAR(std::abs(c - F.data[k]), 0.0, 1e-12);
    parseval_naive += std::norm(c);
  }
  for (auto v : f.data) parseval_phys += std::norm(v);
  EXPECT_NEAR(parseval_naive * g.volume(), parseval_phys * g.cell(), 1e-10 * parseval_phys * g.cell());
}

TEST(Inner, OrthogonalityAndParseval) {
  GridSpec g(16, 5.0);
  Field a = plane_wave(g, g.dk() * Vec3{1, 0, 0}, {1.0});
  Field b = plane_wave(g, g.dk() * Vec3{0, 2, 0}, {1.0});
  EXPECT_LE(std::abs(l2_inner(a, b)), 1e-12);
  Field f = random_field(g, 4, 3), h = random_field(g, 4, 4);
  cplx ff = l2_inner(f, f);
  EXPECT_GE(ff.real(), 0);
  EXPECT_LE(std::abs(ff.imag()), 1e-12 * ff.real());
  cplx direct = 0;
  for (std::size_t i = 0; i < f.data.size(); ++i) direct += std::conj(f.data[i]) * h.data[i];
  direct *= g.cell();
  cplx ip = l2_inner(f, h);
  EXPECT_LE(std::abs(ip - direct), 1e-12 * std::abs(direct));
  cplx fs = l2_inner(to_fourier(f), to_fourier(h));
  EXPECT_LE(std::abs(fs - ip), 1e-12 * l2_norm(f) * l2_norm(h));
  EXPECT_THROW(l2_inner(f, random_field(GridSpec(8, 5.0), 4, 5)), UsageError);
}

TEST(MixedNorm, ConstantModulus) {
  GridSpec g(8, 3.0);
  TimeGrid tg(0, 0.1, 20);
  WavePacketSum w;
  w.add(1.3, g.dk() * Vec3{1, 1, 0}, {1.0});
  Trajectory u = sample_wavepacket(w, g, tg);
  for (double q : {1.0, 2.0, 4.0})
    for (double r : {1.0, 2.0, 4.0})
      EXPECT_NEAR(mixed_norm(u, q, r), std::pow(tg.T(), 1 / q) * std::pow(g.L, 3 / r),
                  1e-10 * std::pow(tg.T(), 1 / q) * std::pow(g.L, 3 / r));
  EXPECT_NEAR(mixed_norm(u, INFINITY, INFINITY), 1.0, 1e-12);
}

TEST(MixedNorm, HomogeneityTriangleAndFlatOracle) {
  GridSpec g(8, 3.0);
  TimeGrid tg(0, 0.2, 6);
  std::vector<Field> fa, fb;
  for (int j = 0; j <= tg.nt; ++j) {
    fa.push_back(random_field(g, 1, 10 + j));
    fb.push_back(random_field(g, 1, 50 + j));
  }
  Trajectory a(tg, fa), b(tg, fb);
  cplx c(2.0, -1.5);
  Trajectory ca = map_frames(a, [&](const Field& f, double) { return c * f; });
  Trajectory ab = map_frames(a, [&](const Field& f, double t) { return f + b.frames[std::lround(t / tg.dt)]; });
  for (auto [q, r] : std::vector<std::pair<double, double>>{{4, 4}, {2, 6}, {1, 2}, {INFINITY, 2}}) {
    EXPECT_NEAR(mixed_norm(ca, q, r), std::abs(c) * mixed_norm(a, q, r), 1e-12 * mixed_norm(ca, q, r));
    EXPECT_LE(mixed_norm(ab, q, r), mixed_norm(a, q, r) + mixed_norm(b, q, r) + 1e-12);
  }
  double s = 0;
  for (int j = 0; j <= tg.nt; ++j)
    for (auto v : a.frames[j].data) s += tg.weight(j) * g.cell() * std::pow(std::abs(v), 4);
  EXPECT_NEAR(mixed_norm(a, 4, 4), std::pow(s, 0.25), 1e-12 * std::pow(s, 0.25));
  EXPECT_THROW(mixed_norm(Trajectory(), 2, 2), UsageError);
}

TEST(Gamma, CliffordAndHermiticity) {
  const auto& G = gammas();
  const double eta[4] = {1, -1, -1, -1};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Mat4 ac = G.g[mu] * G.g[nu] + G.g[nu] * G.g[mu];
      Mat4 ex = (mu == nu ? 2 * eta[mu] : 0.0) * Mat4::Identity();
      EXPECT_EQ((ac - ex).norm(), 0.0);
    }
  EXPECT_EQ((G.g[0].adjoint() - G.g[0]).norm(), 0.0);
  for (int j = 1; j < 4; ++j) EXPECT_EQ((G.g[j].adjoint() + G.g[j]).norm(), 0.0);
}

TEST(Bilinear, BasisValuesAndReality) {
  GridSpec g(8, 4.0);
  Field up = plane_wave(g, {0, 0, 0}, {1.0, 0.0, 0.0, 0.0});
  Field lo = plane_wave(g, {0, 0, 0}, {0.0, 0.0, 1.0, 0.0});
  Field a = dirac_bilinear(up, up), b = dirac_bilinear(lo, lo);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(a.data[i], cplx(1.0));
    EXPECT_EQ(b.data[i], cplx(-1.0));
  }
  Field psi = random_field(g, 4, 7);
  Field r = dirac_bilinear(psi, psi);
  double mx = test::max_abs(psi);
  for (auto v : r.data) EXPECT_LE(std::abs(v.imag()), 1e-14 * mx * mx);
  EXPECT_THROW(dirac_bilinear(to_fourier(psi), to_fourier(psi)), UsageError);
}

TEST(Wavepacket, SamplesExactly) {
  GridSpec g(8, 6.0);
  TimeGrid tg(0.5, 0.1, 5);
  Vec3 xi = g.dk() * Vec3{1, -3, 2};
  WavePacketSum w;
  w.comps = 4;
  w.add(0.7, xi, {1.0, cplx(0, 2), 0.0, -1.0});
  Trajectory u = sample_wavepacket(w, g, tg);
  for (int j = 0; j <= tg.nt; ++j) {
    double t = tg.time(j);
    for (std::size_t i = 0; i < g.size(); i += 37) {
      cplx e = std::polar(1.0, dot(xi, g.node(i)) + 0.7 * t);
      EXPECT_NEAR(std::abs(u.frames[j].comp(1)[i] - cplx(0, 2) * e), 0.0, 1e-12);
    }
  }
  WavePacketSum w2;
  w2.comps = 4;
  w2.add(-1.1, g.dk() * Vec3{0, 0, 1}, {0.0, 1.0, 1.0, 0.0});
  WavePacketSum both = w;
  both += w2;
  Trajectory s = sample_wavepacket(both, g, tg), s2 = sample_wavepacket(w2, g, tg);
  for (int j = 0; j <= tg.nt; ++j) EXPECT_LE(test::max_abs_diff(s.frames[j], u.frames[j] + s2.frames[j]), 1e-12);
  WavePacketSum off;
  off.add(0, {0.3, 0, 0}, {1.0});
  EXPECT_THROW(sample_wavepacket(off, g, tg), UsageError);
  WavePacketSum unit;
  unit.add(2.0, xi, {1.0});
  EXPECT_NEAR(mixed_norm(sample_wavepacket(unit, g, tg), 4, 4), std::pow(tg.T(), 0.25) * std::pow(g.L, 0.75), 1e-10);
}

TEST(Snapshot, Roundtrip) {
  GridSpec g(8, 4.5);
  Field f = random_field(g, 4, 9);
  auto path = std::filesystem::temp_directory_path() / "dkg_snapshot_test.bin";
  write_snapshot(path.string(), f, TimeGrid(0, 0.1, 3), 0.2);
  Field r = read_snapshot(path.string());
  EXPECT_EQ(r.grid, g);
  EXPECT_EQ(r.comps, 4);
  EXPECT_EQ(test::max_abs_diff(r, f), 0.0);
  EXPECT_EQ(std::filesystem::file_size(path), 32 + 16 * f.data.size());
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".json");
}
