#include "dkg/probes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "dkg/gamma.hpp"
#include "dkg/multipliers.hpp"
#include "dkg/profile.hpp"
#include "dkg/propagators.hpp"
#include "dkg/variation.hpp"

namespace dkg {

namespace {

constexpr double kPi = 3.14159265358979323846;
using Key = std::array<int, 3>;

// int_0^T e^{-i t delta} dt
cplx time_integral(double delta, double T) {
  double x = 0.5 * T * delta;
  double s = std::abs(x) < 1e-8 ? 1.0 - x * x / 6 : std::sin(x) / x;
  return T * s * std::polar(1.0, -x);
}

cplx cnormal(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double a = n(rng);
  return {a, n(rng)};
}

Vec4 random_spinor(std::mt19937_64& rng) {
  Vec4 w;
  for (int c = 0; c < 4; ++c) w(c) = cnormal(rng);
  return w;
}

// sharp P_nu membership; nu = 1 is the low block
bool in_block(double r, double nu) { return nu <= 1 ? r <= 1 : (r > nu / 2 && r <= nu); }

Vec3 to_vec(const Key& k, double dk) { return {k[0] * dk, k[1] * dk, k[2] * dk}; }

void check_ratios(const std::vector<double>& r, const char* who) {
  if (r.size() < 4) throw UsageError(std::string(who) + ": insufficient dyadic points (need >= 4)");
  for (double x : r)
    if (!(x > 0) || !is_dyadic(x)) throw UsageError(std::string(who) + ": ratios must be dyadic");
}

Key key_of(const Vec3& xi, double dk) {
  return {int(std::lround(xi[0] / dk)), int(std::lround(xi[1] / dk)), int(std::lround(xi[2] / dk))};
}

Key diff(const Key& a, const Key& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

cplx spin_dot(const Packet& a, const Packet& b, bool g0) {
  cplx s = 0;
  for (std::size_t c = 0; c < a.v.size(); ++c) s += std::conj(a.v[c]) * b.v[c] * ((g0 && c >= 2) ? -1.0 : 1.0);
  return s;
}

// sum_groups int_0^T |sum_j a_j e^{-i t w_j}|^2 dt
using Groups = std::map<Key, std::vector<std::pair<cplx, double>>>;
double group_energy(const Groups& g, double T) {
  double s = 0;
  for (const auto& [d, terms] : g)
    for (const auto& a : terms)
      for (const auto& b : terms) s += (a.first * std::conj(b.first) * time_integral(a.second - b.second, T)).real();
  return std::max(0.0, s);
}

WavePacketSum free_dirac_packets(const std::vector<Key>& ks, const std::vector<Vec4>& v, double dk, int s, double M) {
  WavePacketSum w;
  w.comps = 4;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    Vec3 xi = to_vec(ks[i], dk);
    w.add(-s * bracket(xi, M), xi, {v[i](0), v[i](1), v[i](2), v[i](3)});
  }
  return w;
}

}  // namespace

// ---- modulation decay ------------------------------------------------------------

ScalingReport modulation_decay_probe(const ModulationDecayConfig& c) {
  if (c.ds.size() < 4) throw UsageError("modulation_decay_probe: insufficient dyadic points (need >= 4)");
  if (c.draws < 1 || c.modes < 1 || c.jumps < 1) throw UsageError("modulation_decay_probe: empty ensemble");
  double dmax = *std::max_element(c.ds.begin(), c.ds.end());
  if (2 * kPi * c.harmonics / c.T < dmax) throw UsageError("modulation_decay_probe: harmonics do not reach the largest d");
  for (double d : c.ds)
    if (!is_dyadic(d)) throw UsageError("modulation_decay_probe: d must be dyadic");

  const double dk = 2 * kPi / c.L, vol = c.L * c.L * c.L;
  std::vector<std::vector<double>> ratio(c.ds.size(), std::vector<double>(c.draws));
#pragma omp parallel for schedule(dynamic)
  for (int draw = 0; draw < c.draws; ++draw) {
    std::mt19937_64 rng(c.seed * 1000003ULL + draw);
    std::uniform_int_distribution<int> kd(-4, 4);
    std::uniform_real_distribution<double> ud(0.0, c.T);
    // spatial data
    std::vector<Vec3> xi;
    std::vector<cplx> a;
    std::map<Key, int> seen;
    while (int(xi.size()) < c.modes) {
      Key k{kd(rng), kd(rng), kd(rng)};
      if (!seen.emplace(k, 0).second) continue;
      xi.push_back(to_vec(k, dk));
      a.push_back(cnormal(rng));
    }
    double f2 = 0;
    for (auto& z : a) f2 += std::norm(z);
    const double fnorm = std::sqrt(f2 * vol);
    // step function h
    std::vector<double> tj{0.0};
    for (int j = 0; j < c.jumps; ++j) tj.push_back(ud(rng));
    std::sort(tj.begin(), tj.end());
    tj.push_back(c.T);
    std::vector<cplx> hv(c.jumps + 1);
    for (auto& z : hv) z = cnormal(rng);
    double sup = 0;
    for (auto& z : hv) sup = std::max(sup, std::abs(z));
    // periodic closure: the packet series represents the periodic extension
    std::vector<cplx> seq = hv;
    seq.push_back(hv.front());
    double var = p_variation(int(seq.size()), 2.0, [&](int i, int j) { return std::abs(seq[i] - seq[j]); }).value;
    const double v2 = fnorm * (sup + var);

    WavePacketSum w;
    for (int k = -c.harmonics; k <= c.harmonics; ++k) {
      double kappa = 2 * kPi * k / c.T;
      cplx hk = 0;
      for (int j = 0; j <= c.jumps; ++j) {
        if (k == 0)
          hk += hv[j] * (tj[j + 1] - tj[j]);
        else
          hk += hv[j] * (std::polar(1.0, -kappa * tj[j]) - std::polar(1.0, -kappa * tj[j + 1])) / cplx(0, kappa);
      }
      hk /= c.T;
      for (std::size_t m = 0; m < xi.size(); ++m) w.add(-c.sign * bracket(xi[m], c.m) + kappa, xi[m], {a[m] * hk});
    }
    for (std::size_t di = 0; di < c.ds.size(); ++di) {
      WavePacketSum cd = modulation_projector(w, c.ds[di], c.sign, c.m);
      double s = 0;
      for (const auto& p : cd.packets) s += std::norm(p.v[0]);
      ratio[di][draw] = std::sqrt(c.T * vol * s) / v2;
    }
  }
  ScalingReport r;
  r.name = "modulation_decay";
  r.x_label = "d";
  r.y_label = "rms ||C_d u|| / ||u||_V2";
  for (std::size_t di = 0; di < c.ds.size(); ++di) {
    double s = 0, mx = 0;
    for (double v : ratio[di]) {
      s += v * v;
      mx = std::max(mx, v);
    }
    r.x.push_back(c.ds[di]);
    r.y.push_back(std::sqrt(s / c.draws));
    r.max_ratio = std::max(r.max_ratio, mx);
  }
  r.refit();
  r.notes.push_back("draws=" + std::to_string(c.draws) + " seed=" + std::to_string(c.seed));
  return r;
}

// ---- Strichartz --------------------------------------------------------------------

namespace {

// (int_0^T ||u||_r^q dt)^{1/q} at T and T/2 (nt even), trapezoid.
std::pair<double, double> lqlr(const Field& f, int sign, double m, double q, double r, double T, int nt) {
  nt += nt % 2;
  double full = 0, half = 0;
  const double dt = T / nt;
  for (int j = 0; j <= nt; ++j) {
    double v = std::pow(lebesgue_norm(half_wave(f, j * dt, sign, m), r), q);
    double wf = (j == 0 || j == nt) ? 0.5 : 1.0;
    full += wf * dt * v;
    if (j <= nt / 2) half += ((j == 0 || j == nt / 2) ? 0.5 : 1.0) * dt * v;
  }
  return {std::pow(full, 1 / q), std::pow(half, 1 / q)};
}

}  // namespace

StrichartzReport strichartz_fit(const StrichartzConfig& c) {
  if (!(c.T > 0) || !(c.oversample > 0)) throw UsageError("strichartz_fit: empty window");
  if (!(c.q >= 2) || !(c.r >= 2)) throw UsageError("strichartz_fit: q, r must be >= 2");
  const bool cube = c.family == StrichartzFamily::wave_cube;
  const auto& xs = cube ? c.mus : c.lambdas;
  if (xs.size() < 4) throw UsageError("strichartz_fit: insufficient dyadic points (need >= 4)");
  GridSpec g(c.n, c.L);
  for (double x : xs) {
    if (!is_dyadic(x)) throw UsageError("strichartz_fit: scales must be dyadic");
    double top = cube ? 0.75 * c.lambda + 0.5 * x : x;
    if (top > g.nyquist() / 2) throw UsageError("strichartz_fit: scale beyond half the grid Nyquist");
    if (cube && x > c.lambda / 2) throw UsageError("strichartz_fit: cube must sit inside the lambda annulus");
  }
  StrichartzReport rep;
  rep.name = cube ? "strichartz_wave_cube" : "strichartz_kg";
  rep.x_label = cube ? "mu" : "lambda";
  rep.y_label = "||u||_{L^q L^r} / ||f||";
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (double x : xs) {
    double b = 0.5 + u01(rng), ph = 2 * kPi * u01(rng);
    Vec3 x0{(u01(rng) - 0.5) * c.L, (u01(rng) - 0.5) * c.L, (u01(rng) - 0.5) * c.L};
    Field f(g, 1, Rep::fourier);
    if (cube) {
      // cube of side mu centred at 3/4 lambda e_1
      Vec3 ctr{0.75 * c.lambda, 0, 0};
      for (std::size_t i = 0; i < g.size(); ++i) {
        Vec3 xi = g.mode(i);
        bool in = true;
        for (int a = 0; a < 3; ++a) in = in && xi[a] >= ctr[a] - x / 2 && xi[a] < ctr[a] + x / 2;
        if (!in) continue;
        double s = norm(xi - ctr) / x;
        f.data[i] = (1 + 0.5 * std::sin(2 * kPi * b * s + ph)) * std::polar(1.0, -dot(xi, x0));
      }
    } else {
      for (std::size_t i = 0; i < g.size(); ++i) {
        Vec3 xi = g.mode(i);
        double r = norm(xi);
        if (!in_block(r, x)) continue;
        f.data[i] = (1 + 0.5 * std::sin(2 * kPi * b * r / x + ph)) * std::polar(1.0, -dot(xi, x0));
      }
    }
    double fn = l2_norm(f);
    if (fn == 0) throw UsageError("strichartz_fit: no lattice modes in the block");
    Field fp = to_physical(f);
    double top = cube ? 0.75 * c.lambda + 0.5 * x : x;
    int nt = int(std::ceil(c.T * c.oversample * top));
    auto [full, half] = lqlr(fp, +1, cube ? 0.0 : c.m, c.q, c.r, c.T, nt);
    double inc = 1 - half / full;
    rep.x.push_back(x);
    rep.y.push_back(full / fn);
    rep.plateau_increment.push_back(inc);
    if (inc > c.plateau_tol) {
      rep.plateaued = false;
      rep.notes.push_back("not plateaued at " + rep.x_label + "=" + std::to_string(x) + " (increment " +
                          std::to_string(inc) + ")");
    }
  }
  rep.refit();
  rep.max_ratio = *std::max_element(rep.y.begin(), rep.y.end());
  return rep;
}

ScalingReport dirac_strichartz_plateau(const Field& psi0, double M, const std::vector<double>& Ts, double dt) {
  if (!psi0.is_spinor()) throw UsageError("dirac_strichartz_plateau: spinor field required");
  if (Ts.empty() || !(dt > 0)) throw UsageError("dirac_strichartz_plateau: empty window list");
  if (!std::is_sorted(Ts.begin(), Ts.end())) throw UsageError("dirac_strichartz_plateau: windows must increase");
  Field w = bessel_potential(psi0.rep == Rep::physical ? psi0 : to_physical(psi0), -0.5, 1.0);
  ScalingReport rep;
  rep.name = "dirac_strichartz_plateau";
  rep.x_label = "T";
  rep.y_label = "D^{-1/2}_0([0,T])";
  double acc = 0, t = 0, prev = std::pow(lebesgue_norm(w, 4), 4);
  for (double T : Ts) {
    int steps = std::max(1, int(std::ceil((T - t) / dt - 1e-9)));
    double h = (T - t) / steps;
    for (int j = 1; j <= steps; ++j) {
      double v = std::pow(lebesgue_norm(dirac_free(w, t + j * h, M), 4), 4);
      acc += 0.5 * h * (prev + v);
      prev = v;
    }
    t = T;
    rep.x.push_back(T);
    rep.y.push_back(std::pow(acc, 0.25));
  }
  for (std::size_t i = 2; i < rep.y.size(); ++i) {
    double r = (rep.y[i] - rep.y[i - 1]) / (rep.y[i - 1] - rep.y[i - 2]);
    rep.notes.push_back("increment ratio " + std::to_string(r));
  }
  rep.max_ratio = rep.y.back() / l2_norm(psi0);
  if (rep.x.size() >= 2) rep.refit();
  return rep;
}

// ---- packet integrals ---------------------------------------------------------------

double packet_l2(const WavePacketSum& u, double L) {
  double s = 0;
  for (const auto& p : u.packets)
    for (auto z : p.v) s += std::norm(z);
  return std::sqrt(s * L * L * L);
}

double bilinear_l2(const WavePacketSum& psi, const WavePacketSum& phi, double mu, double L, double T) {
  if (psi.comps != 4 || phi.comps != 4) throw UsageError("bilinear_l2: spinor packets required");
  const double dk = 2 * kPi / L;
  Groups g;
  for (const auto& p : psi.packets)
    for (const auto& q : phi.packets) {
      Key d = diff(key_of(q.xi, dk), key_of(p.xi, dk));
      if (!in_block(norm(to_vec(d, dk)), mu)) continue;
      // conj(psi) phi carries e^{i t (tau_phi - tau_psi)}
      g[d].push_back({spin_dot(p, q, true), p.tau - q.tau});
    }
  return std::sqrt(group_energy(g, T) * L * L * L);
}

cplx trilinear_integral(const WavePacketSum& phi, const WavePacketSum& psi, const WavePacketSum& varphi, double L,
                        double T) {
  if (phi.comps != 1 || psi.comps != 4 || varphi.comps != 4)
    throw UsageError("trilinear_integral: scalar phi and spinor psi, varphi required");
  const double dk = 2 * kPi / L;
  std::map<Key, std::vector<const Packet*>> by_xi;
  for (const auto& p : psi.packets) by_xi[key_of(p.xi, dk)].push_back(&p);
  cplx acc = 0;
  for (const auto& a : phi.packets)
    for (const auto& b : varphi.packets) {
      Key z = key_of(a.xi, dk), e = key_of(b.xi, dk);
      auto it = by_xi.find({z[0] + e[0], z[1] + e[1], z[2] + e[2]});
      if (it == by_xi.end()) continue;
      for (const Packet* c : it->second)
        acc += a.v[0] * spin_dot(*c, b, true) * time_integral(-(a.tau - c->tau + b.tau), T);
    }
  return acc * (L * L * L);
}

double packet_l4(const WavePacketSum& u, double L, double T) {
  const double dk = 2 * kPi / L;
  Groups g;
  for (const auto& p : u.packets)
    for (const auto& q : u.packets)
      g[diff(key_of(q.xi, dk), key_of(p.xi, dk))].push_back({spin_dot(p, q, false), p.tau - q.tau});
  return std::pow(group_energy(g, T) * L * L * L, 0.25);
}

// ---- bilinear ------------------------------------------------------------------------

ScalingReport bilinear_fit(const BilinearConfig& c) {
  check_ratios(c.ratios, "bilinear_fit");
  if (std::abs(c.s1) != 1 || std::abs(c.s2) != 1) throw UsageError("bilinear_fit: signs must be +-1");
  if (!(c.M > 0) || !(c.mu > 0) || !(c.dk > 0) || c.draws < 1) throw UsageError("bilinear_fit: bad configuration");
  const double L = 2 * kPi / c.dk, T = L / 2;
  const double mu = c.mu;

  auto cube_modes = [&](const Vec3& ctr) {
    std::vector<Key> out;
    int lo[3], hi[3];
    for (int a = 0; a < 3; ++a) {
      lo[a] = int(std::ceil((ctr[a] - mu / 2) / c.dk - 1e-9));
      hi[a] = int(std::ceil((ctr[a] + mu / 2) / c.dk - 1e-9)) - 1;
    }
    for (int i = lo[0]; i <= hi[0]; ++i)
      for (int j = lo[1]; j <= hi[1]; ++j)
        for (int k = lo[2]; k <= hi[2]; ++k) out.push_back({i, j, k});
    return out;
  };

  ScalingReport rep;
  rep.name = "bilinear";
  rep.x_label = "mu/lambda";
  rep.y_label = "||P_mu(psi-bar phi)|| / (mu ||psi0|| ||phi0||)";
  for (double ratio : c.ratios) {
    const double lam = mu / ratio;
    Vec3 cp{0.75 * lam, 0, 0}, cf{0.75 * lam, 0.75 * mu, 0};
    auto kp = cube_modes(cp), kf = cube_modes(cf);
    if (kp.empty() || kf.empty()) throw UsageError("bilinear_fit: cube holds no lattice modes");
    // aim both packets at the origin at T/2: x0 = -v T/2, v = s c / <c>_M
    Vec3 xp = (-0.5 * T * c.s1 / bracket(cp, c.M)) * cp;
    Vec3 xf = (-0.5 * T * c.s2 / bracket(cf, c.M)) * cf;
    std::vector<double> vals(c.draws);
#pragma omp parallel for schedule(dynamic)
    for (int draw = 0; draw < c.draws; ++draw) {
      std::mt19937_64 rng(c.seed * 7919ULL + draw * 104729ULL + std::uint64_t(lam * 16));
      Vec4 wp = random_spinor(rng), wf = random_spinor(rng);
      auto build = [&](const std::vector<Key>& ks, const Vec3& ctr, const Vec3& x0, const Vec4& w, int s) {
        std::vector<Vec4> v;
        for (const auto& k : ks) {
          Vec3 xi = to_vec(k, c.dk);
          double e = std::exp(-dot(xi - ctr, xi - ctr) / (2 * std::pow(mu / 4, 2)));
          v.push_back(dirac_projector_matrix(xi, s, c.M) * w * (e * std::polar(1.0, -dot(xi, x0))));
        }
        return free_dirac_packets(ks, v, c.dk, s, c.M);
      };
      WavePacketSum P = build(kp, cp, xp, wp, c.s1), F = build(kf, cf, xf, wf, c.s2);
      vals[draw] = bilinear_l2(P, F, mu, L, T) / (mu * packet_l2(P, L) * packet_l2(F, L));
    }
    rep.x.push_back(ratio);
    rep.y.push_back(*std::max_element(vals.begin(), vals.end()));
  }
  rep.refit();
  rep.max_ratio = *std::max_element(rep.y.begin(), rep.y.end());
  rep.notes.push_back("signs=(" + std::to_string(c.s1) + "," + std::to_string(c.s2) + ") draws=" +
                      std::to_string(c.draws) + " seed=" + std::to_string(c.seed));
  return rep;
}

// ---- trilinear ------------------------------------------------------------------------

TrilinearReport trilinear_ratio(const TrilinearConfig& c) {
  check_ratios(c.ratios, "trilinear_ratio");
  if (c.draws < 30) throw UsageError("trilinear_ratio: samples per cell must be >= 30");
  if (std::abs(c.s1) != 1 || std::abs(c.s2) != 1) throw UsageError("trilinear_ratio: signs must be +-1");
  if (!(c.M > 0) || !(c.mu > 0) || !(c.dk > 0) || c.packets < 1) throw UsageError("trilinear_ratio: bad configuration");
  if (c.theta0_grid.empty()) throw UsageError("trilinear_ratio: empty theta0 grid");
  const double L = 2 * kPi / c.dk, T = L / 2;
  const double mu = c.mu;
  const int K = c.packets;

  struct Sample {
    double lhs, nnn, amp;
  };
  std::vector<std::vector<Sample>> cells(c.ratios.size(), std::vector<Sample>(c.draws));

  for (std::size_t ci = 0; ci < c.ratios.size(); ++ci) {
    const double lam = mu / c.ratios[ci];
#pragma omp parallel for schedule(dynamic)
    for (int draw = 0; draw < c.draws; ++draw) {
      std::mt19937_64 rng(c.seed * 15485863ULL + ci * 32452843ULL + draw);
      auto sample_block = [&](double nu) {
        int R = int(std::ceil(nu / c.dk));
        std::uniform_int_distribution<int> u(-R, R);
        for (;;) {
          Key k{u(rng), u(rng), u(rng)};
          if (in_block(norm(to_vec(k, c.dk)), nu)) return k;
        }
      };
      std::vector<Key> kz, ke, kx;
      std::vector<Vec4> ve, vx;
      WavePacketSum phi;
      for (int a = 0; a < K; ++a) {
        Key z;
        do z = sample_block(mu);
        while (std::find(kz.begin(), kz.end(), z) != kz.end());
        kz.push_back(z);
        Vec3 zeta = to_vec(kz.back(), c.dk);
        phi.add(-bracket(zeta, 1.0), zeta, {cnormal(rng)});
      }
      for (int b = 0; b < K; ++b) {
        Key e;
        do e = sample_block(lam);
        while (std::find(ke.begin(), ke.end(), e) != ke.end());
        ke.push_back(e);
        ve.push_back(dirac_projector_matrix(to_vec(ke.back(), c.dk), c.s2, c.M) * random_spinor(rng));
      }
      std::uniform_int_distribution<int> pick(0, K - 1);
      int tries = 0;
      while (int(kx.size()) < K && tries++ < 10000) {
        const Key& z = kz[pick(rng)];
        const Key& e = ke[pick(rng)];
        Key x{z[0] + e[0], z[1] + e[1], z[2] + e[2]};
        Vec3 xi = to_vec(x, c.dk);
        if (!in_block(norm(xi), lam) || std::find(kx.begin(), kx.end(), x) != kx.end()) continue;
        kx.push_back(x);
        vx.push_back(dirac_projector_matrix(xi, c.s1, c.M) * random_spinor(rng));
      }
      WavePacketSum var = free_dirac_packets(ke, ve, c.dk, c.s2, c.M);
      WavePacketSum psi = free_dirac_packets(kx, vx, c.dk, c.s1, c.M);
      double lhs = std::abs(trilinear_integral(phi, psi, var, L, T));
      double nnn = std::sqrt(mu) * packet_l2(phi, L) * packet_l2(psi, L) * packet_l2(var, L);
      double amp = packet_l4(phi, L, T) * packet_l4(psi, L, T) * packet_l4(var, L, T) / lam;
      cells[ci][draw] = {lhs, nnn, amp};
    }
  }

  TrilinearReport rep;
  rep.name = "trilinear";
  rep.x_label = "mu/lambda";
  rep.y_label = "max |int phi psi-bar varphi| / (mu^{1/2} N N N)";
  auto cell_max = [&](double th) {
    std::vector<double> out;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      double gain = std::pow(c.ratios[ci], 0.1), mx = 0;
      for (const auto& s : cells[ci])
        if (s.nnn > 0) mx = std::max(mx, s.lhs / (gain * std::pow(s.amp, th) * std::pow(s.nnn, 1 - th)));
      out.push_back(mx);
    }
    return out;
  };
  double best_spread = INFINITY;
  for (double th : c.theta0_grid) {
    auto m = cell_max(th);
    double lo = *std::min_element(m.begin(), m.end()), hi = *std::max_element(m.begin(), m.end());
    double spread = lo > 0 ? hi / lo : INFINITY;
    rep.notes.push_back("theta0=" + std::to_string(th) + " max ratio=" + std::to_string(hi) +
                        " spread=" + std::to_string(spread));
    if (spread < best_spread) {
      best_spread = spread;
      rep.best_theta0 = th;
      rep.cell_max_ratio = m;
    }
  }
  rep.max_ratio = *std::max_element(rep.cell_max_ratio.begin(), rep.cell_max_ratio.end());
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    double mx = 0;
    for (const auto& s : cells[ci])
      if (s.nnn > 0) mx = std::max(mx, s.lhs / s.nnn);
    rep.x.push_back(c.ratios[ci]);
    rep.y.push_back(mx);
  }
  rep.refit();
  rep.notes.push_back("signs=(" + std::to_string(c.s1) + "," + std::to_string(c.s2) + ") draws=" +
                      std::to_string(c.draws) + " seed=" + std::to_string(c.seed) +
                      " best theta0=" + std::to_string(rep.best_theta0));
  return rep;
}

}  // namespace dkg
