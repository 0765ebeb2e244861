#include "dkg/multipliers.hpp"

#include <cmath>
#include <set>

#include "dkg/fft.hpp"
#include "dkg/gamma.hpp"
#include "dkg/kernels.hpp"

namespace dkg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Run fn on a Fourier-representation copy and return in the input representation.
Field in_fourier(const Field& f, const std::function<void(Field&)>& fn) {
  Field g = f;
  bool phys = g.rep == Rep::physical;
  if (phys) to_fourier_inplace(g);
  fn(g);
  if (phys) to_physical_inplace(g);
  return g;
}

}  // namespace

double bracket(const Vec3& xi, double m) { return std::sqrt(m * m + dot(xi, xi)); }

Field apply_symbol(const Field& f, const std::function<cplx(const Vec3&)>& sym) {
  return in_fourier(f, [&](Field& g) {
    for (int c = 0; c < g.comps; ++c) kernels::apply_symbol(g.grid, g.carrier, g.comp(c), sym);
  });
}

Field apply_radial(const Field& f, const std::function<double(double)>& sym) {
  return in_fourier(f, [&](Field& g) {
    for (int c = 0; c < g.comps; ++c)
      kernels::apply_symbol(g.grid, g.carrier, g.comp(c), [&](const Vec3& xi) { return cplx(sym(norm(xi))); });
  });
}

Field littlewood_paley(const Field& f, double lambda, const DyadicProfile& p) {
  if (!is_dyadic(lambda) || lambda < 1) throw UsageError("littlewood_paley: lambda must be a dyadic integer");
  return apply_radial(f, [&](double r) { return p.block(r, lambda); });
}

std::vector<double> lp_blocks(const GridSpec& g, const Vec3& carrier, const DyadicProfile& p) {
  double rmax = 0;
  for (int a = -1; a <= 1; a += 2)
    for (int b = -1; b <= 1; b += 2)
      for (int c = -1; c <= 1; c += 2) {
        Vec3 corner{a * g.nyquist(), b * g.nyquist(), c * g.nyquist()};
        rmax = std::max(rmax, norm(carrier + corner));
      }
  std::vector<double> out{1.0};
  double top = p.kind == ProfileKind::sharp ? rmax : 2.0 * rmax;
  for (double l = 2.0; l / 2.0 < top; l *= 2.0) out.push_back(l);
  return out;
}

Field dirac_projector(const Field& f, int sign, double M) {
  if (!(M > 0)) throw UsageError("dirac_projector: M must be positive");
  if (!f.is_spinor()) throw UsageError("dirac_projector: spinor field required");
  return in_fourier(f, [&](Field& g) {
    kernels::apply_spinor(g.grid, g.carrier, g.data.data(), [&](const Vec3& xi, cplx* v) {
      Vec4 x(v[0], v[1], v[2], v[3]);
      Vec4 y = dirac_projector_matrix(xi, sign, M) * x;
      for (int c = 0; c < 4; ++c) v[c] = y(c);
    });
  });
}

Field bessel_potential(const Field& f, double s, double m) {
  if (m < 0) throw UsageError("bessel_potential: m must be nonnegative");
  if (m == 0 && s < 0 && f.grid.on_lattice(-1.0 * f.carrier))
    throw UsageError("bessel_potential: m = 0 with s < 0 and a zero mode present");
  return apply_symbol(f, [&](const Vec3& xi) -> cplx {
    double b = bracket(xi, m);
    if (b == 0.0) return s == 0 ? 1.0 : 0.0;
    return std::pow(b, s);
  });
}

Field inverse_helmholtz(const Field& f, double m) {
  if (!(m > 0)) throw UsageError("inverse_helmholtz: m must be positive");
  return apply_radial(f, [&](double r) { return 1.0 / (m * m + r * r); });
}

Field helmholtz(const Field& f, double m) {
  return apply_radial(f, [&](double r) { return m * m + r * r; });
}

bool dealias_keep(const GridSpec& g, const Vec3& xi) {
  double kmax = g.n / 3.0 * g.dk();
  return dot(xi, xi) <= kmax * kmax * (1 + 1e-12);
}

Field dealias(const Field& f) {
  return apply_symbol(f, [&](const Vec3& xi) { return cplx(dealias_keep(f.grid, xi) ? 1.0 : 0.0); });
}

// ---- modulation ----------------------------------------------------------------

WavePacketSum modulation_projector(const WavePacketSum& w, double d, int sign, double m, bool le,
                                   const DyadicProfile& p) {
  if (!is_dyadic(d)) throw UsageError("modulation_projector: d must be dyadic");
  WavePacketSum out;
  out.comps = w.comps;
  out.carrier = w.carrier;
  for (const auto& pk : w.packets) {
    double dist = std::abs(pk.tau + sign * bracket(pk.xi, m));
    double wt = p.modulation(dist, d, le);
    if (wt == 0.0) continue;
    Packet q = pk;
    for (auto& c : q.v) c *= wt;
    out.packets.push_back(std::move(q));
  }
  return out;
}

double hann_mean(int nt, double a) {
  double s = 0;
  for (int j = 0; j < nt; ++j) s += std::pow(0.5 - 0.5 * std::cos(2 * kPi * j / nt), a);
  return std::pow(s / nt, 1.0 / a);
}

double windowed_min_d(const TimeGrid& tg) {
  double lo = 4 * kPi / tg.T();
  return std::exp2(std::ceil(std::log2(lo)));
}

Trajectory modulation_projector(const Trajectory& u, double d, int sign, double m, bool le, const DyadicProfile& p) {
  if (!is_dyadic(d)) throw UsageError("modulation_projector: d must be dyadic");
  const int nt = u.time.nt;
  if (nt < 8) throw UsageError("modulation_projector: windowed mode needs at least 8 samples");
  const GridSpec& g = u.grid();
  const std::size_t N = g.size();
  const int comps = u.comps();
  const std::size_t row = N * comps;
  const Vec3 carrier = u.frames.front().carrier;
  std::vector<double> br(N);
  for (std::size_t i = 0; i < N; ++i) br[i] = bracket(carrier + g.mode(i), m);

  std::vector<cplx> block(row * nt);
  for (int j = 0; j < nt; ++j) {
    Field f = u.frames[j].rep == Rep::fourier ? u.frames[j] : to_fourier(u.frames[j]);
    double t = u.time.time(j);
    double wj = 0.5 - 0.5 * std::cos(2 * kPi * j / nt);
    for (int c = 0; c < comps; ++c)
      for (std::size_t i = 0; i < N; ++i)
        block[j * row + c * N + i] = wj * std::polar(1.0, sign * t * br[i]) * f.comp(c)[i];
  }
  // e^{i kappa t} convention: forward transform with sign -1 recovers kappa.
  fft_time(block.data(), nt, row, -1);
  const double T = u.time.T();
  for (int q = 0; q < nt; ++q) {
    int qq = q < nt / 2 ? q : q - nt;
    double kappa = 2 * kPi * qq / T;
    double wt = p.modulation(std::abs(kappa), d, le) / nt;
    for (std::size_t i = 0; i < row; ++i) block[q * row + i] *= wt;
  }
  fft_time(block.data(), nt, row, +1);

  std::vector<Field> frames;
  frames.reserve(nt + 1);
  for (int j = 0; j <= nt; ++j) {
    int src = j % nt;
    double t = u.time.time(j);
    Field f(g, comps, Rep::fourier);
    f.carrier = carrier;
    for (int c = 0; c < comps; ++c)
      for (std::size_t i = 0; i < N; ++i)
        f.comp(c)[i] = std::polar(1.0, -sign * t * br[i]) * block[src * row + c * N + i];
    if (u.frames[j].rep == Rep::physical) to_physical_inplace(f);
    frames.push_back(std::move(f));
  }
  return Trajectory(u.time, std::move(frames));
}

// ---- caps and cubes ------------------------------------------------------------

int CapFamily::cell(const Vec3& xi) const {
  double r = norm(xi);
  if (r == 0.0) return 0;
  int best = 0;
  double bd = -2;
  for (int i = 0; i < int(centres.size()); ++i) {
    double c = dot(centres[i], xi) / r;
    if (c > bd) {
      bd = c;
      best = i;
    }
  }
  return best;
}

CapFamily make_caps(double alpha) {
  if (!(alpha > 0) || alpha > 1) throw UsageError("make_caps: angular radius must lie in (0, 1]");
  // cube-sphere cell centres; largest cell half-diagonal is about sqrt(2)/m
  int m = int(std::ceil(std::sqrt(2.0) / alpha));
  CapFamily f;
  f.alpha = alpha;
  for (int axis = 0; axis < 3; ++axis)
    for (int s = -1; s <= 1; s += 2)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          double u = -1 + (2 * a + 1.0) / m, v = -1 + (2 * b + 1.0) / m;
          Vec3 p{};
          p[axis] = s;
          p[(axis + 1) % 3] = u;
          p[(axis + 2) % 3] = v;
          f.centres.push_back((1.0 / norm(p)) * p);
        }
  return f;
}

Field cap_projector(const Field& f, const CapFamily& caps, int kappa) {
  if (kappa < 0 || kappa >= int(caps.centres.size())) throw UsageError("cap_projector: degenerate cap index");
  return apply_symbol(f, [&](const Vec3& xi) { return cplx(caps.cell(xi) == kappa ? 1.0 : 0.0); });
}

bool Cube::contains(const Vec3& xi) const {
  for (int a = 0; a < 3; ++a)
    if (int(std::floor(xi[a] / mu)) != c[a]) return false;
  return true;
}

Vec3 Cube::centre() const { return {(c[0] + 0.5) * mu, (c[1] + 0.5) * mu, (c[2] + 0.5) * mu}; }

Cube cube_of(const Vec3& xi, double mu) {
  if (!(mu > 0)) throw UsageError("cube_of: degenerate cube");
  return {{int(std::floor(xi[0] / mu)), int(std::floor(xi[1] / mu)), int(std::floor(xi[2] / mu))}, mu};
}

Field cube_projector(const Field& f, const Cube& q) {
  if (!(q.mu > 0)) throw UsageError("cube_projector: degenerate cube");
  return apply_symbol(f, [&](const Vec3& xi) { return cplx(q.contains(xi) ? 1.0 : 0.0); });
}

std::vector<Cube> cube_cover(const GridSpec& g, double mu, const Vec3& carrier) {
  std::set<std::array<int, 3>> seen;
  std::vector<Cube> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Cube q = cube_of(carrier + g.mode(i), mu);
    if (seen.insert(q.c).second) out.push_back(q);
  }
  return out;
}

}  // namespace dkg
