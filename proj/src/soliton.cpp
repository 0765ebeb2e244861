#include "dkg/soliton.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>

#include "dkg/gamma.hpp"
#include "dkg/kernels.hpp"
#include "dkg/multipliers.hpp"
#include "dkg/norms.hpp"
#include "dkg/trajectory.hpp"

namespace dkg {

namespace {

// Natural cubic spline through mirrored samples; linear in the samples, so
// every profile is a combination of P basis splines.
class SplineBasis {
 public:
  SplineBasis(const std::vector<double>& r, int parity) : P_(int(r.size())) {
    for (int i = P_ - 1; i >= 0; --i) x_.push_back(-r[i]);
    if (parity < 0) x_.push_back(0.0);
    for (int i = 0; i < P_; ++i) x_.push_back(r[i]);
    const int K = int(x_.size());
    d2_.assign(P_, std::vector<double>(K, 0.0));
    for (int i = 0; i < P_; ++i) {
      std::vector<double> y(K, 0.0);
      y[K - 1 - (P_ - 1 - i)] = 1.0;
      y[P_ - 1 - i] = parity > 0 ? 1.0 : -1.0;
      vals_.push_back(y);
      d2_[i] = second_derivatives(y);
    }
  }

  // weights w_i with value(x) = sum_i w_i sample_i
  std::vector<double> weights(double x) const {
    std::vector<double> w(P_, 0.0);
    x = std::abs(x);
    if (x > x_.back()) return w;
    int k = int(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    k = std::clamp(k, 0, int(x_.size()) - 2);
    double h = x_[k + 1] - x_[k];
    double a = (x_[k + 1] - x) / h, b = (x - x_[k]) / h;
    for (int i = 0; i < P_; ++i) {
      const auto& y = vals_[i];
      const auto& m = d2_[i];
      w[i] = a * y[k] + b * y[k + 1] + ((a * a * a - a) * m[k] + (b * b * b - b) * m[k + 1]) * h * h / 6.0;
    }
    return w;
  }

 private:
  std::vector<double> second_derivatives(const std::vector<double>& y) const {
    const int K = int(x_.size());
    std::vector<double> m(K, 0.0), c(K, 0.0), d(K, 0.0);
    // Thomas algorithm for the interior equations, natural ends
    for (int k = 1; k < K - 1; ++k) {
      double h0 = x_[k] - x_[k - 1], h1 = x_[k + 1] - x_[k];
      double diag = 2 * (h0 + h1), rhs = 6 * ((y[k + 1] - y[k]) / h1 - (y[k] - y[k - 1]) / h0);
      double lower = h0;
      if (k > 1) {
        diag -= lower * c[k - 1];
        rhs -= lower * d[k - 1];
      }
      c[k] = h1 / diag;
      d[k] = rhs / diag;
    }
    for (int k = K - 2; k >= 1; --k) m[k] = d[k] - c[k] * m[k + 1];
    return m;
  }

  int P_;
  std::vector<double> x_;
  std::vector<std::vector<double>> vals_, d2_;
};

struct ShellInfo {
  std::map<long, std::vector<std::size_t>> shells;  // |j|^2 -> node indices
};

const ShellInfo& shells_of(const GridSpec& g) {
  static thread_local std::map<std::pair<int, double>, ShellInfo> cache;
  auto key = std::make_pair(g.n, g.L);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ShellInfo s;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    int k = int(idx % g.n) - g.n / 2, j = int((idx / g.n) % g.n) - g.n / 2,
        i = int(idx / (std::size_t(g.n) * g.n)) - g.n / 2;
    s.shells[long(i) * i + long(j) * j + long(k) * k].push_back(idx);
  }
  return cache.emplace(key, std::move(s)).first->second;
}

// lower-pair angular section (w1 + i w2, w3) at a node
inline void section(const Vec3& x, cplx& s0, cplx& s1) {
  double r = norm(x);
  if (r == 0) {
    s0 = s1 = 0.0;
    return;
  }
  s0 = cplx(x[0] / r, x[1] / r);
  s1 = x[2] / r;
}

// Basis spinor fields for one profile sample: which = 0 (upper f) or 1 (lower g).
struct Embedder {
  const GridSpec& g;
  SplineBasis even, odd;
  double rmax;
  std::map<long, std::vector<double>> wf, wg;

  Embedder(const RadialProfilePair& p, const GridSpec& grid)
      : g(grid), even(p.r, +1), odd(p.r, -1), rmax(p.rmax()) {
    for (const auto& [r2, nodes] : shells_of(g).shells) {
      double r = g.h() * std::sqrt(double(r2));
      wf[r2] = even.weights(r);
      wg[r2] = odd.weights(r);
    }
  }

  Field embed(const std::vector<cplx>& f, const std::vector<cplx>& gv) const {
    Field psi(g, 4);
    for (const auto& [r2, nodes] : shells_of(g).shells) {
      cplx fv = 0, gval = 0;
      const auto& a = wf.at(r2);
      const auto& b = wg.at(r2);
      for (std::size_t i = 0; i < f.size(); ++i) {
        fv += a[i] * f[i];
        gval += b[i] * gv[i];
      }
      for (std::size_t idx : nodes) {
        cplx s0, s1;
        section(g.node(idx), s0, s1);
        psi.comp(1)[idx] = fv;
        psi.comp(2)[idx] = gval * s0;
        psi.comp(3)[idx] = gval * s1;
      }
    }
    return psi;
  }

  // basis field for real parameter k of the 4P vector (Re f, Im f, Re g, Im g)
  Field basis(int k, int P) const {
    std::vector<cplx> f(P, 0.0), gv(P, 0.0);
    int blk = k / P, i = k % P;
    cplx one = (blk % 2 == 0) ? cplx(1.0) : cplx(0, 1);
    (blk < 2 ? f : gv)[i] = one;
    return embed(f, gv);
  }
};

double real_inner(const Field& a, const Field& b) { return l2_inner(a, b).real(); }

// per-mode (sgn_omega * omega gamma^0 + adj * gamma^j xi_j + M)
Field dirac_symbol(const Field& psi, double w0, double adj, double M) {
  const auto& G = gammas();
  Field f = to_fourier(psi);
  kernels::apply_spinor(f.grid, f.carrier, f.data.data(), [&](const Vec3& xi, cplx* v) {
    Vec4 x(v[0], v[1], v[2], v[3]);
    Mat4 A = w0 * G[0] + M * Mat4::Identity() + adj * (xi[0] * G[1] + xi[1] * G[2] + xi[2] * G[3]);
    Vec4 y = A * x;
    for (int c = 0; c < 4; ++c) v[c] = y(c);
  });
  return to_physical(f);
}

Field density(const Field& psi) {
  Field rho = dirac_bilinear(psi, psi);
  for (auto& v : rho.data) v = v.real();
  return rho;
}

Field times_scalar(const Field& phi, const Field& psi) {
  Field out = psi;
  for (int c = 0; c < 4; ++c)
    for (std::size_t i = 0; i < psi.nodes(); ++i) out.comp(c)[i] *= phi.data[i].real();
  return out;
}

void check_omega(double omega, double M) {
  if (!(omega > 0 && omega < M)) throw UsageError("stationarity: omega must lie in (0, M)");
}

// d/d eps R(psi + eps w)
Field residual_linearisation(const Field& psi, const Field& phi, const Field& w, double omega, double M, double m) {
  Field out = stationarity_linear(w, omega, M);
  out -= times_scalar(phi, w);
  Field drho = dirac_bilinear(psi, w);
  for (auto& v : drho.data) v = 2.0 * v.real();
  Field dphi = inverse_helmholtz(drho, m);
  out -= times_scalar(dphi, psi);
  return out;
}

// adjoint of residual_linearisation for the real inner product
Field residual_adjoint(const Field& psi, const Field& phi, const Field& v, double omega, double M, double m) {
  Field out = dirac_symbol(v, -omega, -1.0, M);
  out -= times_scalar(phi, v);
  Field q(psi.grid, 1);
  for (std::size_t i = 0; i < psi.nodes(); ++i) {
    cplx s = 0;
    for (int c = 0; c < 4; ++c) s += std::conj(psi.comp(c)[i]) * v.comp(c)[i];
    q.data[i] = s.real();
  }
  Field kq = inverse_helmholtz(q, m);
  Field g0psi = psi;
  for (int c = 2; c < 4; ++c)
    for (auto* p = g0psi.comp(c); p != g0psi.comp(c) + psi.nodes(); ++p) *p = -*p;
  out -= cplx(2.0) * times_scalar(kq, g0psi);
  return out;
}

}  // namespace

// ---- profiles -----------------------------------------------------------------

cplx RadialProfilePair::f_at(double x) const {
  auto w = SplineBasis(r, +1).weights(x);
  cplx s = 0;
  for (int i = 0; i < size(); ++i) s += w[i] * f[i];
  return s;
}

cplx RadialProfilePair::g_at(double x) const {
  auto w = SplineBasis(r, -1).weights(x);
  cplx s = 0;
  for (int i = 0; i < size(); ++i) s += w[i] * g[i];
  return s;
}

void RadialProfilePair::validate() const {
  if (r.size() < 2 || f.size() != r.size() || g.size() != r.size())
    throw UsageError("RadialProfilePair: inconsistent sample counts");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!(r[i] > 0) || (i > 0 && !(r[i] > r[i - 1]))) throw UsageError("RadialProfilePair: radii must increase from r > 0");
  if (!(omega > 0 && omega < M)) throw UsageError("RadialProfilePair: omega must lie in (0, M)");
  if (!(m > 0)) throw UsageError("RadialProfilePair: m must be positive");
}

RadialProfilePair uniform_profile(int P, double rmax, double omega, double M, double m) {
  RadialProfilePair p;
  for (int i = 1; i <= P; ++i) p.r.push_back(rmax * i / P);
  p.f.assign(P, 0.0);
  p.g.assign(P, 0.0);
  p.omega = omega;
  p.M = M;
  p.m = m;
  return p;
}

std::vector<double> spline_weights(const std::vector<double>& r, double x, int parity) {
  return SplineBasis(r, parity).weights(x);
}

RadialProfilePair gaussian_profile(int P, double rmax, double omega, double M, double m, double amp, double width) {
  RadialProfilePair p = uniform_profile(P, rmax, omega, M, m);
  for (int i = 0; i < P; ++i) {
    double r = p.r[i];
    double f = amp * std::exp(-r * r / (2 * width * width));
    p.f[i] = f;
    // lower pair ~ -i (s.grad) upper / (M + omega)
    p.g[i] = cplx(0, r * f / (width * width * (M + omega)));
  }
  return p;
}

Field partial_wave_embed(const RadialProfilePair& p, const GridSpec& g, double edge_tol) {
  p.validate();
  double peak = 0;
  for (int i = 0; i < p.size(); ++i) peak = std::max({peak, std::abs(p.f[i]), std::abs(p.g[i])});
  double edge = std::max(std::abs(p.f.back()), std::abs(p.g.back()));
  if (edge > edge_tol * peak) throw UsageError("partial_wave_embed: profile not decayed at box edge");
  if (p.rmax() > std::sqrt(3.0) * g.L / 2 * (1 + 1e-12)) throw UsageError("partial_wave_embed: profile extends beyond L/2");
  return Embedder(p, g).embed(p.f, p.g);
}

// ---- partial-wave class ----------------------------------------------------------

Field h_project(const Field& psi0) {
  if (!psi0.is_spinor()) throw UsageError("h_project: spinor field required");
  Field psi = psi0.rep == Rep::physical ? psi0 : to_physical(psi0);
  const GridSpec& g = psi.grid;
  Field out(g, 4);
  for (const auto& [r2, nodes] : shells_of(g).shells) {
    cplx a = 0, b = 0;
    for (std::size_t idx : nodes) {
      cplx s0, s1;
      section(g.node(idx), s0, s1);
      a += psi.comp(1)[idx];
      b += std::conj(s0) * psi.comp(2)[idx] + std::conj(s1) * psi.comp(3)[idx];
    }
    a /= double(nodes.size());
    b /= double(nodes.size());
    for (std::size_t idx : nodes) {
      cplx s0, s1;
      section(g.node(idx), s0, s1);
      out.comp(1)[idx] = a;
      out.comp(2)[idx] = b * s0;
      out.comp(3)[idx] = b * s1;
    }
  }
  if (psi0.rep == Rep::fourier) to_fourier_inplace(out);
  return out;
}

double h_complement_norm(const Field& psi) {
  Field p = psi.rep == Rep::physical ? psi : to_physical(psi);
  return l2_norm(p - h_project(p));
}

// ---- stationary states ------------------------------------------------------------

Field phi_from_spinor(const Field& psi, double m) {
  if (!(m > 0)) throw UsageError("phi_from_spinor: m must be positive");
  Field p = psi.rep == Rep::physical ? psi : to_physical(psi);
  Field phi = inverse_helmholtz(density(p), m);
  for (auto& v : phi.data) v = v.real();
  return phi;
}

Field stationarity_linear(const Field& psi, double omega, double M) {
  check_omega(omega, M);
  return dirac_symbol(psi.rep == Rep::physical ? psi : to_physical(psi), -omega, 1.0, M);
}

Field stationarity_residual_field(const Field& psi0, double omega, double M, double m) {
  check_omega(omega, M);
  Field psi = psi0.rep == Rep::physical ? psi0 : to_physical(psi0);
  Field r = stationarity_linear(psi, omega, M);
  r -= times_scalar(phi_from_spinor(psi, m), psi);
  return r;
}

double stationarity_residual(const Field& psi, double omega, double M, double m) {
  return l2_norm(stationarity_residual_field(psi, omega, M, m));
}

std::vector<double> profile_params(const RadialProfilePair& p) {
  std::vector<double> x;
  for (auto v : p.f) x.push_back(v.real());
  for (auto v : p.f) x.push_back(v.imag());
  for (auto v : p.g) x.push_back(v.real());
  for (auto v : p.g) x.push_back(v.imag());
  return x;
}

void set_profile_params(RadialProfilePair& p, const std::vector<double>& x) {
  const int P = p.size();
  if (int(x.size()) != 4 * P) throw UsageError("set_profile_params: wrong parameter count");
  for (int i = 0; i < P; ++i) {
    p.f[i] = cplx(x[i], x[P + i]);
    p.g[i] = cplx(x[2 * P + i], x[3 * P + i]);
  }
}

std::vector<double> residual_gradient(const RadialProfilePair& p, const GridSpec& g) {
  p.validate();
  Embedder E(p, g);
  Field psi = E.embed(p.f, p.g);
  Field phi = phi_from_spinor(psi, p.m);
  Field R = stationarity_linear(psi, p.omega, p.M) - times_scalar(phi, psi);
  Field adj = residual_adjoint(psi, phi, R, p.omega, p.M, p.m);
  std::vector<double> grad(4 * p.size());
  for (int k = 0; k < 4 * p.size(); ++k) grad[k] = 2 * real_inner(E.basis(k, p.size()), adj);
  return grad;
}

RefineResult refine_stationary(const RadialProfilePair& init, const GridSpec& g, double tol, int max_iter) {
  init.validate();
  const int P = init.size();
  const double omega = init.omega, M = init.M, m = init.m;
  Embedder E(init, g);
  // f real and g imaginary close under the stationary equation and fix the phase
  std::vector<Field> B;
  for (int i = 0; i < P; ++i) B.push_back(E.basis(i, P));
  for (int i = 0; i < P; ++i) B.push_back(E.basis(3 * P + i, P));
  const int K = 2 * P;

  auto to_vec = [&](const RadialProfilePair& p) {
    Eigen::VectorXd x(K);
    for (int i = 0; i < P; ++i) {
      x(i) = p.f[i].real();
      x(P + i) = p.g[i].imag();
    }
    return x;
  };
  auto to_profile = [&](const Eigen::VectorXd& x) {
    RadialProfilePair p = init;
    for (int i = 0; i < P; ++i) {
      p.f[i] = x(i);
      p.g[i] = cplx(0, x(P + i));
    }
    return p;
  };
  auto objective = [&](const RadialProfilePair& p) {
    Field psi = E.embed(p.f, p.g);
    double n = l2_norm(psi);
    return n > 0 ? stationarity_residual(psi, omega, M, m) / n : INFINITY;
  };

  RefineResult res;
  res.profile = init;
  res.initial_residual = objective(init);
  res.residual = res.initial_residual;
  res.history.push_back(res.residual);
  if (!(res.residual > tol)) {
    res.converged = true;
    res.message = "initial profile already within tolerance";
    return res;
  }
  // the projection onto the real sub-family may change the start slightly
  Eigen::VectorXd x = to_vec(init);
  RadialProfilePair cur = to_profile(x);
  double fcur = objective(cur);
  if (fcur > res.residual) {
    res.message = "initial profile outside the real partial-wave family";
  }
  double lambda = 1e-3;
  for (int it = 0; it < max_iter && fcur > tol; ++it) {
    Field psi = E.embed(cur.f, cur.g);
    double n = l2_norm(psi);
    Field phi = phi_from_spinor(psi, m);
    Field R = stationarity_linear(psi, omega, M) - times_scalar(phi, psi);
    std::vector<Field> J;
    J.reserve(K);
    for (int k = 0; k < K; ++k) {
      Field col = residual_linearisation(psi, phi, B[k], omega, M, m);
      double proj = real_inner(psi, B[k]) / (n * n);
      col -= cplx(proj) * R;
      col *= cplx(1.0 / n);
      J.push_back(std::move(col));
    }
    Field r = (1.0 / n) * R;
    Eigen::MatrixXd JtJ(K, K);
    Eigen::VectorXd Jtr(K);
    for (int a = 0; a < K; ++a) {
      Jtr(a) = real_inner(J[a], r);
      for (int b = a; b < K; ++b) JtJ(a, b) = JtJ(b, a) = real_inner(J[a], J[b]);
    }
    bool accepted = false;
    for (int tries = 0; tries < 12 && !accepted; ++tries) {
      Eigen::MatrixXd A = JtJ;
      for (int a = 0; a < K; ++a) A(a, a) += lambda * std::max(JtJ(a, a), 1e-30);
      Eigen::VectorXd dx = A.ldlt().solve(-Jtr);
      RadialProfilePair trial = to_profile(x + dx);
      double ft = objective(trial);
      if (ft < fcur) {
        x += dx;
        cur = trial;
        fcur = ft;
        lambda = std::max(lambda / 3, 1e-9);
        accepted = true;
      } else {
        lambda *= 4;
      }
    }
    res.iterations = it + 1;
    res.history.push_back(fcur);
    if (!accepted) {
      res.message = "stalled: no descent step found";
      break;
    }
  }
  if (fcur < res.residual) {
    res.profile = cur;
    res.residual = fcur;
  }
  res.converged = res.residual <= tol;
  if (!res.converged && res.message.empty()) res.message = "stalled above tolerance";
  return res;
}

ScalingReport d_norm_growth(const Field& psi, double omega, double s, double sigma, const std::vector<double>& Ts,
                            const AngularTransformPlan* plan) {
  ScalingReport rep;
  rep.name = "d_norm_growth";
  rep.x_label = "T";
  rep.y_label = "D";
  for (double T : Ts) {
    if (!is_dyadic(T)) throw UsageError("d_norm_growth: T values must be dyadic");
    TimeGrid tg(0, T / 8, 8);
    std::vector<Field> frames;
    for (int j = 0; j <= 8; ++j) frames.push_back(std::polar(1.0, -omega * tg.time(j)) * psi);
    auto d = dispersive_norm(Trajectory(tg, std::move(frames)), s, sigma, plan);
    rep.x.push_back(T);
    rep.y.push_back(d.value);
    if (d.truncated > 0) rep.notes.push_back("angular truncation " + std::to_string(d.truncated));
  }
  if (rep.x.size() >= 2) rep.refit();
  return rep;
}

void write_profile(const std::string& stem, const RadialProfilePair& p, double residual) {
  std::ofstream os(stem + ".csv");
  if (!os) throw std::runtime_error("cannot write " + stem + ".csv");
  os.precision(17);
  os << "r,re_f,im_f,re_g,im_g\n";
  for (int i = 0; i < p.size(); ++i)
    os << p.r[i] << "," << p.f[i].real() << "," << p.f[i].imag() << "," << p.g[i].real() << "," << p.g[i].imag()
       << "\n";
  nlohmann::json j;
  j["omega"] = p.omega;
  j["M"] = p.M;
  j["m"] = p.m;
  j["residual"] = residual;
  j["samples"] = p.size();
  j["rmax"] = p.rmax();
  std::ofstream js(stem + ".json");
  js << j.dump(2) << "\n";
}

}  // namespace dkg
