#include "dkg/angular.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <map>

namespace dkg {

namespace {

constexpr double kPi = 3.14159265358979323846;

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2 / ((1 - z * z) * pp * pp);
  }
}

}  // namespace

void real_sph_harmonics(int L, const Vec3& u, double* out) {
  double r = norm(u);
  double x = r > 0 ? u[2] / r : 1.0;
  double phi = std::atan2(u[1], u[0]);
  double s = std::sqrt(std::max(0.0, 1 - x * x));
  // normalised associated Legendre functions
  std::vector<double> P((L + 1) * (L + 1), 0.0);
  auto at = [&](int l, int m) -> double& { return P[l * (L + 1) + m]; };
  double pmm = std::sqrt(1.0 / (4 * kPi));
  for (int m = 0; m <= L; ++m) {
    if (m > 0) pmm *= -std::sqrt((2 * m + 1.0) / (2 * m)) * s;
    at(m, m) = pmm;
    if (m + 1 <= L) at(m + 1, m) = x * std::sqrt(2 * m + 3.0) * pmm;
    for (int l = m + 2; l <= L; ++l) {
      double a = std::sqrt((4.0 * l * l - 1) / (double(l) * l - double(m) * m));
      double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * (l - 1) * (l - 1) - 1));
      at(l, m) = a * (x * at(l - 1, m) - b * at(l - 2, m));
    }
  }
  for (int l = 0; l <= L; ++l) {
    out[l * l + l] = at(l, 0);
    for (int m = 1; m <= l; ++m) {
      out[l * l + l + m] = std::sqrt(2.0) * at(l, m) * std::cos(m * phi);
      out[l * l + l - m] = std::sqrt(2.0) * at(l, m) * std::sin(m * phi);
    }
  }
}

SphereQuadrature SphereQuadrature::make(int ell_max) {
  SphereQuadrature q;
  std::vector<double> x, w;
  int nth = ell_max + 1;
  int nph = 2 * ell_max + 2;
  gauss_legendre(nth, x, w);
  for (int i = 0; i < nth; ++i) {
    double s = std::sqrt(1 - x[i] * x[i]);
    for (int j = 0; j < nph; ++j) {
      double ph = 2 * kPi * j / nph;
      q.nodes.push_back({s * std::cos(ph), s * std::sin(ph), x[i]});
      q.weights.push_back(w[i] * 2 * kPi / nph);
    }
  }
  return q;
}

AngularTransformPlan::AngularTransformPlan(const GridSpec& g, int ell_max)
    : grid_(g), ell_max_(ell_max), quad_(SphereQuadrature::make(ell_max)) {
  if (ell_max < 1) throw UsageError("AngularTransformPlan: ell_max must be >= 1");
  std::map<long, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.size(); ++i) {
    int k = int(i % g.n), j = int((i / g.n) % g.n), l = int(i / (std::size_t(g.n) * g.n));
    long a = g.wavenumber(l), b = g.wavenumber(j), c = g.wavenumber(k);
    groups[a * a + b * b + c * c].push_back(i);
  }
  const int nh = (ell_max + 1) * (ell_max + 1);
  std::vector<double> y(nh);
  for (auto& [r2, modes] : groups) {
    Shell sh;
    sh.modes = modes;
    const int S = int(modes.size());
    if (r2 == 0) {
      sh.Q = Eigen::MatrixXd::Ones(1, 1);
      sh.degree = {0};
      shells_.push_back(std::move(sh));
      continue;
    }
    Eigen::MatrixXd Y(S, nh);
    for (int i = 0; i < S; ++i) {
      real_sph_harmonics(ell_max, grid_.mode(modes[i]), y.data());
      for (int c = 0; c < nh; ++c) Y(i, c) = y[c];
    }
    const double scale = std::sqrt(S / (4 * kPi));
    Eigen::MatrixXd Q(S, 0);
    for (int l = 0; l <= ell_max && Q.cols() < S; ++l) {
      Eigen::MatrixXd B = Y.middleCols(l * l, 2 * l + 1);
      for (int pass = 0; pass < 2; ++pass)
        if (Q.cols() > 0) B -= Q * (Q.transpose() * B);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeThinU);
      const auto& sv = svd.singularValues();
      int rank = 0;
      while (rank < sv.size() && sv(rank) > 1e-8 * scale && Q.cols() + rank < S) ++rank;
      if (rank == 0) continue;
      Eigen::MatrixXd Qn(S, Q.cols() + rank);
      Qn << Q, svd.matrixU().leftCols(rank);
      Q = std::move(Qn);
      for (int c = 0; c < rank; ++c) sh.degree.push_back(l);
    }
    sh.Q = std::move(Q);
    shells_.push_back(std::move(sh));
  }
}

Field AngularTransformPlan::filter(const Field& f0, const std::function<double(int)>& w) const {
  if (f0.grid != grid_) throw UsageError("angular filter: grid mismatch with plan");
  if (f0.carrier != Vec3{0, 0, 0}) throw UsageError("angular filter: carrier fields are not supported");
  Field f = f0.rep == Rep::fourier ? f0 : to_fourier(f0);
  Field out(f.grid, f.comps, Rep::fourier);
  const double wrem = w(ell_max_ + 1);
  for (const auto& sh : shells_) {
    const int S = int(sh.modes.size());
    Eigen::VectorXd wd(sh.degree.size());
    for (int c = 0; c < int(sh.degree.size()); ++c) wd(c) = w(sh.degree[c]);
    for (int comp = 0; comp < f.comps; ++comp) {
      const cplx* src = f.comp(comp);
      cplx* dst = out.comp(comp);
      Eigen::VectorXcd v(S);
      for (int i = 0; i < S; ++i) v(i) = src[sh.modes[i]];
      Eigen::VectorXcd a = sh.Q.transpose().cast<cplx>() * v;
      Eigen::VectorXcd res = wrem * (v - sh.Q.cast<cplx>() * a);
      res += sh.Q.cast<cplx>() * (wd.cast<cplx>().cwiseProduct(a));
      for (int i = 0; i < S; ++i) dst[sh.modes[i]] = res(i);
    }
  }
  if (f0.rep == Rep::physical) to_physical_inplace(out);
  return out;
}

double AngularTransformPlan::truncated_fraction(const Field& f) const {
  double tot = l2_norm(f);
  if (tot == 0) return 0;
  Field rem = filter(f, [&](int l) { return l > ell_max_ ? 1.0 : 0.0; });
  return l2_norm(rem) / tot;
}

double angular_weight(int ell, int N, const DyadicProfile& p) {
  if (N == 1) return p.rho_le1(double(ell));
  return p.rho(double(ell) / N);
}

Field angular_projector(const Field& f, int N, const AngularTransformPlan& plan, const DyadicProfile& p) {
  if (N < 1 || (N & (N - 1)) != 0) throw UsageError("angular_projector: N must be a dyadic integer");
  if (plan.ell_max() < 2 * N) throw UsageError("angular_projector: ell_max < 2N, angular content would be truncated");
  return plan.filter(f, [&](int l) { return l > plan.ell_max() ? 0.0 : angular_weight(l, N, p); });
}

std::vector<int> angular_blocks(const AngularTransformPlan& plan) {
  std::vector<int> out;
  for (int N = 1; 2 * N <= plan.ell_max(); N *= 2) out.push_back(N);
  return out;
}

}  // namespace dkg
