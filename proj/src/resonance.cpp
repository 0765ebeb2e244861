#include "dkg/resonance.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "dkg/gamma.hpp"
#include "dkg/multipliers.hpp"

namespace dkg {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vec3 v{nd(rng), nd(rng), nd(rng)};
  return (1.0 / norm(v)) * v;
}

double sample_radius(const Annulus& a, std::mt19937_64& rng) {
  // uniform in volume
  std::uniform_real_distribution<double> u(std::pow(a.lo, 3), std::pow(a.hi, 3));
  return std::cbrt(u(rng));
}

}  // namespace

double angle(const Vec3& x, const Vec3& y) {
  double nx = norm(x), ny = norm(y);
  if (nx == 0 || ny == 0) return 0.0;
  // atan2 form keeps accuracy near 0 and pi
  Vec3 c{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
  return std::atan2(norm(c), dot(x, y));
}

double resonance_value(const Vec3& xi, const Vec3& eta, int s1, int s2, double M, double m) {
  return std::abs(bracket(xi - eta, m) - s1 * bracket(xi, M) + s2 * bracket(eta, M));
}

Annulus Annulus::dyadic(double lambda) {
  if (!is_dyadic(lambda) || lambda < 1) throw UsageError("Annulus: lambda must be a dyadic integer");
  return lambda == 1 ? Annulus{0, 1} : Annulus{lambda / 2, lambda};
}

bool Annulus::contains(double r) const { return lo == 0 ? r <= hi : (r > lo && r <= hi); }

ResonanceMin resonance_min(double mu, double lambda1, double lambda2, int s1, int s2, double M, double m,
                           int n_radial, int n_angle, long min_samples) {
  if (n_radial < 2 || n_angle < 2) throw UsageError("resonance_min: grid density too small");
  Annulus A = Annulus::dyadic(lambda1), B = Annulus::dyadic(lambda2), C = Annulus::dyadic(mu);
  ResonanceMin best;
  best.value = std::numeric_limits<double>::infinity();
  auto radius = [&](const Annulus& a, int i) {
    // closed grid on [lo, hi], the open end nudged inside
    double r = a.lo + (a.hi - a.lo) * i / (n_radial - 1);
    if (a.lo > 0 && i == 0) r = a.lo + 1e-9 * a.hi;
    return r;
  };
  for (int i = 0; i < n_radial; ++i) {
    double r1 = radius(A, i);
    Vec3 xi{0, 0, r1};
    double b1 = bracket(r1, M);
    for (int j = 0; j < n_radial; ++j) {
      double r2 = radius(B, j);
      double b2 = bracket(r2, M);
      for (int k = 0; k < n_angle; ++k) {
        double th = kPi * k / (n_angle - 1);
        Vec3 eta{r2 * std::sin(th), 0, r2 * std::cos(th)};
        double dz = std::sqrt(std::max(0.0, r1 * r1 + r2 * r2 - 2 * r1 * r2 * std::cos(th)));
        if (!C.contains(dz)) continue;
        ++best.samples;
        double v = std::abs(bracket(dz, m) - s1 * b1 + s2 * b2);
        if (v < best.value) {
          best.value = v;
          best.xi = xi;
          best.eta = eta;
        }
      }
    }
  }
  best.undersampled = best.samples < min_samples;
  if (best.samples == 0) best.value = NAN;
  return best;
}

double resonance_pm_root(double M, double tol) {
  if (!(M > 0)) throw UsageError("resonance_pm_root: M must be positive");
  if (M >= 0.5) return NAN;
  auto f = [&](double r) { return 1.0 - 2.0 * bracket(r, M); };
  double a = 0, b = 1;  // f(0) = 1 - 2M > 0, f(1) < 0
  while (b - a > tol) {
    double c = 0.5 * (a + b);
    (f(c) > 0 ? a : b) = c;
  }
  return 0.5 * (a + b);
}

std::pair<double, double> resonance_pm_value(const Vec3& xi, const Vec3& eta, double M) {
  double a = norm(xi), b = norm(eta);
  Vec3 z = xi - eta;
  double c = norm(z);
  double first = M * M * (a - b) * (a - b) / (bracket(a, M) * bracket(b, M) + a * b + M * M) + a * b + dot(xi, eta) +
                 (4 * M * M - 1) / 2;
  double second = (a - M * c) * (a - M * c) / (bracket(a, M) * bracket(c, 1.0) + a * c + M) + a * c - dot(xi, z) +
                  (2 * M - 1) / 2;
  return {std::abs(first), std::abs(second)};
}

double resonance_rhs(int which_case, const Vec3& xi, const Vec3& eta, int s1, int s2, double mu, double l1, double l2,
                     double theta_floor) {
  auto th2 = [&](const Vec3& a, const Vec3& b) {
    double t = std::max(angle(a, b), theta_floor);
    return t * t;
  };
  Vec3 z = xi - eta, sx = double(s1) * xi, se = double(s2) * eta;
  if (which_case == 1) return l1 * l1 / mu * th2(sx, se) + mu * th2(z, sx) + mu * th2(z, se);
  if (which_case == 2) return mu * mu / l2 * th2(z, sx) + l2 * th2(sx, se) + l2 * th2(z, se);
  throw UsageError("resonance_rhs: case must be 1 or 2");
}

ScalingReport resonance_lowerbound_fit(const LowerBoundConfig& c) {
  if (c.which_case != 1 && c.which_case != 2) throw UsageError("resonance_lowerbound_fit: case must be 1 or 2");
  if (c.samples < 30) throw UsageError("resonance_lowerbound_fit: at least 30 samples per cell");
  ScalingReport rep;
  rep.name = "resonance_lowerbound_case" + std::to_string(c.which_case);
  rep.x_label = c.which_case == 1 ? "lambda1" : "mu";
  rep.y_label = "inf_ratio";
  std::mt19937_64 rng(c.seed);
  for (double s : c.lambdas) {
    double mu, l1, l2;
    if (c.which_case == 1) {
      l1 = l2 = s;
      mu = s / c.ratio;
    } else {
      mu = s;
      l2 = s / c.ratio;
      l1 = mu;
    }
    Annulus A = Annulus::dyadic(l1), B = Annulus::dyadic(l2), C = Annulus::dyadic(std::max(mu, 1.0));
    double inf = std::numeric_limits<double>::infinity();
    int got = 0;
    for (long tries = 0; got < c.samples && tries < 1000L * c.samples; ++tries) {
      Vec3 xi = sample_radius(A, rng) * random_direction(rng);
      Vec3 eta = sample_radius(B, rng) * random_direction(rng);
      if (!C.contains(norm(xi - eta))) continue;
      ++got;
      double r = resonance_value(xi, eta, c.s1, c.s2, c.M, c.m) / resonance_rhs(c.which_case, xi, eta, c.s1, c.s2, mu, l1, l2);
      inf = std::min(inf, r);
    }
    if (got < c.samples) rep.notes.push_back("scale " + std::to_string(s) + ": only " + std::to_string(got) + " admissible samples");
    rep.x.push_back(s);
    rep.y.push_back(inf);
  }
  double lo = *std::min_element(rep.y.begin(), rep.y.end()), hi = *std::max_element(rep.y.begin(), rep.y.end());
  rep.max_ratio = hi / lo;
  if (rep.x.size() >= 2) rep.refit();
  rep.notes.push_back("seed " + std::to_string(c.seed) + ", " + std::to_string(c.samples) + " samples per cell");
  return rep;
}

double null_symbol(const Vec3& x, const Vec3& y, int s1, int s2, double M) {
  return op_norm(dirac_projector_matrix(x, s1, M) * gammas()[0] * dirac_projector_matrix(y, s2, M));
}

double null_symbol_diagonal(const Vec3& xi, double M) { return M / bracket(xi, M); }

double null_symbol_bound(const Vec3& x, const Vec3& y, int s1, int s2, double M, double theta_floor) {
  double th = std::max(angle(double(s1) * x, double(s2) * y), theta_floor);
  return th + std::abs(s1 * norm(x) + s2 * norm(y)) / (bracket(x, M) * bracket(y, M));
}

ScalingReport null_symbol_ratio(const NullSymbolConfig& c) {
  if (!(c.rmin > 0) || !(c.rmax > c.rmin)) throw UsageError("null_symbol_ratio: need 0 < rmin < rmax");
  ScalingReport rep;
  rep.name = "null_symbol_ratio";
  rep.x_label = "|x|";
  rep.y_label = "max_ratio";
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(std::log(c.rmin), std::log(c.rmax));
  const int bins = int(std::ceil(std::log2(c.rmax / c.rmin)));
  std::vector<double> binmax(bins, 0.0);
  for (int s = 0; s < c.samples; ++s) {
    double rx = std::exp(u(rng)), ry = std::exp(u(rng));
    Vec3 x = rx * random_direction(rng), y = ry * random_direction(rng);
    double r = null_symbol(x, y, c.s1, c.s2, c.M) / null_symbol_bound(x, y, c.s1, c.s2, c.M);
    int b = std::min(bins - 1, int(std::log2(rx / c.rmin)));
    binmax[b] = std::max(binmax[b], r);
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  for (int b = 0; b < bins; ++b) {
    rep.x.push_back(c.rmin * std::exp2(b + 1));
    rep.y.push_back(binmax[b]);
  }
  rep.notes.push_back("seed " + std::to_string(c.seed) + ", " + std::to_string(c.samples) + " samples");
  return rep;
}

}  // namespace dkg
