#pragma once

#include <utility>
#include <vector>

#include "dkg/fit.hpp"
#include "dkg/grid.hpp"

namespace dkg {

// Angle between x and y in [0, pi]; zero vectors give 0.
double angle(const Vec3& x, const Vec3& y);

// |<xi - eta>_m -s1 <xi>_M +s2 <eta>_M|
double resonance_value(const Vec3& xi, const Vec3& eta, int s1, int s2, double M, double m = 1.0);

// Sharp dyadic annulus: [0, 1] for lambda = 1, (lambda/2, lambda] above.
struct Annulus {
  double lo = 0, hi = 1;
  static Annulus dyadic(double lambda);
  bool contains(double r) const;
};

struct ResonanceMin {
  double value = 0;
  Vec3 xi{0, 0, 0}, eta{0, 0, 0};
  long samples = 0;  // admissible grid points
  bool undersampled = false;
};

// Brute-force minimum of the modulation function over |xi| in the lambda1
// annulus, |eta| in the lambda2 annulus and |xi - eta| in the mu annulus. The
// function depends on |xi|, |eta| and their angle only, so the search runs over
// a (radius, radius, angle) grid: n_radial points per annulus, n_angle in theta.
ResonanceMin resonance_min(double mu, double lambda1, double lambda2, int s1, int s2, double M, double m,
                           int n_radial, int n_angle, long min_samples = 100);

// Positive root of 1 - 2<r>_M (zero of the (+,-) function on the diagonal
// xi = eta), by bisection; NaN when M >= 1/2.
double resonance_pm_root(double M, double tol = 1e-12);

// The two bracketed (+,-) expressions:
//   first  = |M^2 (|xi|-|eta|)^2 / (<xi>_M <eta>_M + |xi||eta| + M^2) + |xi||eta| + xi.eta + (4M^2-1)/2|
//   second = |(|xi| - M|xi-eta|)^2 / (<xi>_M <xi-eta> + |xi||xi-eta| + M) + |xi||xi-eta| - xi.(xi-eta) + (2M-1)/2|
// first equals M_{+,-} (A + B) / 2 with A = <xi>_M + <eta>_M, B = <xi - eta>.
std::pair<double, double> resonance_pm_value(const Vec3& xi, const Vec3& eta, double M);

// Right-hand sides of the two resonance lower bounds. Case 1 (mu <~ l1 ~ l2):
//   l1^2/mu th^2(s1 xi, s2 eta) + mu th^2(xi-eta, s1 xi) + mu th^2(xi-eta, s2 eta);
// case 2 (mu >> l2):
//   mu^2/l2 th^2(xi-eta, s1 xi) + l2 th^2(s1 xi, s2 eta) + l2 th^2(xi-eta, s2 eta).
// Angles are floored at theta_floor.
double resonance_rhs(int which_case, const Vec3& xi, const Vec3& eta, int s1, int s2, double mu, double l1, double l2,
                     double theta_floor = 1e-6);

struct LowerBoundConfig {
  int which_case = 1;
  int s1 = +1, s2 = +1;
  double M = 1.0, m = 1.0;
  std::vector<double> lambdas{4, 8, 16};  // lambda1 (case 1) or mu (case 2)
  double ratio = 4;                      // lambda1 / mu (case 1) or mu / lambda2 (case 2)
  int samples = 10000;
  unsigned seed = 1;
};
// Sampled infimum of M / RHS per scale; x = scale, y = infimum, max_ratio =
// largest infimum / smallest infimum.
ScalingReport resonance_lowerbound_fit(const LowerBoundConfig& c);

// ---- null-form symbol ---------------------------------------------------------

// |Pi_{s1}(x) gamma^0 Pi_{s2}(y)|_op
double null_symbol(const Vec3& x, const Vec3& y, int s1, int s2, double M);
// Closed form of |Pi_+(xi) gamma^0 Pi_+(xi)|_op = M / <xi>_M.
double null_symbol_diagonal(const Vec3& xi, double M);
// theta(s1 x, s2 y) + |s1|x| + s2|y|| / (<x>_M <y>_M), angle floored.
double null_symbol_bound(const Vec3& x, const Vec3& y, int s1, int s2, double M, double theta_floor = 1e-6);

struct NullSymbolConfig {
  int s1 = +1, s2 = +1;
  double M = 1.0;
  int samples = 10000;
  double rmin = 0.5, rmax = 64;
  unsigned seed = 1;
};
// Largest sampled ratio null_symbol / null_symbol_bound (log-uniform radii,
// uniform directions). x/y hold per-decade maxima against |x|.
ScalingReport null_symbol_ratio(const NullSymbolConfig& c);

}  // namespace dkg
