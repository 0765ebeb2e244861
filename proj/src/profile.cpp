#include "dkg/profile.hpp"

#include <cmath>

namespace dkg {

namespace {

double bump(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double smooth_step(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  double u = 2.0 - t;
  double a = bump(u), b = bump(1.0 - u);
  return a / (a + b);
}

double DyadicProfile::rho(double t) const {
  if (kind == ProfileKind::sharp) return (t > 0.5 && t <= 1.0) ? 1.0 : 0.0;
  return smooth_step(t) - smooth_step(2.0 * t);
}

double DyadicProfile::rho_le1(double t) const {
  if (kind == ProfileKind::sharp) return t <= 1.0 ? 1.0 : 0.0;
  return smooth_step(t);
}

bool is_dyadic(double x) {
  if (!(x > 0) || !std::isfinite(x)) return false;
  int e;
  double m = std::frexp(x, &e);
  return m == 0.5;
}

}  // namespace dkg
