#include "dkg/grid.hpp"

#include <algorithm>
#include <cmath>

namespace dkg {

GridSpec::GridSpec(int n_, double L_) : n(n_), L(L_) {
  if (n < 4 || (n & (n - 1)) != 0) throw UsageError("GridSpec: n must be a power of two >= 4");
  if (!(L > 0)) throw UsageError("GridSpec: L must be positive");
}

Vec3 GridSpec::mode(std::size_t idx) const {
  int k = int(idx % n);
  int j = int((idx / n) % n);
  int i = int(idx / (std::size_t(n) * n));
  double c = dk();
  return {c * wavenumber(i), c * wavenumber(j), c * wavenumber(k)};
}

Vec3 GridSpec::node(std::size_t idx) const {
  int k = int(idx % n);
  int j = int((idx / n) % n);
  int i = int(idx / (std::size_t(n) * n));
  double hh = h();
  return {(i - n / 2) * hh, (j - n / 2) * hh, (k - n / 2) * hh};
}

bool GridSpec::on_lattice(const Vec3& xi, std::array<int, 3>* kout) const {
  std::array<int, 3> k{};
  for (int a = 0; a < 3; ++a) {
    double q = xi[a] / dk();
    double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) return false;
    if (r < -n / 2 || r > n / 2 - 1) return false;
    k[a] = int(r);
  }
  if (kout) *kout = k;
  return true;
}

TimeGrid::TimeGrid(double t0_, double dt_, int nt_) : t0(t0_), dt(dt_), nt(nt_) {
  if (!(dt > 0)) throw UsageError("TimeGrid: dt must be positive");
  if (nt < 1) throw UsageError("TimeGrid: nt must be >= 1");
}

}  // namespace dkg
