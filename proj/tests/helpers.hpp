#pragma once

#include <functional>
#include <random>

#include "dkg/field.hpp"
#include "dkg/trajectory.hpp"

namespace dkg::test {

// Random field in the requested representation; band > 0 keeps |k| <= band.
inline Field random_field(const GridSpec& g, int comps, unsigned seed, double band = 0, Rep rep = Rep::physical) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Field f(g, comps, Rep::fourier);
  for (int c = 0; c < comps; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) {
      Vec3 k = (1.0 / g.dk()) * g.mode(i);
      if (band > 0 && norm(k) > band) continue;
      f.comp(c)[i] = cplx(nd(rng), nd(rng));
    }
  if (rep == Rep::physical) to_physical_inplace(f);
  return f;
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

inline double max_abs(const Field& a) {
  double m = 0;
  for (auto v : a.data) m = std::max(m, std::abs(v));
  return m;
}

inline double rel_l2(const Field& a, const Field& b) {
  Field d = a;
  d -= b;
  return l2_norm(d) / std::max(l2_norm(b), 1e-300);
}

// f-hat(xi) = G(|xi|) Y(xi/|xi|)
inline Field fourier_profile(const GridSpec& g, const std::function<double(double)>& G,
                      const std::function<double(const Vec3&)>& Y) {
  Field f(g, 1, Rep::fourier);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 xi = g.mode(i);
    double r = norm(xi);
    f.data[i] = G(r) * (r > 0 ? Y((1.0 / r) * xi) : Y({0, 0, 1}));
  }
  return f;
}

}  // namespace dkg::test
