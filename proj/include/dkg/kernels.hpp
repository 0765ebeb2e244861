#pragma once

// Hot loops in two flavours: `serial` is the reference, `omp` the
// OpenMP-parallel version. Results agree bit-for-bit for elementwise kernels
// and to roundoff for reductions.

#include <algorithm>
#include <cstddef>
#include <utility>

#include "dkg/grid.hpp"

namespace dkg {

enum class Exec { serial, omp };

// Reads DKG_THREADS once: 1 selects serial, >1 omp; unset picks omp only
// when more than one thread is available.
Exec default_exec();
void set_default_exec(Exec e);
int exec_threads();

namespace detail {

template <bool Par, class F>
inline void for_range(std::size_t n, F&& f) {
  if constexpr (Par) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) f(std::size_t(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) f(i);
  }
}

template <bool Par, class F>
inline double sum_range(std::size_t n, F&& f) {
  double s = 0.0;
  if constexpr (Par) {
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) s += f(std::size_t(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) s += f(i);
  }
  return s;
}

template <bool Par, class F>
inline double max_range(std::size_t n, F&& f) {
  double m = 0.0;
  if constexpr (Par) {
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) m = std::max(m, f(std::size_t(i)));
  } else {
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, f(i));
  }
  return m;
}

// Per-mode scalar symbol: data[idx] *= sym(xi), xi = carrier + lattice mode.
template <bool Par, class Sym>
inline void apply_symbol(const GridSpec& g, const Vec3& carrier, cplx* data, Sym&& sym) {
  for_range<Par>(g.size(), [&](std::size_t idx) { data[idx] *= sym(carrier + g.mode(idx)); });
}

// Per-mode 4x4 action on four component blocks; act(xi, v) updates v in place.
template <bool Par, class Act>
inline void apply_spinor(const GridSpec& g, const Vec3& carrier, cplx* data, Act&& act) {
  const std::size_t N = g.size();
  for_range<Par>(N, [&](std::size_t idx) {
    cplx v[4] = {data[idx], data[N + idx], data[2 * N + idx], data[3 * N + idx]};
    act(carrier + g.mode(idx), v);
    data[idx] = v[0];
    data[N + idx] = v[1];
    data[2 * N + idx] = v[2];
    data[3 * N + idx] = v[3];
  });
}

template <bool Par>
inline double sum_abs2(const cplx* a, std::size_t n) {
  return sum_range<Par>(n, [&](std::size_t i) { return std::norm(a[i]); });
}

// sum over nodes of (sum_c |a_c|^2)^{p/2} for a block-major multi-component array
template <bool Par>
inline double sum_pointwise_pow(const cplx* a, std::size_t n, int comps, double p) {
  return sum_range<Par>(n, [&](std::size_t i) {
    double s = 0.0;
    for (int c = 0; c < comps; ++c) s += std::norm(a[c * n + i]);
    return std::pow(s, 0.5 * p);
  });
}

template <bool Par>
inline double max_pointwise_abs(const cplx* a, std::size_t n, int comps) {
  return max_range<Par>(n, [&](std::size_t i) {
    double s = 0.0;
    for (int c = 0; c < comps; ++c) s += std::norm(a[c * n + i]);
    return std::sqrt(s);
  });
}

// Exact flow of i psi_t = -phi gamma^0 psi for real phi: upper comps pick up
// e^{i phi s}, lower comps e^{-i phi s}.
template <bool Par>
inline void potential_kick(cplx* psi, const double* phi, std::size_t n, double s) {
  for_range<Par>(n, [&](std::size_t i) {
    cplx e = std::polar(1.0, phi[i] * s);
    psi[i] *= e;
    psi[n + i] *= e;
    psi[2 * n + i] *= std::conj(e);
    psi[3 * n + i] *= std::conj(e);
  });
}

// psi^dagger gamma^0 chi at every node
template <bool Par>
inline void dirac_density(const cplx* psi, const cplx* chi, cplx* out, std::size_t n) {
  for_range<Par>(n, [&](std::size_t i) {
    out[i] = std::conj(psi[i]) * chi[i] + std::conj(psi[n + i]) * chi[n + i] - std::conj(psi[2 * n + i]) * chi[2 * n + i] -
             std::conj(psi[3 * n + i]) * chi[3 * n + i];
  });
}

}  // namespace detail

namespace kernels {

#define DKG_KERNEL_SET(NS, PAR)                                                                                     \
  namespace NS {                                                                                                   \
  template <class Sym>                                                                                             \
  inline void apply_symbol(const GridSpec& g, const Vec3& c, cplx* d, Sym&& s) {                                   \
    detail::apply_symbol<PAR>(g, c, d, std::forward<Sym>(s));                                                      \
  }                                                                                                                \
  template <class Act>                                                                                             \
  inline void apply_spinor(const GridSpec& g, const Vec3& c, cplx* d, Act&& a) {                                   \
    detail::apply_spinor<PAR>(g, c, d, std::forward<Act>(a));                                                      \
  }                                                                                                                \
  inline double sum_abs2(const cplx* a, std::size_t n) { return detail::sum_abs2<PAR>(a, n); }                     \
  inline double sum_pointwise_pow(const cplx* a, std::size_t n, int comps, double p) {                             \
    return detail::sum_pointwise_pow<PAR>(a, n, comps, p);                                                         \
  }                                                                                                                \
  inline double max_pointwise_abs(const cplx* a, std::size_t n, int comps) {                                       \
    return detail::max_pointwise_abs<PAR>(a, n, comps);                                                            \
  }                                                                                                                \
  inline void potential_kick(cplx* psi, const double* phi, std::size_t n, double s) {                              \
    detail::potential_kick<PAR>(psi, phi, n, s);                                                                   \
  }                                                                                                                \
  inline void dirac_density(const cplx* a, const cplx* b, cplx* out, std::size_t n) {                              \
    detail::dirac_density<PAR>(a, b, out, n);                                                                      \
  }                                                                                                                \
  }

DKG_KERNEL_SET(serial, false)
DKG_KERNEL_SET(omp, true)

#undef DKG_KERNEL_SET

// Dispatch on the process-wide policy.
template <class Sym>
inline void apply_symbol(const GridSpec& g, const Vec3& c, cplx* d, Sym&& s) {
  if (default_exec() == Exec::omp)
    omp::apply_symbol(g, c, d, std::forward<Sym>(s));
  else
    serial::apply_symbol(g, c, d, std::forward<Sym>(s));
}
template <class Act>
inline void apply_spinor(const GridSpec& g, const Vec3& c, cplx* d, Act&& a) {
  if (default_exec() == Exec::omp)
    omp::apply_spinor(g, c, d, std::forward<Act>(a));
  else
    serial::apply_spinor(g, c, d, std::forward<Act>(a));
}
inline double sum_abs2(const cplx* a, std::size_t n) {
  return default_exec() == Exec::omp ? omp::sum_abs2(a, n) : serial::sum_abs2(a, n);
}
inline double sum_pointwise_pow(const cplx* a, std::size_t n, int comps, double p) {
  return default_exec() == Exec::omp ? omp::sum_pointwise_pow(a, n, comps, p) : serial::sum_pointwise_pow(a, n, comps, p);
}
inline double max_pointwise_abs(const cplx* a, std::size_t n, int comps) {
  return default_exec() == Exec::omp ? omp::max_pointwise_abs(a, n, comps) : serial::max_pointwise_abs(a, n, comps);
}
inline void potential_kick(cplx* psi, const double* phi, std::size_t n, double s) {
  if (default_exec() == Exec::omp)
    omp::potential_kick(psi, phi, n, s);
  else
    serial::potential_kick(psi, phi, n, s);
}
inline void dirac_density(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  if (default_exec() == Exec::omp)
    omp::dirac_density(a, b, out, n);
  else
    serial::dirac_density(a, b, out, n);
}

}  // namespace kernels
}  // namespace dkg
