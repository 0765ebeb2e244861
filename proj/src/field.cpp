#include "dkg/field.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "dkg/fft.hpp"
#include "dkg/kernels.hpp"

namespace dkg {

namespace {

Exec& exec_slot() {
  static Exec e = [] {
    const char* s = std::getenv("DKG_THREADS");
    if (s && std::atoi(s) >= 1) {
      omp_set_num_threads(std::atoi(s));
      return std::atoi(s) == 1 ? Exec::serial : Exec::omp;
    }
    return omp_get_max_threads() > 1 ? Exec::omp : Exec::serial;
  }();
  return e;
}

// (-1)^{p+q+r} converts the FFTW ordering to centred coordinates.
void checker(cplx* d, int n) {
  const std::size_t N = std::size_t(n) * n * n;
  detail::for_range<false>(N, [&](std::size_t idx) {
    int k = int(idx % n), j = int((idx / n) % n), i = int(idx / (std::size_t(n) * n));
    if ((i + j + k) & 1) d[idx] = -d[idx];
  });
}

}  // namespace

Exec default_exec() { return exec_slot(); }
void set_default_exec(Exec e) { exec_slot() = e; }
int exec_threads() { return omp_get_max_threads(); }

Field::Field(const GridSpec& g, int c, Rep r) : grid(g), comps(c), rep(r) {
  if (c != 1 && c != 4) throw UsageError("Field: component count must be 1 or 4");
  data.assign(std::size_t(c) * g.size(), cplx(0.0));
}

void require_same_shape(const Field& a, const Field& b, const char* what) {
  if (a.grid != b.grid) throw UsageError(std::string(what) + ": grid mismatch");
  if (a.comps != b.comps) throw UsageError(std::string(what) + ": component mismatch");
  if (a.rep != b.rep) throw UsageError(std::string(what) + ": representation mismatch");
}

Field& Field::operator+=(const Field& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
  return *this;
}

Field& Field::operator*=(cplx s) {
  for (auto& v : data) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

void to_fourier_inplace(Field& f) {
  if (f.rep != Rep::physical) throw UsageError("to_fourier: field already in Fourier representation");
  const int n = f.grid.n;
  const double inv = 1.0 / double(f.nodes());
  for (int c = 0; c < f.comps; ++c) {
    cplx* d = f.comp(c);
    fft3(d, n, -1);
    checker(d, n);
    for (std::size_t i = 0; i < f.nodes(); ++i) d[i] *= inv;
  }
  f.rep = Rep::fourier;
}

void to_physical_inplace(Field& f) {
  if (f.rep != Rep::fourier) throw UsageError("to_physical: field already in physical representation");
  const int n = f.grid.n;
  for (int c = 0; c < f.comps; ++c) {
    cplx* d = f.comp(c);
    checker(d, n);
    fft3(d, n, +1);
  }
  f.rep = Rep::physical;
}

Field to_fourier(Field f) {
  to_fourier_inplace(f);
  return f;
}

Field to_physical(Field f) {
  to_physical_inplace(f);
  return f;
}

cplx l2_inner(const Field& f, const Field& g) {
  require_same_shape(f, g, "l2_inner");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.data.size(); ++i) s += std::conj(f.data[i]) * g.data[i];
  return s * (f.rep == Rep::physical ? f.grid.cell() : f.grid.volume());
}

double l2_norm(const Field& f) {
  double s = kernels::sum_abs2(f.data.data(), f.data.size());
  return std::sqrt(s * (f.rep == Rep::physical ? f.grid.cell() : f.grid.volume()));
}

Field dirac_bilinear(const Field& psi, const Field& chi) {
  require_same_shape(psi, chi, "dirac_bilinear");
  if (!psi.is_spinor()) throw UsageError("dirac_bilinear: spinor fields required");
  if (psi.rep != Rep::physical) throw UsageError("dirac_bilinear: physical representation required");
  Field out(psi.grid, 1);
  out.carrier = chi.carrier - psi.carrier;
  kernels::dirac_density(psi.data.data(), chi.data.data(), out.data.data(), psi.nodes());
  return out;
}

Field plane_wave(const GridSpec& g, const Vec3& xi, const std::vector<cplx>& v) {
  Field f(g, int(v.size()));
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    cplx e = std::polar(1.0, dot(xi, g.node(idx)));
    for (int c = 0; c < f.comps; ++c) f.comp(c)[idx] = v[c] * e;
  }
  return f;
}

}  // namespace dkg
