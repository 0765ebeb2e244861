#pragma once

#include <vector>

#include "dkg/grid.hpp"

namespace dkg {

enum class Rep { physical, fourier };
enum class Role { phi_like, psi_like };

// Scalar (1 component) or spinor (4 components) field, stored block-major:
// component c occupies data[c*N .. (c+1)*N). The optional carrier shifts every
// Fourier mode: the represented function is e^{i carrier.x} times the sampled
// data, and every symbol is evaluated at carrier + lattice mode.
struct Field {
  GridSpec grid;
  int comps = 1;
  Rep rep = Rep::physical;
  Vec3 carrier{0.0, 0.0, 0.0};
  std::vector<cplx> data;

  Field() = default;
  Field(const GridSpec& g, int c, Rep r = Rep::physical);

  std::size_t nodes() const { return grid.size(); }
  cplx* comp(int c) { return data.data() + std::size_t(c) * nodes(); }
  const cplx* comp(int c) const { return data.data() + std::size_t(c) * nodes(); }
  Role role() const { return comps == 4 ? Role::psi_like : Role::phi_like; }
  bool is_spinor() const { return comps == 4; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx s);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

// Fourier-series coefficients in centred coordinates:
// c_k = N^{-1} sum_x f(x) e^{-i xi_k . x}. Inverse reconstructs samples.
Field to_fourier(Field f);
Field to_physical(Field f);
void to_fourier_inplace(Field& f);
void to_physical_inplace(Field& f);

// Conjugate-linear in f. Physical: h^3 sum; Fourier: L^3 sum (Parseval).
cplx l2_inner(const Field& f, const Field& g);
double l2_norm(const Field& f);

// psi^dagger gamma^0 chi pointwise (physical representation only).
Field dirac_bilinear(const Field& psi, const Field& chi);

// e^{i xi.x} v at every node; v has one entry per component.
Field plane_wave(const GridSpec& g, const Vec3& xi, const std::vector<cplx>& v);

void require_same_shape(const Field& a, const Field& b, const char* what);

}  // namespace dkg
