#pragma once

#include <Eigen/Dense>

#include "dkg/grid.hpp"

namespace dkg {

using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

// Dirac representation: gamma^0 = diag(1,1,-1,-1), gamma^j = [[0, s_j], [-s_j, 0]]
// with the Pauli triple s_j = sigma_1 sigma_j sigma_1. This triple makes the
// partial-wave class (upper f(0,1), lower g(w1+iw2, w3)) invariant.
struct GammaBasis {
  Mat4 g[4];
  GammaBasis();
  const Mat4& operator[](int mu) const { return g[mu]; }
  // metric diag(+,-,-,-)
  static double metric(int mu) { return mu == 0 ? 1.0 : -1.0; }
};

const GammaBasis& gammas();

// Pauli block s_j used inside gamma^j.
Eigen::Matrix2cd pauli_block(int j);

// Free Dirac Hamiltonian symbol gamma^0 (gamma^j xi_j + M).
Mat4 dirac_hamiltonian(const Vec3& xi, double M);

// Pi_{+-}(xi) = 1/2 (I +- <xi>_M^{-1} (gamma^0 gamma^j xi_j + M gamma^0))
Mat4 dirac_projector_matrix(const Vec3& xi, int sign, double M);

// Largest singular value.
double op_norm(const Mat4& A);

}  // namespace dkg
