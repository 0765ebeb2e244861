#include "dkg/gamma.hpp"

#include <Eigen/SVD>

namespace dkg {

Eigen::Matrix2cd pauli_block(int j) {
  const cplx I(0.0, 1.0);
  Eigen::Matrix2cd s;
  switch (j) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, I, -I, 0; break;
    default: s << -1, 0, 0, 1; break;
  }
  return s;
}

GammaBasis::GammaBasis() {
  g[0].setZero();
  g[0].diagonal() << 1, 1, -1, -1;
  for (int j = 1; j <= 3; ++j) {
    g[j].setZero();
    g[j].block<2, 2>(0, 2) = pauli_block(j);
    g[j].block<2, 2>(2, 0) = -pauli_block(j);
  }
}

const GammaBasis& gammas() {
  static const GammaBasis b;
  return b;
}

Mat4 dirac_hamiltonian(const Vec3& xi, double M) {
  const auto& G = gammas();
  Mat4 A = M * Mat4::Identity();
  for (int j = 0; j < 3; ++j) A += xi[j] * G[j + 1];
  return G[0] * A;
}

Mat4 dirac_projector_matrix(const Vec3& xi, int sign, double M) {
  double br = std::sqrt(M * M + dot(xi, xi));
  return 0.5 * (Mat4::Identity() + (double(sign) / br) * dirac_hamiltonian(xi, M));
}

double op_norm(const Mat4& A) {
  Eigen::JacobiSVD<Mat4> svd(A);
  return svd.singularValues()(0);
}

}  // namespace dkg
