#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "dkg/field.hpp"
#include "dkg/profile.hpp"

namespace dkg {

// Real orthonormal spherical harmonics up to degree L at unit vector u;
// out has (L+1)^2 entries, Y_{l,m} at index l*l + l + m.
void real_sph_harmonics(int L, const Vec3& u, double* out);

// Gauss-Legendre in cos(theta) times uniform azimuth: exact for polynomials of
// degree <= 2 * ell_max on the sphere.
struct SphereQuadrature {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  static SphereQuadrature make(int ell_max);
};

// Angular (spherical-harmonic degree) analysis on the Fourier lattice. Modes
// with equal |k|^2 form a shell; on each shell the span of harmonics of degree
// <= l is orthogonalised degree by degree, which splits functions on the shell
// into orthogonal degree pieces. Radial multipliers are scalars on shells, so
// they commute exactly with every degree filter. Content the harmonics up to
// ell_max do not span is the truncated remainder.
class AngularTransformPlan {
 public:
  explicit AngularTransformPlan(const GridSpec& g, int ell_max = 16);

  int ell_max() const { return ell_max_; }
  const GridSpec& grid() const { return grid_; }
  const SphereQuadrature& quadrature() const { return quad_; }

  // Multiply the degree-l piece by w(l); w(ell_max + 1) weights the remainder.
  Field filter(const Field& f, const std::function<double(int)>& w) const;
  // ||remainder|| / ||f||
  double truncated_fraction(const Field& f) const;

 private:
  struct Shell {
    std::vector<std::size_t> modes;
    Eigen::MatrixXd Q;        // |S| x r orthonormal columns
    std::vector<int> degree;  // degree of each column
  };
  GridSpec grid_;
  int ell_max_;
  SphereQuadrature quad_;
  std::vector<Shell> shells_;
};

// H_N: sharp keeps l in {0,1} for N = 1 and l in (N/2, N] for N >= 2.
Field angular_projector(const Field& f, int N, const AngularTransformPlan& plan,
                        const DyadicProfile& p = DyadicProfile::sharp());
// Angular blocks N = 1, 2, 4, ... with 2N <= ell_max.
std::vector<int> angular_blocks(const AngularTransformPlan& plan);
double angular_weight(int ell, int N, const DyadicProfile& p);

}  // namespace dkg
