#pragma once

#include <functional>
#include <vector>

#include "dkg/field.hpp"
#include "dkg/profile.hpp"
#include "dkg/trajectory.hpp"

namespace dkg {

double bracket(const Vec3& xi, double m);
inline double bracket(double r, double m) { return std::sqrt(m * m + r * r); }

// Multiply by sym(xi) per Fourier mode; the result keeps the input representation.
Field apply_symbol(const Field& f, const std::function<cplx(const Vec3&)>& sym);
Field apply_radial(const Field& f, const std::function<double(double)>& sym);

// P_lambda; lambda = 1 collects the low frequencies.
Field littlewood_paley(const Field& f, double lambda, const DyadicProfile& p = DyadicProfile::sharp());
// Dyadic blocks 1, 2, 4, ... needed to cover every mode of the grid (plus carrier).
std::vector<double> lp_blocks(const GridSpec& g, const Vec3& carrier = {0, 0, 0},
                              const DyadicProfile& p = DyadicProfile::sharp());

Field dirac_projector(const Field& f, int sign, double M);

// <nabla>_m^s; s < 0 needs m > 0 unless the zero mode is absent.
Field bessel_potential(const Field& f, double s, double m);
// (m^2 - Delta)^{-1}
Field inverse_helmholtz(const Field& f, double m);
Field helmholtz(const Field& f, double m);

// Spherical 2/3 truncation |k| <= n/3 (in lattice units).
Field dealias(const Field& f);
bool dealias_keep(const GridSpec& g, const Vec3& xi);

// ---- modulation C_d^{+-,m} -------------------------------------------------

// Exact action on packets: keep weight rho(|tau + sign <xi>_m| / d).
WavePacketSum modulation_projector(const WavePacketSum& w, double d, int sign, double m, bool le = false,
                                   const DyadicProfile& p = DyadicProfile::sharp());

// Trajectory approximation: interaction picture v = U^{sign}_m(-t) u, periodic
// Hann window w over the first nt samples, temporal DFT, band mask, inverse DFT,
// back to the lab frame. The output approximates w(t) C_d u(t); the last
// sample is the periodic copy of the first. Leakage: a tone exactly on a DFT
// bin spreads to its two neighbours only. Needs at least 8 samples.
Trajectory modulation_projector(const Trajectory& u, double d, int sign, double m, bool le = false,
                                const DyadicProfile& p = DyadicProfile::sharp());
// (mean_j w_j^a)^{1/a}: divides L^a_t norms of windowed output.
double hann_mean(int nt, double a);
// Smallest dyadic d the windowed mode resolves without main-lobe leakage.
double windowed_min_d(const TimeGrid& tg);

// ---- caps and cubes ----------------------------------------------------------

// Voronoi cells of cap centres with covering radius <= alpha: an exact
// partition of directions. xi = 0 belongs to cell 0.
struct CapFamily {
  double alpha = 1.0;
  std::vector<Vec3> centres;
  int cell(const Vec3& xi) const;
};
CapFamily make_caps(double alpha);
Field cap_projector(const Field& f, const CapFamily& caps, int kappa);

// Half-open cubes [c mu, (c+1) mu)^3 tiling frequency space.
struct Cube {
  std::array<int, 3> c{0, 0, 0};
  double mu = 1.0;
  bool contains(const Vec3& xi) const;
  Vec3 centre() const;
};
Cube cube_of(const Vec3& xi, double mu);
Field cube_projector(const Field& f, const Cube& q);
// Every cube of side mu that meets a mode of f's grid (plus carrier).
std::vector<Cube> cube_cover(const GridSpec& g, double mu, const Vec3& carrier = {0, 0, 0});

}  // namespace dkg
