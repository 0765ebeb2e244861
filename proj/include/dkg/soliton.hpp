#pragma once

#include <string>
#include <vector>

#include "dkg/angular.hpp"
#include "dkg/fit.hpp"
#include "dkg/field.hpp"

namespace dkg {

// Radial samples of the partial-wave profiles on r_i = i * dr, i = 1..P, with
// f even and g odd in r. Values between samples come from a natural cubic
// spline through the mirrored samples; beyond r_P the profiles are zero.
struct RadialProfilePair {
  std::vector<double> r;
  std::vector<cplx> f, g;
  double omega = 0.9, M = 1.0, m = 1.0;

  int size() const { return int(r.size()); }
  double rmax() const { return r.empty() ? 0.0 : r.back(); }
  cplx f_at(double x) const;
  cplx g_at(double x) const;
  void validate() const;
};

RadialProfilePair uniform_profile(int P, double rmax, double omega, double M, double m);

// Natural cubic spline weights: value at x = sum_i w_i * sample_i, for the
// even (parity +1) or odd (parity -1) extension of samples on r_1..r_P.
std::vector<double> spline_weights(const std::vector<double>& r, double x, int parity);

// psi = (0, f, g (w1 + i w2), g w3) with w = x/|x|; the lower pair vanishes at
// the origin. Throws when max(|f|,|g|) at r_P exceeds edge_tol times the peak.
Field partial_wave_embed(const RadialProfilePair& p, const GridSpec& g, double edge_tol = 1e-8);

// Orthogonal projection onto the partial-wave class on the physical lattice:
// on each shell |j|^2 = const keep the shell mean of component 1 and the
// shell mean of the lower pair against (w1 + i w2, w3).
Field h_project(const Field& psi);
double h_complement_norm(const Field& psi);

// (m^2 - Delta)^{-1}(psi-bar psi)
Field phi_from_spinor(const Field& psi, double m);

// Stationary states psi(t) = e^{-i omega t} psi* (the sign for which the
// scalar field binds; see README): residual
//   R = -omega gamma^0 psi - i gamma^j d_j psi + M psi - phi[psi] psi.
Field stationarity_residual_field(const Field& psi, double omega, double M, double m);
double stationarity_residual(const Field& psi, double omega, double M, double m);
// Linear part -omega gamma^0 psi - i gamma^j d_j psi + M psi alone.
Field stationarity_linear(const Field& psi, double omega, double M);

// Real parameter vector (Re f_i, Im f_i, Re g_i, Im g_i) and back.
std::vector<double> profile_params(const RadialProfilePair& p);
void set_profile_params(RadialProfilePair& p, const std::vector<double>& x);

// Gradient of ||R||^2 with respect to profile_params (adjoint of the linearisation).
std::vector<double> residual_gradient(const RadialProfilePair& p, const GridSpec& g);

struct RefineResult {
  RadialProfilePair profile;
  double initial_residual = 0;  // ||R|| / ||psi||
  double residual = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
  std::string message;
};

// Levenberg-Marquardt on ||R|| / ||psi|| over the profile samples (omega fixed).
RefineResult refine_stationary(const RadialProfilePair& init, const GridSpec& g, double tol, int max_iter = 60);

// Gaussian-type start: f = A e^{-r^2/(2w^2)}, g from the lowest-order balance
// of the lower equation.
RadialProfilePair gaussian_profile(int P, double rmax, double omega, double M, double m, double amp, double width);

// D^s_sigma of e^{-i omega t} psi* on [0, T] for each T.
ScalingReport d_norm_growth(const Field& psi, double omega, double s, double sigma, const std::vector<double>& Ts,
                            const AngularTransformPlan* plan);

// CSV (r, Re f, Im f, Re g, Im g) and JSON metadata.
void write_profile(const std::string& stem, const RadialProfilePair& p, double residual);

}  // namespace dkg
