#pragma once

#include <vector>

#include "dkg/field.hpp"
#include "dkg/fit.hpp"
#include "dkg/trajectory.hpp"

namespace dkg {

// ---- modulation decay ----------------------------------------------------------
// u(t) = U^{sign}_m(t) f h(t) with h a random T-periodic step function (the
// pull-back of a V^2 function with a few jumps). Packets carry the Fourier
// series of h up to `harmonics`, C_d acts exactly, and ||C_d u||_{L^2_t L^2_x}
// over one period follows from orthogonality. Each draw is divided by its V^2
// norm; y is the RMS over draws. Target slope -1/2.
struct ModulationDecayConfig {
  int sign = +1;
  double m = 1.0;
  double L = 6.283185307179586;
  double T = 6.283185307179586;
  int modes = 4, jumps = 3, draws = 32, harmonics = 4096;
  std::vector<double> ds{8, 16, 32, 64, 128};
  unsigned seed = 1;
};
ScalingReport modulation_decay_probe(const ModulationDecayConfig& c);

// ---- Strichartz ------------------------------------------------------------------
// ||e^{-it<nabla>_m} f||_{L^q_t L^r_x([0,T] x box)} / ||f||_{L^2} for focused
// data: f-hat = a(|xi|) e^{-i xi.x0} on the P_lambda annulus (kg) or on a cube
// of side mu centred at 3/4 lambda e_1 (wave_cube), with a random smooth
// positive weight a and random centre x0. Plateau: the value on [0, T/2] must
// be within plateau_tol of the value on [0, T]; failures are noted. The top
// frequency must stay below half the grid Nyquist so the x-quadrature of |u|^4
// is alias free.
enum class StrichartzFamily { kg, wave_cube };
struct StrichartzConfig {
  StrichartzFamily family = StrichartzFamily::kg;
  int n = 128;
  double L = 12.566370614359172;
  double m = 1.0;
  double q = 4, r = 4;
  double T = 6.283185307179586;
  double oversample = 2;  // time step 1 / (oversample * top frequency of the data)
  std::vector<double> lambdas{2, 4, 8, 16};  // kg: the fitted variable
  double lambda = 16;                        // wave_cube: fixed block
  std::vector<double> mus{2, 4, 8};          // wave_cube: the fitted variable
  double plateau_tol = 0.05;
  unsigned seed = 1;
};
struct StrichartzReport : ScalingReport {
  std::vector<double> plateau_increment;  // 1 - D(T/2)/D(T) per point
  bool plateaued = true;
};
StrichartzReport strichartz_fit(const StrichartzConfig& c);

// D^{-1/2}_0 = ||<nabla>^{-1/2} U_M(t) psi0||_{L^4_{t,x}([0,T])} for each T.
// Trapezoid with step dt; x = T, y = D, max_ratio = D(T_last) / ||psi0||.
ScalingReport dirac_strichartz_plateau(const Field& psi0, double M, const std::vector<double>& Ts, double dt);

// ---- exact packet integrals -----------------------------------------------------------
// Packet sums v e^{i(xi.x + tau t)} on the box of side L (xi on the lattice 2 pi / L Z^3);
// time integrals over [0, T] are closed form, x-integrals exact by orthogonality.

// ||P_mu(conj(psi) gamma^0 phi)||_{L^2([0,T] x box)}, sharp P_mu (mu = 1: |zeta| <= 1)
double bilinear_l2(const WavePacketSum& psi, const WavePacketSum& phi, double mu, double L, double T);
// int_0^T int phi conj(psi) gamma^0 varphi dx dt; phi scalar, psi and varphi spinors
cplx trilinear_integral(const WavePacketSum& phi, const WavePacketSum& psi, const WavePacketSum& varphi, double L,
                        double T);
// ||u||_{L^4([0,T] x box)}
double packet_l4(const WavePacketSum& u, double L, double T);
// ||u(0)||_{L^2(box)} for distinct modes
double packet_l2(const WavePacketSum& u, double L);

// ---- bilinear ----------------------------------------------------------------------
// ||P_mu(conj(Pi_{s1} psi_lambda) gamma^0 Pi_{s2} phi_lambda)||_{L^2([0,T] x box)}
// / (mu ||psi0|| ||phi0||) for free waves whose data fill cubes of side mu near
// 3/4 lambda e_1 (phi offset by 3/4 mu e_2). Both packets start at -v T/2 with
// their group velocity v, so they meet at the origin at T/2. Exact Fourier
// lattice sums with closed-form time integrals. x = mu/lambda, y = max over draws.
struct BilinearConfig {
  int s1 = +1, s2 = -1;
  double M = 1.0;
  double mu = 1.0;
  double dk = 0.25;  // lattice spacing; box side 2 pi / dk, T = half the box
  std::vector<double> ratios{0.5, 0.25, 0.125, 0.0625};
  int draws = 32;
  unsigned seed = 1;
};
ScalingReport bilinear_fit(const BilinearConfig& c);

// ---- trilinear ------------------------------------------------------------------------
// |int phi_mu conj(psi_l1) gamma^0 varphi_l2 dx dt| over [0,T] x box for sparse
// random packet sums (phi: + Klein-Gordon, mass 1; psi, varphi: Dirac,
// projected by Pi_{s1}, Pi_{s2}) with matched frequencies xi = zeta + eta.
// gain = LHS / (mu^{1/2} ||phi||_{V^2} ||psi||_{V^2} ||varphi||_{V^2}); on free
// waves the V^2 norms are the L^2 norms of the data. y = max gain per cell,
// x = mu / lambda (lambda1 = lambda2 = lambda). max_ratio = largest
// LHS / RHS with RHS = (mu/lambda)^{1/10} A^{theta0} (mu^{1/2} N N N)^{1-theta0},
// A = ||phi||_{L^4} l1^{-1/2} ||psi||_{L^4} l2^{-1/2} ||varphi||_{L^4} (exact L^4 on
// the window). theta0 is chosen from theta0_grid to minimise the spread of the
// per-cell maxima and reported in best_theta0.
struct TrilinearConfig {
  int s1 = +1, s2 = +1;
  double M = 1.0;
  double mu = 2.0;
  double dk = 0.25;
  std::vector<double> ratios{0.5, 0.25, 0.125, 0.0625};
  int draws = 30;
  int packets = 6;
  std::vector<double> theta0_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  unsigned seed = 1;
};
struct TrilinearReport : ScalingReport {
  double best_theta0 = 0;
  std::vector<double> cell_max_ratio;  // per cell, at best_theta0
};
TrilinearReport trilinear_ratio(const TrilinearConfig& c);

}  // namespace dkg
