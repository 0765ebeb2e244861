#pragma once

#include <string>
#include <vector>

#include "dkg/trajectory.hpp"

namespace dkg {

// (psi, phi_+) of the first-order system
//   i psi_t = H_M psi - Re(phi_+) gamma^0 psi
//   -i d_t phi_+ + <nabla>_m phi_+ = <nabla>_m^{-1}(psi-bar psi)
struct DKGState {
  Field psi;
  Field phi_plus;
  double t = 0.0;
  double M = 1.0;
  double m = 1.0;

  DKGState() = default;
  DKGState(Field psi_, Field phi_plus_, double t_, double M_, double m_);
  void validate() const;
};

enum class Scheme { strang, rk4_interaction };

struct SolverConfig {
  double dt = 0.01;
  int nt = 100;
  Scheme scheme = Scheme::strang;
  bool dealias = true;   // spherical 2/3 truncation of psi-bar psi
  int cadence = 10;      // steps between diagnostics rows and stored frames
  bool coupling = true;  // false: free flows only
  double ceiling = 10.0;
  bool store_frames = true;
  // running controlling norm D^{s_D}_{sigma}
  double s_D = -0.5;
  double sigma = 0.0;
  int ell_max = 16;

  void validate(const GridSpec& g, double M) const;
};

struct DiracForcing {
  Field plus, minus;
};

// Pi_{+-}(gamma^0 Re(phi_+) psi): forcing of (-i d_t +- <nabla>_M) psi_{+-}
DiracForcing rhs_dirac(const DKGState& s);
// <nabla>_m^{-1}(psi-bar psi), a real field
Field rhs_wave(const DKGState& s, bool dealias = false);

// Real part of a scalar field as a real-valued complex field.
Field real_part(const Field& f);

DKGState step(const DKGState& s, const SolverConfig& cfg);

struct DiagnosticsRow {
  double t = 0;
  double charge = 0;      // ||psi||_{L^2}
  double wave_norm = 0;   // ||<nabla>_m^{1/2} phi_+||_{L^2}
  double running_D = 0;   // D^{s_D}_sigma on [t0, t]
  double cauchy_inc = 0;  // ||U_M(-t)psi(t) - U_M(-t')psi(t')|| to the previous row
  double h_complement = 0;  // relative distance from the partial-wave class
};

struct EvolveResult {
  DKGState final_state;
  Trajectory psi, phi_plus;  // frames at cadence (empty unless store_frames)
  std::vector<DiagnosticsRow> rows;
  bool halted = false;
  std::string message;
};

EvolveResult evolve(const DKGState& s, const SolverConfig& cfg);

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);

// max over interior frames of ||D_t^2 phi - Delta phi + m^2 phi - psi-bar psi||_{L^2},
// phi = Re phi_+, central second difference in t.
double second_order_residual(const Trajectory& psi, const Trajectory& phi_plus, double m, bool dealias);

// ||U_M(-t_{j+1})psi(t_{j+1}) - U_M(-t_j)psi(t_j)|| for consecutive frames.
std::vector<double> scattering_diagnostic(const Trajectory& psi, double M);

}  // namespace dkg
