#pragma once

#include "dkg/trajectory.hpp"

namespace dkg {

// U^{+-}_m(t) = e^{-+ i t <nabla>_m}
Field half_wave(const Field& f, double t, int sign, double m);
// U_M(t) = U^+_M(t) Pi_+ + U^-_M(t) Pi_-
Field dirac_free(const Field& psi, double t, double M);

// Free trajectories sampled on tg.
Trajectory half_wave_trajectory(const Field& f, const TimeGrid& tg, int sign, double m);
Trajectory dirac_free_trajectory(const Field& psi, const TimeGrid& tg, double M);

// I^{+-,m}_{t0}[F](t) = i int_{t0}^t U^{+-}_m(t - s) F(s) ds, composite
// trapezoid on U(-s)F(s). t0 must be a sample time of F.
Trajectory duhamel_half_wave(const Trajectory& F, double t0, int sign, double m);
// I^M_{t0}[gamma^0 G] = sum_{+-} I^{+-,M}[Pi_{+-} gamma^0 G]
Trajectory duhamel_dirac(const Trajectory& G, double t0, double M);

// Interaction picture U^{+-}_m(-t) u(t) frame by frame (scalar phase per component).
Trajectory pull_back(const Trajectory& u, int sign, double m);
// U_M(-t) psi(t)
Trajectory pull_back_dirac(const Trajectory& u, double M);

}  // namespace dkg
