#pragma once

#include <vector>

#include "dkg/angular.hpp"
#include "dkg/multipliers.hpp"
#include "dkg/trajectory.hpp"
#include "dkg/variation.hpp"

namespace dkg {

struct NormParams {
  double a = 1.95;
  double b = 0.05;
  double s = 0.0;
  double sigma = 0.0;
  double s0 = 0.05;

  // 1/a = 1/2 + rho/16, b = 2(1/a - 1/2) with rho = sigma, or s0 when sigma = 0.
  static NormParams defaults(double s, double sigma, double s0 = 0.05);
  void validate() const;
};

// ||U(-t)u||_{L^inf L^2} + var_2(U(-t)u)
double v2_norm(const Trajectory& u, int sign, double m);
// sum over Pi_{+-} parts with U^{+-}_M
double v2_norm_dirac(const Trajectory& u, double M);

struct YResult {
  double value = 0.0;
  double d_star = 0.0;  // maximising d (0 if every term vanishes)
  double d_lo = 0.0;    // dyadic range searched
  double d_hi = 0.0;
};

// Dyadic d with 2 pi / T <= d <= pi / dt.
std::vector<double> resolvable_modulations(const TimeGrid& tg, double lo_factor = 2.0);

// Exact on packets (modulations read off tau and xi); L^a_t by trapezoid on tg.
YResult y_norm(const WavePacketSum& w, const GridSpec& g, const TimeGrid& tg, double lambda, int sign, double M,
               const NormParams& prm, const DyadicProfile& p = DyadicProfile::sharp());
// Windowed temporal transform; d from windowed_min_d up to pi / dt.
YResult y_norm(const Trajectory& u, double lambda, int sign, double M, const NormParams& prm,
               const DyadicProfile& p = DyadicProfile::sharp());

// ||w||_{L^q_t L^2_x} of a packet sum, exact in x.
double packet_mixed_norm(const WavePacketSum& w, const GridSpec& g, const TimeGrid& tg, double q);

struct DResult {
  double value = 0.0;
  double truncated = 0.0;  // relative content outside the angular blocks used
};

// D^s_sigma with <nabla> of mass 1; sigma = 0 skips the angular split.
DResult dispersive_norm(const Trajectory& u, double s, double sigma, const AngularTransformPlan* plan,
                        const DyadicProfile& p = DyadicProfile::sharp());

enum class StackKind { V, Y, F };

// l^2 over (lambda, N) of lambda^s N^sigma times the block norm. Without a plan
// (or sigma = 0) the angular split is skipped.
double stacked_norm(const Trajectory& u, StackKind kind, int sign, double m, const NormParams& prm,
                    const AngularTransformPlan* plan, const DyadicProfile& p = DyadicProfile::sharp());
double stacked_norm_dirac(const Trajectory& u, StackKind kind, double M, const NormParams& prm,
                          const AngularTransformPlan* plan, const DyadicProfile& p = DyadicProfile::sharp());

// 1_I u on the same time grid; I = [ta, tb] must be sample-aligned.
Trajectory interval_restrict(const Trajectory& u, double ta, double tb);

}  // namespace dkg
