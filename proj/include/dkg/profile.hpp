#pragma once

namespace dkg {

enum class ProfileKind { sharp, smooth };

// Dyadic bump rho and low-pass rho_{<=1}. Sharp: indicators of (1/2, 1] and
// [0, 1]. Smooth: rho(t) = chi(t) - chi(2t) with chi a C-infinity step equal
// to 1 on [0, 1] and 0 on [2, inf), so supp rho is inside (1/2, 2) and the
// dyadic sum telescopes.
struct DyadicProfile {
  ProfileKind kind = ProfileKind::sharp;

  double rho(double t) const;
  double rho_le1(double t) const;
  // Weight of block lambda (lambda = 1 is the low-pass block) at radius t.
  double block(double t, double lambda) const { return lambda <= 1.0 ? rho_le1(t) : rho(t / lambda); }
  // Weight of C_d (le = false) or C_{<=d} (le = true) at distance t.
  double modulation(double t, double d, bool le) const { return le ? rho_le1(t / d) : rho(t / d); }

  static DyadicProfile sharp() { return {ProfileKind::sharp}; }
  static DyadicProfile smooth() { return {ProfileKind::smooth}; }
};

double smooth_step(double t);  // chi
bool is_dyadic(double x);      // x in 2^Z

}  // namespace dkg
