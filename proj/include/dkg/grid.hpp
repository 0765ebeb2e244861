#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dkg {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

// Thrown for precondition violations (wrong representation, bad sizes, ...).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Periodic box [-L/2, L/2)^3 sampled at n points per axis; node i sits at (i - n/2) h.
struct GridSpec {
  int n = 32;
  double L = 2.0 * 3.14159265358979323846;

  GridSpec() = default;
  GridSpec(int n_, double L_);

  double h() const { return L / n; }
  double dk() const { return 2.0 * 3.14159265358979323846 / L; }
  double nyquist() const { return 3.14159265358979323846 / L * n; }
  std::size_t size() const { return std::size_t(n) * n * n; }
  double cell() const { return h() * h() * h(); }
  double volume() const { return L * L * L; }

  std::size_t index(int i, int j, int k) const { return (std::size_t(i) * n + j) * n + k; }
  // integer wavenumber of array slot p (FFT ordering)
  int wavenumber(int p) const { return p < n / 2 ? p : p - n; }
  int slot(int k) const { return k >= 0 ? k : k + n; }
  Vec3 mode(std::size_t idx) const;
  Vec3 node(std::size_t idx) const;
  bool on_lattice(const Vec3& xi, std::array<int, 3>* k = nullptr) const;

  bool operator==(const GridSpec& o) const { return n == o.n && L == o.L; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.1;
  int nt = 1;

  TimeGrid() = default;
  TimeGrid(double t0_, double dt_, int nt_);

  double T() const { return nt * dt; }
  int samples() const { return nt + 1; }
  double time(int j) const { return t0 + j * dt; }
  // trapezoid weight of sample j
  double weight(int j) const { return (j == 0 || j == nt) ? 0.5 * dt : dt; }
};

}  // namespace dkg
