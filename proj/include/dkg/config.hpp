#pragma once

#include <map>
#include <string>
#include <vector>

#include "dkg/grid.hpp"
#include "dkg/norms.hpp"

namespace dkg {

// Schema violation; `where` is a JSON pointer ("/probe/mu") or "line N".
struct ConfigError : std::runtime_error {
  std::string where;
  ConfigError(const std::string& where_, const std::string& what)
      : std::runtime_error(where_ + ": " + what), where(where_) {}
};

// non_resonant: s0 > 0 and sigma = 0; critical: s0 = 0 and sigma > 0.
enum class Regime { non_resonant, critical };

struct SolverSettings {
  std::string scheme = "strang";  // strang | rk4
  int cadence = 10;
  bool dealias = true;
  double ceiling = 10.0;
  int ell_max = 16;
};

// Initial data for simulate / norms / scatter-diagnose.
struct DataSettings {
  std::string kind = "gaussian";  // zero | gaussian | soliton
  double amplitude = 0.1;
  double width = 1.0;
};

struct SolitonSettings {
  double omega = 0.9;
  int samples = 40;
  double rmax = 22;
  double tol = 1e-3;
  double amp = 0.8;
  double width = 3;
  int max_iter = 60;
};

struct ProbeSettings {
  int s1 = +1, s2 = +1;
  double mu = 1;
  std::vector<double> lambdas{2, 4, 8, 16};
  std::vector<double> ratios{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> ds{8, 16, 32, 64, 128};
  int samples = 30;  // per cell
  std::string family = "kg";  // kg | wave_cube
  double lambda = 16;             // wave_cube: fixed frequency block
  std::vector<double> mus{1, 2, 4, 8};  // wave_cube: cube sides
};

struct ExperimentConfig {
  std::string experiment = "simulate";
  unsigned seed = 1;
  std::string out = "out";
  GridSpec grid{32, 2 * 3.14159265358979323846};
  TimeGrid time{0.0, 0.01, 100};
  double M = 1.0, m = 1.0;
  Regime regime = Regime::non_resonant;
  double s0 = 0.05, sigma = 0.0;
  NormParams norms = NormParams::defaults(0.0, 0.0, 0.05);
  SolverSettings solver;
  DataSettings data;
  SolitonSettings soliton;
  ProbeSettings probe;
  // declared assertion tolerances, by name
  std::map<std::string, double> checks = default_checks();
  int max_n = 256;  // resource ceiling on the grid

  static std::map<std::string, double> default_checks();
  void validate() const;
};

// Parse JSON text; missing keys take the defaults above, unknown keys throw.
// Norm exponents a, b default to the regime values when absent.
ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& c);
// 16 hex digits of FNV-1a over serialize_config.
std::string config_hash(const ExperimentConfig& c);

}  // namespace dkg
