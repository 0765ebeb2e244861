#pragma once

#include <string>
#include <vector>

#include "dkg/config.hpp"
#include "dkg/dynamics.hpp"

namespace dkg {

// Unknown experiment or resource ceiling exceeded.
struct ExperimentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string name;
  double value = 0, bound = 0;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string experiment;
  bool pass = false;  // every declared check passed
  std::vector<CheckResult> checks;
  std::vector<std::string> files;  // relative to the output directory
  std::vector<std::string> warnings;
  double wall_seconds = 0;
};

// simulate | norms | soliton | probe-resonance | probe-null | probe-strichartz |
// probe-bilinear | probe-trilinear | scatter-diagnose
const std::vector<std::string>& experiment_registry();

// Runs c.experiment, writing CSV (canonical), JSON summaries, optional SVG
// plots and manifest.json into c.out. Outputs other than the manifest depend
// only on the config.
RunReport run_experiment(const ExperimentConfig& c, bool plots = false);

// Initial data from c.data: zero, a Gaussian spinor with a Gaussian scalar
// (amplitude, width), or the refined stationary profile with its static field.
DKGState initial_state(const ExperimentConfig& c);
SolverConfig solver_config(const ExperimentConfig& c);

}  // namespace dkg
