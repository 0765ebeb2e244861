#pragma once

#include <string>

namespace dkg {

struct PlotResult {
  bool warning = false;
  std::string message;
  std::string schema;  // scaling | diagnostics
  double slope = 0;    // annotated log-log slope (scaling only)
  int points = 0;
};

// Reads a versioned dkg CSV and writes a self-contained SVG: log-log with the
// least-squares line and its slope for scaling reports, stacked time series
// for diagnostics. An empty table gives empty axes and a warning; an unknown
// schema throws UsageError.
PlotResult emit_plot(const std::string& csv_path, const std::string& svg_path);

}  // namespace dkg
