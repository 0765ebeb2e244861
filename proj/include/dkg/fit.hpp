#pragma once

#include <string>
#include <vector>

namespace dkg {

struct LineFit {
  double slope = 0, intercept = 0;
  double slope_stderr = 0;
  double half_width = 0;  // 95% confidence half-width of the slope
  int n = 0;
};

// Ordinary least squares y = a x + b.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
// Slope of log y against log x (both base 2).
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Fitted dyadic exponent plus the raw series behind it.
struct ScalingReport {
  std::string name;
  std::string x_label = "x", y_label = "y";
  std::vector<double> x, y;
  LineFit fit;
  double max_ratio = 0;
  std::vector<std::string> notes;

  void refit() { fit = fit_loglog(x, y); }
};

void write_report_csv(const std::string& path, const ScalingReport& r);
void write_report_json(const std::string& path, const ScalingReport& r);

}  // namespace dkg
