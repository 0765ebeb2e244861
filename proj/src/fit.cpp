#include "dkg/fit.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "dkg/grid.hpp"

namespace dkg {

namespace {

// two-sided 97.5% Student t quantiles for 1..30 degrees of freedom
double t975(int dof) {
  static const double q[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                             2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                             2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof < 1) return INFINITY;
  return dof <= 30 ? q[dof - 1] : 1.96;
}

}  // namespace

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw UsageError("fit_line: size mismatch");
  if (x.size() < 2) throw UsageError("fit_line: need at least two points");
  const int n = int(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw UsageError("fit_line: degenerate abscissae");
  LineFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double ss = 0;
    for (int i = 0; i < n; ++i) {
      double e = y[i] - f.intercept - f.slope * x[i];
      ss += e * e;
    }
    f.slope_stderr = std::sqrt(ss / (n - 2) / sxx);
    f.half_width = t975(n - 2) * f.slope_stderr;
  }
  return f;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw UsageError("fit_loglog: nonpositive data");
    lx.push_back(std::log2(x[i]));
    ly.push_back(std::log2(y[i]));
  }
  return fit_line(lx, ly);
}

void write_report_csv(const std::string& path, const ScalingReport& r) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.precision(17);
  os << "# dkg-csv scaling v1\n";
  os << "# name=" << r.name << " slope=" << r.fit.slope << " half_width=" << r.fit.half_width
     << " max_ratio=" << r.max_ratio << " points=" << r.fit.n << "\n";
  os << r.x_label << "," << r.y_label << "\n";
  for (std::size_t i = 0; i < r.x.size(); ++i) os << r.x[i] << "," << r.y[i] << "\n";
}

void write_report_json(const std::string& path, const ScalingReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["x_label"] = r.x_label;
  j["y_label"] = r.y_label;
  j["x"] = r.x;
  j["y"] = r.y;
  j["slope"] = r.fit.slope;
  j["intercept"] = r.fit.intercept;
  j["slope_stderr"] = r.fit.slope_stderr;
  j["slope_ci95_half_width"] = r.fit.half_width;
  j["points"] = r.fit.n;
  j["max_ratio"] = r.max_ratio;
  j["notes"] = r.notes;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << j.dump(2) << "\n";
}

}  // namespace dkg
