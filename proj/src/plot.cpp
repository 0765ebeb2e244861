#include "dkg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "dkg/fit.hpp"
#include "dkg/grid.hpp"

namespace dkg {

namespace {

struct Table {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Table read_table(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("emit_plot: cannot read " + path);
  Table t;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# dkg-csv ", 0) != 0)
    throw UsageError("emit_plot: unknown schema (missing dkg-csv header) in " + path);
  auto head = split(line.substr(10), ' ');
  if (head.size() != 2 || head[1] != "v1") throw UsageError("emit_plot: unsupported schema version in " + path);
  t.schema = head[0];
  if (t.schema != "scaling" && t.schema != "diagnostics") throw UsageError("emit_plot: unknown schema " + t.schema);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (t.columns.empty()) {
      t.columns = split(line, ',');
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size()) throw UsageError("emit_plot: ragged row in " + path);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

// Panel with data range [x0,x1] x [y0,y1] mapped into a pixel box.
struct Panel {
  double px, py, pw, ph;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  double X(double x) const { return px + (x - x0) / (x1 - x0) * pw; }
  double Y(double y) const { return py + ph - (y - y0) / (y1 - y0) * ph; }
};

void pad_range(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  double p = 0.05 * (hi - lo);
  lo -= p;
  hi += p;
}

void axes(std::ostringstream& os, const Panel& p, const std::string& xl, const std::string& yl, bool log2ticks) {
  os << "<rect x='" << p.px << "' y='" << p.py << "' width='" << p.pw << "' height='" << p.ph
     << "' fill='none' stroke='black'/>\n";
  auto tick_label = [&](double v) { return log2ticks ? "2^" + num(v) : num(v); };
  for (int i = 0; i <= 4; ++i) {
    double xv = p.x0 + (p.x1 - p.x0) * i / 4, yv = p.y0 + (p.y1 - p.y0) * i / 4;
    os << "<text x='" << p.X(xv) << "' y='" << p.py + p.ph + 14 << "' font-size='10' text-anchor='middle'>"
       << tick_label(xv) << "</text>\n";
    os << "<text x='" << p.px - 4 << "' y='" << p.Y(yv) + 3 << "' font-size='10' text-anchor='end'>"
       << tick_label(yv) << "</text>\n";
  }
  os << "<text x='" << p.px + p.pw / 2 << "' y='" << p.py + p.ph + 30 << "' font-size='12' text-anchor='middle'>"
     << esc(xl) << "</text>\n";
  os << "<text x='" << p.px << "' y='" << p.py - 6 << "' font-size='12'>" << esc(yl) << "</text>\n";
}

std::string polyline(const Panel& p, const std::vector<double>& x, const std::vector<double>& y) {
  std::ostringstream os;
  os << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
  for (std::size_t i = 0; i < x.size(); ++i) os << p.X(x[i]) << "," << p.Y(y[i]) << " ";
  os << "'/>\n";
  return os.str();
}

}  // namespace

PlotResult emit_plot(const std::string& csv_path, const std::string& svg_path) {
  Table t = read_table(csv_path);
  PlotResult res;
  res.schema = t.schema;
  res.points = int(t.rows.size());
  std::ostringstream os;
  os.precision(10);

  if (t.schema == "scaling") {
    if (t.columns.size() != 2) throw UsageError("emit_plot: scaling tables have two columns");
    std::vector<double> lx, ly, x, y;
    for (const auto& r : t.rows)
      if (r[0] > 0 && r[1] > 0) {
        x.push_back(r[0]);
        y.push_back(r[1]);
        lx.push_back(std::log2(r[0]));
        ly.push_back(std::log2(r[1]));
      }
    const int W = 640, H = 480;
    os << "<?xml version='1.0' encoding='UTF-8'?>\n<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    Panel p{70, 40, 540, 380};
    if (!lx.empty()) {
      p.x0 = *std::min_element(lx.begin(), lx.end());
      p.x1 = *std::max_element(lx.begin(), lx.end());
      p.y0 = *std::min_element(ly.begin(), ly.end());
      p.y1 = *std::max_element(ly.begin(), ly.end());
    }
    pad_range(p.x0, p.x1);
    pad_range(p.y0, p.y1);
    axes(os, p, t.columns[0] + " (log2)", t.columns[1] + " (log2)", true);
    if (lx.empty()) {
      res.warning = true;
      res.message = "no positive data rows; empty axes written";
    } else {
      os << polyline(p, lx, ly);
      for (std::size_t i = 0; i < lx.size(); ++i)
        os << "<circle cx='" << p.X(lx[i]) << "' cy='" << p.Y(ly[i]) << "' r='3' fill='steelblue'/>\n";
      if (lx.size() >= 2) {
        LineFit f = fit_loglog(x, y);
        res.slope = f.slope;
        double a = p.x0, b = p.x1;
        os << "<line x1='" << p.X(a) << "' y1='" << p.Y(f.intercept + f.slope * a) << "' x2='" << p.X(b)
           << "' y2='" << p.Y(f.intercept + f.slope * b) << "' stroke='firebrick' stroke-dasharray='6,4'/>\n";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", f.slope);
        os << "<text id='slope' x='" << p.px + 8 << "' y='" << p.py + 16 << "' font-size='12' fill='firebrick'>slope = "
           << buf << "</text>\n";
      } else {
        res.warning = true;
        res.message = "single point; no slope";
      }
    }
    os << "</svg>\n";
  } else {
    // diagnostics: one panel per series against t
    if (t.columns.size() < 2 || t.columns[0] != "t") throw UsageError("emit_plot: diagnostics need a t column");
    const int series = int(t.columns.size()) - 1;
    const int W = 640, ph = 110, H = 40 + series * (ph + 50);
    os << "<?xml version='1.0' encoding='UTF-8'?>\n<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    if (t.rows.empty()) {
      res.warning = true;
      res.message = "no data rows; empty axes written";
    }
    for (int s = 0; s < series; ++s) {
      Panel p{80, 30.0 + s * (ph + 50), 520, double(ph)};
      std::vector<double> x, y;
      for (const auto& r : t.rows) {
        x.push_back(r[0]);
        y.push_back(r[s + 1]);
      }
      if (!x.empty()) {
        p.x0 = x.front();
        p.x1 = x.back();
        p.y0 = *std::min_element(y.begin(), y.end());
        p.y1 = *std::max_element(y.begin(), y.end());
      }
      pad_range(p.x0, p.x1);
      pad_range(p.y0, p.y1);
      axes(os, p, "t", t.columns[s + 1], false);
      if (!x.empty()) os << polyline(p, x, y);
    }
    os << "</svg>\n";
  }
  std::ofstream out(svg_path);
  if (!out) throw UsageError("emit_plot: cannot write " + svg_path);
  out << os.str();
  return res;
}

}  // namespace dkg
