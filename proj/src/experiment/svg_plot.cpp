#include "conedecay/experiment/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "conedecay/error.hpp"

namespace conedecay::experiment {

namespace {

constexpr double kPanelW = 420, kPanelH = 300, kMargin = 50;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return !(hi >= lo); }
  void pad() {
    if (empty()) { lo = 0; hi = 1; }
    if (hi == lo) { lo -= 0.5; hi += 0.5; }
  }
};

void panel(std::ostringstream& os, double x0, bool log_x, const std::vector<PlotSeries>& series) {
  Range xr, yr;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.t.size(); ++k) {
      if (!(s.values[k] > 0.0) || (log_x && !(s.t[k] > 0.0))) continue;
      xr.add(log_x ? std::log10(s.t[k]) : s.t[k]);
      yr.add(std::log10(s.values[k]));
    }
  }
  xr.pad();
  yr.pad();
  const double left = x0 + kMargin, top = kMargin, w = kPanelW - 1.5 * kMargin, h = kPanelH - 2 * kMargin;
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * w; };
  auto py = [&](double y) { return top + h - (y - yr.lo) / (yr.hi - yr.lo) * h; };

  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(w) << "\" height=\""
     << num(h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 4, yv = yr.lo + (yr.hi - yr.lo) * k / 4;
    os << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(top + h + 16)
       << "\" font-size=\"10\" text-anchor=\"middle\">" << (log_x ? "1e" + num(xv) : num(xv)) << "</text>\n";
    os << "<text x=\"" << num(left - 4) << "\" y=\"" << num(py(yv) + 3)
       << "\" font-size=\"10\" text-anchor=\"end\">1e" << num(yv) << "</text>\n";
  }
  os << "<text x=\"" << num(left + w / 2) << "\" y=\"" << num(top + h + 32)
     << "\" font-size=\"11\" text-anchor=\"middle\">" << (log_x ? "t (log)" : "t") << "</text>\n";
  std::size_t c = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << kColors[c++ % 6] << "\" points=\"";
    for (std::size_t k = 0; k < s.t.size(); ++k) {
      if (!(s.values[k] > 0.0) || (log_x && !(s.t[k] > 0.0))) continue;
      os << num(px(log_x ? std::log10(s.t[k]) : s.t[k])) << ',' << num(py(std::log10(s.values[k]))) << ' ';
    }
    os << "\"/>\n";
  }
}

}  // namespace

std::string decay_svg(const std::string& title, const std::vector<PlotSeries>& series) {
  std::ostringstream os;
  const double width = 2 * kPanelW, height = kPanelH + 20.0 * (series.size() + 1);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(width / 2) << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">" << title
     << "</text>\n";
  panel(os, 0.0, false, series);
  panel(os, kPanelW, true, series);
  for (std::size_t c = 0; c < series.size(); ++c) {
    const double y = kPanelH + 14.0 + 18.0 * c;
    os << "<line x1=\"60\" x2=\"90\" y1=\"" << num(y) << "\" y2=\"" << num(y) << "\" stroke=\"" << kColors[c % 6]
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"96\" y=\"" << num(y + 4) << "\" font-size=\"11\">" << series[c].label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_decay_svg(const std::filesystem::path& path, const std::string& title,
                     const std::vector<PlotSeries>& series) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write plot " + path.string());
  os << decay_svg(title, series);
}

}  // namespace conedecay::experiment
