#include "conedecay/decay/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include "conedecay/error.hpp"

namespace conedecay::decay {

std::string_view to_string(Model m) {
  switch (m) {
    case Model::exponential: return "exponential";
    case Model::polynomial: return "polynomial";
    case Model::extinct: return "extinct";
    case Model::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Model parse_model(std::string_view s) {
  if (s == "exponential") return Model::exponential;
  if (s == "polynomial") return Model::polynomial;
  if (s == "extinct") return Model::extinct;
  if (s == "inconclusive") return Model::inconclusive;
  throw ParameterError("unknown decay model '" + std::string(s) + "'");
}

namespace {

DecayFit log_linear_fit(const EnergySeries& series, FitWindow w, bool log_time, double r2_threshold) {
  series.validate();
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double t = series.times[k];
    if (t < w.t1 || t > w.t2) continue;
    const double v = series.values[k];
    if (!(v > kValueFloor)) throw ParameterError("fit window contains values at or below the floor");
    xs.push_back(log_time ? std::log(t) : t);
    ys.push_back(std::log(v));
  }
  if (xs.size() < kMinFitPoints) {
    throw InsufficientData("fit window holds " + std::to_string(xs.size()) + " points; need 8 (extend T)");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = xs[k] - mx, dy = ys[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = ys[k] - (intercept + slope * xs[k]);
    ss_res += r * r;
  }
  DecayFit f;
  f.model = log_time ? Model::polynomial : Model::exponential;
  f.rate = -slope;
  if (f.rate == 0.0) f.rate = 0.0;
  f.prefactor = std::exp(intercept);
  f.window = w;
  f.points = xs.size();
  f.residual_rms = std::sqrt(ss_res / n);
  // Relative to the magnitude of the data, a residual this small is round-off.
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(my) + 1.0);
  if (syy <= noise * noise * n) {
    f.r_squared = 1.0;
  } else {
    f.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  f.flagged = f.r_squared < r2_threshold;
  return f;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DecayFit fit_exponential(const EnergySeries& series, FitWindow window, double r2_threshold) {
  return log_linear_fit(series, window, false, r2_threshold);
}

DecayFit fit_polynomial(const EnergySeries& series, FitWindow window, double r2_threshold) {
  if (!(window.t1 > 0.0)) throw ParameterError("polynomial fit needs t1 > 0");
  return log_linear_fit(series, window, true, r2_threshold);
}

std::string fit_csv_header() {
  return "model,rate,prefactor,t1,t2,r_squared,residual_rms,points,slope_spread,extinction_time";
}

std::string to_csv_row(const DecayFit& f) {
  std::ostringstream os;
  os << to_string(f.model) << ',' << fmt(f.rate) << ',' << fmt(f.prefactor) << ',' << fmt(f.window.t1)
     << ',' << fmt(f.window.t2) << ',' << fmt(f.r_squared) << ',' << fmt(f.residual_rms) << ','
     << f.points << ',' << fmt(f.slope_spread) << ',';
  if (f.extinction_time) os << fmt(*f.extinction_time);
  return os.str();
}

DecayFit parse_csv_row(const std::string& row) {
  std::vector<std::string> cells;
  std::stringstream ss(row);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!row.empty() && row.back() == ',') cells.emplace_back();
  if (cells.size() != 10) throw ParameterError("fit row needs 10 fields");
  DecayFit f;
  f.model = parse_model(cells[0]);
  f.rate = std::stod(cells[1]);
  f.prefactor = std::stod(cells[2]);
  f.window = {std::stod(cells[3]), std::stod(cells[4])};
  f.r_squared = std::stod(cells[5]);
  f.residual_rms = std::stod(cells[6]);
  f.points = std::stoull(cells[7]);
  f.slope_spread = std::stod(cells[8]);
  if (!cells[9].empty()) f.extinction_time = std::stod(cells[9]);
  return f;
}

std::string summary_block(const DecayFit& f) {
  std::ostringstream os;
  os << "model:          " << to_string(f.model) << '\n';
  switch (f.model) {
    case Model::exponential:
      os << "rate C2:        " << fmt(f.rate) << '\n';
      break;
    case Model::polynomial:
      os << "exponent p:     " << fmt(f.rate) << '\n';
      break;
    default:
      break;
  }
  if (f.model == Model::exponential || f.model == Model::polynomial || f.points > 0) {
    os << "prefactor:      " << fmt(f.prefactor) << '\n';
    os << "window:         [" << fmt(f.window.t1) << ", " << fmt(f.window.t2) << "]\n";
    os << "r_squared:      " << fmt(f.r_squared) << (f.flagged ? "  (flagged)" : "") << '\n';
    os << "residual_rms:   " << fmt(f.residual_rms) << '\n';
    os << "points:         " << f.points << '\n';
    os << "slope_spread:   " << fmt(f.slope_spread) << '\n';
  }
  if (f.extinction_time) os << "extinct from t: " << fmt(*f.extinction_time) << '\n';
  if (!f.note.empty()) os << "note:           " << f.note << '\n';
  return os.str();
}

}  // namespace conedecay::decay
