#include "conedecay/decay/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "conedecay/error.hpp"

namespace conedecay::decay {

std::optional<double> extinction_time(const EnergySeries& series, double threshold) {
  if (!(threshold > 0.0)) throw ParameterError("extinction threshold must be positive");
  series.validate();
  if (series.size() == 0) return std::nullopt;
  const double limit = threshold * series.reference_energy();
  std::size_t k = series.size();
  while (k > 0 && series.values[k - 1] < limit) --k;
  if (k == series.size()) return std::nullopt;
  return series.times[k];
}

FitWindow default_window(const EnergySeries& s, const ClassifyOptions& o) {
  if (o.window) return *o.window;
  if (s.size() == 0) throw InsufficientData("empty series (extend T)");
  const double t0 = std::isfinite(s.meta.t_transit) ? s.meta.t_transit : s.times.front();
  return {t0 + o.window_offset, o.window_end_fraction * s.times.back()};
}

namespace {

/// Relative spread of the fitted rate over equal sub-windows of w.
/// Sub-windows are equal in t for the exponential model and in log t for the polynomial one.
double slope_spread(const EnergySeries& s, FitWindow w, Model model, double full_rate,
                    const ClassifyOptions& o) {
  std::vector<double> rates;
  for (int k = 0; k < o.sub_windows; ++k) {
    FitWindow sub;
    if (model == Model::exponential) {
      sub.t1 = w.t1 + (w.t2 - w.t1) * k / o.sub_windows;
      sub.t2 = w.t1 + (w.t2 - w.t1) * (k + 1) / o.sub_windows;
    } else {
      const double l1 = std::log(w.t1), l2 = std::log(w.t2);
      sub.t1 = std::exp(l1 + (l2 - l1) * k / o.sub_windows);
      sub.t2 = std::exp(l1 + (l2 - l1) * (k + 1) / o.sub_windows);
    }
    try {
      const DecayFit f = model == Model::exponential ? fit_exponential(s, sub, o.r2_threshold)
                                                     : fit_polynomial(s, sub, o.r2_threshold);
      rates.push_back(f.rate);
    } catch (const InsufficientData&) {
      // too sparse for this sub-window; the others still count
    }
  }
  if (rates.size() < 2) return std::numeric_limits<double>::infinity();
  const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
  if (full_rate == 0.0) return std::numeric_limits<double>::infinity();
  return (*hi - *lo) / std::abs(full_rate);
}

}  // namespace

DecayFit classify(const EnergySeries& s, const ClassifyOptions& o) {
  s.validate();
  if (s.size() < kMinFitPoints) throw InsufficientData("series too short (extend T)");

  if (auto te = extinction_time(s, o.extinction_threshold)) {
    const auto tail = static_cast<std::size_t>(
        s.times.end() - std::lower_bound(s.times.begin(), s.times.end(), *te));
    if (tail >= o.extinction_min_samples) {
      DecayFit f;
      f.model = Model::extinct;
      f.extinction_time = te;
      f.r_squared = 0.0;
      f.note = "E stays below " + std::to_string(o.extinction_threshold) + " E(0)";
      return f;
    }
  }

  FitWindow w = default_window(s, o);
  // Stop the window before any sample at the floor.
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.times[k] >= w.t1 && s.times[k] <= w.t2 && !(s.values[k] > kValueFloor)) {
      w.t2 = k > 0 ? s.times[k - 1] : w.t1;
      break;
    }
  }
  if (!(w.t2 > w.t1) || !(w.t1 > 0.0)) throw InsufficientData("fit window is empty (extend T)");

  DecayFit e = fit_exponential(s, w, o.r2_threshold);
  DecayFit p = fit_polynomial(s, w, o.r2_threshold);
  e.slope_spread = slope_spread(s, w, Model::exponential, e.rate, o);
  p.slope_spread = slope_spread(s, w, Model::polynomial, p.rate, o);

  auto decades = [&](const DecayFit& f) {
    if (f.model == Model::exponential) return f.rate * (w.t2 - w.t1) / std::log(10.0);
    return f.rate * std::log10(w.t2 / w.t1);
  };

  const bool e_wins = e.rate > 0.0 && e.slope_spread <= o.slope_tolerance &&
                      e.residual_rms <= p.residual_rms / o.residual_ratio;
  const bool p_wins = p.rate > 0.0 && p.slope_spread <= o.slope_tolerance &&
                      p.residual_rms <= e.residual_rms / o.residual_ratio;

  std::ostringstream note;
  note << "exp rms " << e.residual_rms << " spread " << e.slope_spread << "; poly rms "
       << p.residual_rms << " spread " << p.slope_spread;

  DecayFit out;
  if (e_wins) {
    out = e;
  } else if (p_wins) {
    out = p;
  } else {
    out = e.residual_rms <= p.residual_rms ? e : p;
    if (std::max(decades(e), decades(p)) < o.min_decades) {
      throw InsufficientData("less than " + std::to_string(o.min_decades) +
                             " decade(s) of decay in the fit window (extend T)");
    }
    out.model = Model::inconclusive;
    out.note = note.str();
    return out;
  }
  if (decades(out) < o.min_decades) {
    throw InsufficientData("less than " + std::to_string(o.min_decades) +
                           " decade(s) of decay in the fit window (extend T)");
  }
  out.note = note.str();
  return out;
}

}  // namespace conedecay::decay
