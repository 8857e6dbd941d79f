#pragma once

#include <optional>

#include "conedecay/decay/fit.hpp"

namespace conedecay::decay {

struct ClassifyOptions {
  /// Extinct once E stays below threshold * E(0).
  double extinction_threshold = 1e-8;
  /// Samples that must stay below the threshold to call extinction.
  std::size_t extinction_min_samples = 3;
  /// Winner's log-residual RMS must be at most loser's / residual_ratio.
  double residual_ratio = 2.0;
  /// Max relative slope spread over sub-windows.
  double slope_tolerance = 0.10;
  int sub_windows = 3;
  /// Window [t_transit + window_offset, window_end_fraction * T] unless `window` is set.
  double window_offset = 5.0;
  double window_end_fraction = 0.9;
  std::optional<FitWindow> window;
  /// Decades of decay the window must span.
  double min_decades = 1.0;
  double r2_threshold = 0.99;
};

/// First sample time after which every sample is below threshold * E(0), or nothing.
std::optional<double> extinction_time(const EnergySeries& series, double threshold);

/// Default fit window of a series under the options.
FitWindow default_window(const EnergySeries& series, const ClassifyOptions& options = {});

/// Extinct / exponential / polynomial / inconclusive verdict.
/// Throws InsufficientData ("extend T") when the window is too short or spans less than
/// min_decades of decay.
DecayFit classify(const EnergySeries& series, const ClassifyOptions& options = {});

}  // namespace conedecay::decay
