#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "conedecay/decay/series.hpp"

namespace conedecay::decay {

enum class Model { exponential, polynomial, extinct, inconclusive };

std::string_view to_string(Model m);
Model parse_model(std::string_view s);

struct FitWindow {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// exponential: E ≈ prefactor e^{-rate t}; polynomial: E ≈ prefactor t^{-rate}.
struct DecayFit {
  Model model = Model::inconclusive;
  double rate = 0.0;
  double prefactor = 0.0;
  FitWindow window;
  double r_squared = 0.0;
  double residual_rms = 0.0;
  std::size_t points = 0;
  /// r_squared below the acceptance threshold.
  bool flagged = false;
  /// Relative spread of the slope over sub-windows (classify only).
  double slope_spread = 0.0;
  std::optional<double> extinction_time;
  std::string note;
};

constexpr double kValueFloor = 1e-30;
constexpr std::size_t kMinFitPoints = 8;

/// Least squares of log E against t over samples with t in [t1, t2].
/// Throws InsufficientData with fewer than 8 points, ParameterError on values <= 1e-30.
DecayFit fit_exponential(const EnergySeries& series, FitWindow window, double r2_threshold = 0.99);

/// Least squares of log E against log t. Requires t1 > 0.
DecayFit fit_polynomial(const EnergySeries& series, FitWindow window, double r2_threshold = 0.99);

/// CSV: model,rate,prefactor,t1,t2,r_squared,residual_rms,points,slope_spread,extinction_time
std::string fit_csv_header();
std::string to_csv_row(const DecayFit& fit);
DecayFit parse_csv_row(const std::string& row);

/// Multi-line human readable block.
std::string summary_block(const DecayFit& fit);

}  // namespace conedecay::decay
