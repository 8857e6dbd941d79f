#pragma once

#include <limits>
#include <string>
#include <vector>

namespace conedecay::decay {

struct SeriesMeta {
  int n = 0;
  double m = 0.0;
  double a = 0.0;
  double R0 = 0.0;
  std::string run_id;
  /// Total energy at t = 0; extinction is measured against it. NaN means "use the first value".
  double e0 = std::numeric_limits<double>::quiet_NaN();
  /// Time after which the asymptotic fit window may start. NaN means the first sample time.
  double t_transit = std::numeric_limits<double>::quiet_NaN();
};

/// Samples of E(t, a). Times strictly increasing, values >= 0.
struct EnergySeries {
  std::vector<double> times;
  std::vector<double> values;
  SeriesMeta meta;

  /// Throws ParameterError when the invariants fail.
  void validate() const;
  std::size_t size() const { return times.size(); }
  double reference_energy() const;

  /// Every k-th sample starting from the first.
  EnergySeries decimated(std::size_t k) const;
  /// Values (and e0) multiplied by c > 0.
  EnergySeries scaled(double c) const;
};

}  // namespace conedecay::decay
