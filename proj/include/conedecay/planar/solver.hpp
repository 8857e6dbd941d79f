#pragma once

#include <functional>
#include <vector>

#include "conedecay/planar/operator.hpp"
#include "conedecay/radial/grid.hpp"

namespace conedecay::planar {

struct PlanarState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

/// Radial bump in the coordinate ρ = r^m (r itself when m = 1) times cos(mode (θ - phase)).
/// mode 0 gives radial data.
struct PlanarData {
  radial::BumpSpec radial;
  int mode = 0;
  double phase = 0.0;
  double m = 1.0;

  double value(double r, double theta) const;
  /// Outer edge of the support in r.
  double support_radius() const;
};

/// Node values of the data on the grid (rows 0 and n_r forced to zero).
std::vector<double> sample_data(const PolarGrid2D& grid, const PlanarData& data);

struct PlanarRunOptions {
  double cfl = 0.5;
  int sample_every = 1;
  /// Abort when the measured total energy exceeds (1 + growth_limit) E(0).
  double growth_limit = 0.01;
};

/// Chooses dt = T / ceil(T / dt_cfl) with dt_cfl from PlanarOperator::cfl_time_step and
/// checks it against the leapfrog stability limit. Throws ParameterError if impossible.
double choose_time_step(const PlanarOperator& op, double cfl, double T);

using PlanarObserver = std::function<void(const PlanarState&)>;

/// Leapfrog on the assembled operator, first step by Taylor expansion. `op.grid().dt` is
/// ignored; the step comes from choose_time_step. Observer sees t = 0, every
/// sample_every steps, and T. Throws InstabilityError on growth or non-finite values.
void solve_planar(const PlanarOperator& op, const PlanarData& data, double T,
                  const PlanarRunOptions& options, const PlanarObserver& observer);

std::vector<PlanarState> solve_planar(const PlanarOperator& op, const PlanarData& data, double T,
                                      const PlanarRunOptions& options);

}  // namespace conedecay::planar
