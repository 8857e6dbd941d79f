#pragma once

#include <vector>

namespace conedecay::planar {

/// How the radial nodes are placed: uniform in r, or uniform in ρ = r^m
/// (so a cone's unit-speed waves stay equally resolved as they travel out).
enum class RadialSpacing { uniform_r, uniform_rho };

/// Annulus r_min <= r <= r_max, periodic in θ. Node rows i = 0..n_r, columns j = 0..n_theta-1,
/// stored row-major (r then θ). r(s) is a smooth map of the logical coordinate s ∈ [0, 1].
struct PolarGrid2D {
  double r_min = 1.0;
  double r_max = 2.0;
  int n_r = 0;
  int n_theta = 0;
  double dt = 0.0;
  RadialSpacing spacing = RadialSpacing::uniform_r;
  double m = 1.0;

  std::vector<double> r_node;   // n_r + 1
  std::vector<double> dr_ds;    // r'(s) at nodes
  std::vector<double> r_cell;   // r(s_{i+1/2}), n_r

  double ds() const { return 1.0 / n_r; }
  double dtheta() const;
  double theta(int j) const { return j * dtheta(); }
  std::size_t node_count() const { return static_cast<std::size_t>(n_r + 1) * n_theta; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_theta + j; }
};

/// Throws ParameterError on r_min <= 0, r_max <= r_min, n_r < 2, n_theta < 4 or m <= 0.
PolarGrid2D make_polar_grid(double r_min, double r_max, int n_r, int n_theta,
                            RadialSpacing spacing = RadialSpacing::uniform_r, double m = 1.0);

}  // namespace conedecay::planar
