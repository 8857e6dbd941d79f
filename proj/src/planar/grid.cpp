#include "conedecay/planar/grid.hpp"

#include <cmath>
#include <numbers>

#include "conedecay/error.hpp"

namespace conedecay::planar {

double PolarGrid2D::dtheta() const { return 2.0 * std::numbers::pi / n_theta; }

PolarGrid2D make_polar_grid(double r_min, double r_max, int n_r, int n_theta, RadialSpacing spacing,
                            double m) {
  if (!(r_min > 0.0)) throw ParameterError("planar grid: r_min must be positive");
  if (!(r_max > r_min)) throw ParameterError("planar grid: r_max must exceed r_min");
  if (n_r < 2 || n_theta < 4) throw ParameterError("planar grid: need n_r >= 2 and n_theta >= 4");
  if (!(m > 0.0)) throw ParameterError("planar grid: m must be positive");
  PolarGrid2D g;
  g.r_min = r_min;
  g.r_max = r_max;
  g.n_r = n_r;
  g.n_theta = n_theta;
  g.spacing = spacing;
  g.m = m;
  const double rho0 = std::pow(r_min, m);
  const double rho1 = std::pow(r_max, m);
  auto map = [&](double s, double& r, double& drds) {
    if (spacing == RadialSpacing::uniform_r) {
      r = r_min + s * (r_max - r_min);
      drds = r_max - r_min;
    } else {
      r = std::pow(rho0 + s * (rho1 - rho0), 1.0 / m);
      drds = (rho1 - rho0) / (m * std::pow(r, m - 1.0));
    }
  };
  g.r_node.resize(n_r + 1);
  g.dr_ds.resize(n_r + 1);
  g.r_cell.resize(n_r);
  for (int i = 0; i <= n_r; ++i) map(static_cast<double>(i) / n_r, g.r_node[i], g.dr_ds[i]);
  g.r_node.front() = r_min;
  g.r_node.back() = r_max;
  for (int i = 0; i < n_r; ++i) {
    double rc, unused;
    map((i + 0.5) / n_r, rc, unused);
    g.r_cell[i] = rc;
  }
  return g;
}

}  // namespace conedecay::planar
