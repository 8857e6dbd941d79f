#include "conedecay/radial/grid.hpp"

#include <cmath>
#include <string>

#include "conedecay/error.hpp"

namespace conedecay::radial {

int RadialGrid::steps_to(double T) const {
  if (!(dt > 0.0)) throw ParameterError("grid has no time step");
  return static_cast<int>(std::llround(T / dt));
}

double BumpSpec::value(double rho) const {
  const double s = (rho - center) / width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return amplitude * q * q * q * q;
}

double BumpSpec::primitive(double rho) const {
  // (1-s²)⁴ = 1 - 4s² + 6s⁴ - 4s⁶ + s⁸
  auto b = [](double s) {
    const double s2 = s * s;
    return s * (1.0 + s2 * (-4.0 / 3.0 + s2 * (6.0 / 5.0 + s2 * (-4.0 / 7.0 + s2 / 9.0))));
  };
  double s = (rho - center) / width;
  if (s < -1.0) s = -1.0;
  if (s > 1.0) s = 1.0;
  return amplitude * width * (b(s) - b(-1.0));
}

double BumpSpec::second_derivative(double rho) const {
  const double s = (rho - center) / width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  // d²/ds² q⁴ = -8 q³ + 48 s² q²
  return amplitude * (-8.0 * q * q * q + 48.0 * s * s * q * q) / (width * width);
}

double sized_rho_max(double rho_min, double support_hi, double T, int n_cells) {
  if (n_cells <= 10) throw ParameterError("n_cells must exceed 10");
  const double span = support_hi - rho_min + T;
  return rho_min + span / (1.0 - 10.0 / n_cells) * (1.0 + 1e-9);
}

RadialGrid make_radial_grid(double rho_min, double rho_max, int n_cells, double d, double cfl,
                            double T) {
  if (!(rho_min > 0.0)) throw ParameterError("rho_min must be positive");
  if (!(rho_max > rho_min)) throw ParameterError("rho_max must exceed rho_min");
  if (n_cells < 2) throw ParameterError("n_cells must be at least 2");
  if (!(d > 0.0)) throw ParameterError("effective dimension d must be positive");
  if (!(cfl > 0.0 && cfl <= 0.9)) throw ParameterError("cfl must lie in (0, 0.9]");
  if (!(T > 0.0)) throw ParameterError("final time must be positive");
  RadialGrid g;
  g.rho_min = rho_min;
  g.rho_max = rho_max;
  g.n_cells = n_cells;
  g.d = d;
  g.cfl = cfl;
  const double steps = std::ceil(T / (cfl * g.h()) - 1e-9);
  g.dt = T / steps;
  return g;
}

RadialGrid make_radial_grid(int n, double m, double r0, double rho_max, int n_cells, double cfl,
                            double T) {
  if (!(m > 0.0)) throw ParameterError("cone power m must be positive");
  if (n < 2) throw ParameterError("dimension must be >= 2");
  return make_radial_grid(std::pow(r0, m), rho_max, n_cells, n / m, cfl, T);
}

void validate_setup(const RadialGrid& g, const BumpSpec& data, double T) {
  if (!(data.width > 0.0)) throw ParameterError("bump width must be positive");
  if (data.lo() <= g.rho_min) throw ParameterError("data support touches the obstacle");
  if (g.rho_max < data.hi() + T + 10.0 * g.h() * (1.0 - 1e-9)) {
    throw ParameterError("rho_max too small: the front would reach the outer boundary (need " +
                         std::to_string(data.hi() + T + 10.0 * g.h()) + ")");
  }
  if (g.dt > 0.9 * g.h() * (1.0 + 1e-12)) throw ParameterError("CFL violated: dt > 0.9 h");
}

}  // namespace conedecay::radial
