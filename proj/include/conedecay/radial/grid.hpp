#pragma once

namespace conedecay::radial {

/// Uniform node grid on [rho_min, rho_max] for u_tt = u_ρρ + (d-1)/ρ u_ρ.
struct RadialGrid {
  double rho_min = 1.0;
  double rho_max = 2.0;
  int n_cells = 100;
  double d = 1.0;
  double dt = 0.0;
  double cfl = 0.5;

  double h() const { return (rho_max - rho_min) / n_cells; }
  double rho(int j) const { return rho_min + j * h(); }
  int nodes() const { return n_cells + 1; }
  /// Number of steps of size dt to reach T (rounded to the nearest integer).
  int steps_to(double T) const;
};

enum class BumpMode { displacement, velocity };

/// a (1 - s²)⁴ with s = (ρ - center) / width, as u0 (displacement) or u1 (velocity).
struct BumpSpec {
  double center = 3.0;
  double width = 1.0;
  double amplitude = 1.0;
  BumpMode mode = BumpMode::displacement;

  double lo() const { return center - width; }
  double hi() const { return center + width; }
  double value(double rho) const;
  /// ∫_{center - width}^{rho} value: exact polynomial primitive.
  double primitive(double rho) const;
  /// d²/dρ² of value.
  double second_derivative(double rho) const;
};

/// Smallest rho_max satisfying rho_max >= support_hi + T + 10 h for a grid of n_cells.
double sized_rho_max(double rho_min, double support_hi, double T, int n_cells);

/// Builds a grid with dt = T / ceil(T / (cfl h)), so T is reached in whole steps.
/// Throws ParameterError on an invalid grid (rho_min <= 0, cfl outside (0, 0.9], ...).
RadialGrid make_radial_grid(double rho_min, double rho_max, int n_cells, double d, double cfl,
                            double T);

/// ρ-grid from the physical parameters: rho_min = r0^m and d = n/m.
RadialGrid make_radial_grid(int n, double m, double r0, double rho_max, int n_cells, double cfl,
                            double T);

/// Throws ParameterError unless the data support lies in (rho_min, rho_max - T) and
/// rho_max leaves 10 cells of slack past the front.
void validate_setup(const RadialGrid& grid, const BumpSpec& data, double T);

}  // namespace conedecay::radial
