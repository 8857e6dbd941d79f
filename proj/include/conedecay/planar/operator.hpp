#pragma once

#include <span>
#include <vector>

#include "conedecay/metric/field.hpp"
#include "conedecay/planar/grid.hpp"

namespace conedecay::planar {

/// Polar components of A at a point: A_rr = e_r·A e_r, A_rt = e_r·A e_θ, A_tt = e_θ·A e_θ.
struct PolarTensor {
  double rr = 0.0, rt = 0.0, tt = 0.0;
};

PolarTensor polar_components(const metric::CoefficientField& field, double r, double theta);

/// Discrete L ≈ div A ∇ with Dirichlet rows 0 and n_r.
///
/// L = -M^{-1} ∇E_h where E_h is a sum of per-cell quadratic forms in the corner
/// differences (A taken at the cell centre) and M is the lumped node area
/// r r'(s) Δs Δθ. L is therefore symmetric and negative semidefinite in the
/// M-weighted inner product.
class PlanarOperator {
 public:
  PlanarOperator(const metric::CoefficientField& field, const PolarGrid2D& grid);

  /// out = L u. Both spans hold node_count() values.
  void apply(std::span<const double> u, std::span<double> out) const;
  std::vector<double> apply(const std::vector<double>& u) const;

  /// Discrete potential energy of cell (i, j), i < n_r. Σ over cells is E_h(u) = -½<u, Lu>_M.
  double cell_energy(std::span<const double> u, int i, int j) const;

  /// Σ M_i u_i w_i.
  double inner(std::span<const double> u, std::span<const double> w) const;

  const PolarGrid2D& grid() const { return grid_; }
  const std::vector<double>& node_mass() const { return mass_; }

  /// cfl · min over cells of min(Δr, r_c Δθ) / sqrt(λ_max(A)).
  double cfl_time_step(double cfl) const;
  /// Largest eigenvalue of -L by power iteration (leapfrog is stable for dt < 2 / sqrt of it).
  double spectral_radius(int iterations = 60) const;

 private:
  PolarGrid2D grid_;
  std::vector<double> krr_, ktt_, kx_, inv_dr_, inv_rdt_;
  std::vector<double> mass_, inv_mass_;
  std::vector<double> cell_speed2_;
  mutable std::vector<double> g00_, g10_, g01_, g11_;
};

}  // namespace conedecay::planar
