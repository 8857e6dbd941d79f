#pragma once

#include "conedecay/planar/operator.hpp"
#include "conedecay/planar/solver.hpp"

namespace conedecay::planar {

/// ½ Σ_nodes M_i v² + Σ_cells ½<∇u, A∇u> r_c Δr Δθ over r <= a. ∇u in each cell comes
/// from centred differences at the cell centre, taken in polar components (the
/// quadratic form is the same as in Cartesian ones).
double local_energy_2d(const PlanarState& s, const PlanarOperator& op, double a);
double total_energy_2d(const PlanarState& s, const PlanarOperator& op);

/// Energy over rows with r > r_star, divided by e0.
double energy_outside_2d(const PlanarState& s, const PlanarOperator& op, double r_star, double e0);

/// ½ Σ e^{ρ - t} (v² + <∇u, A∇u>) with ρ = r^m, same quadrature as total_energy_2d.
double weighted_energy_exp_2d(const PlanarState& s, const PlanarOperator& op, double m);

}  // namespace conedecay::planar
