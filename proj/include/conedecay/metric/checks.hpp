#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "conedecay/metric/field.hpp"
#include "conedecay/metric/report.hpp"
#include "conedecay/metric/sphere.hpp"

namespace conedecay::metric {

using RadialFunction = std::function<double(double)>;

// ---- sample generators -------------------------------------------------

/// Evenly spaced angles θ_k = 2πk/count on the circle (n = 2 charts).
std::vector<Vector> circle_angles(int count);

/// Random chart angles away from the poles: θ_i ∈ [pole_gap, π - pole_gap]
/// for i < n-2, last angle uniform in [0, 2π).
std::vector<Vector> random_angles(int n, int count, std::uint64_t seed, double pole_gap = 1e-3);

/// Unit directions: the circle for n = 2, a Fibonacci lattice for n = 3,
/// seeded Gaussian directions otherwise.
std::vector<Vector> unit_directions(int n, int count, std::uint64_t seed = 1);

// ---- cone / assumption B ------------------------------------------------

/// margin = max ‖A(x)x - x/φ²‖ / ‖x/φ²‖; pass iff margin <= tolerance.
AssumptionReport verify_cone(const CoefficientField& field, const std::vector<double>& radii,
                             const std::vector<Vector>& directions, double tolerance = 1e-10);

/// Same test tagged B (the cone with φ = m r^{m-1}).
AssumptionReport check_assumption_B(const CoefficientField& field, const std::vector<double>& radii,
                                    const std::vector<Vector>& directions, double tolerance = 1e-10);

// ---- speed bound and assumption A --------------------------------------

struct SpeedOptions {
  int directions_2d = 256;
  int directions_3d = 1024;
  int directions_nd = 1024;
  std::uint64_t seed = 1;
  /// Skip the 1/φ shortcut even for closed-form cones.
  bool force_sampling = false;
};

/// √<x̂, A(x) x̂> at one point.
double conormal_norm(const CoefficientField& field, const Vector& x);

/// F(y) = sup over |x| = y of the conormal norm.
double speed_bound_F(const CoefficientField& field, double y, const SpeedOptions& options = {});

struct AssumptionAOptions {
  /// Pass when the last doubling increment is at least this fraction of the previous one.
  double fraction = 0.75;
  double quad_tol = 1e-9;
  SpeedOptions speed;
};

/// Heuristic divergence test of ∫ 1/F on the ladder Y = r0 2^k <= y_max.
/// Samples hold (Y, partial integral, increment ratio).
AssumptionReport check_assumption_A(const CoefficientField& field, double y_max,
                                    const AssumptionAOptions& options = {});

// ---- assumption C -------------------------------------------------------

struct AssumptionCOptions {
  double tolerance = 1e-8;
  DifferenceOptions difference;
  /// Fall back to the one-sided stencil where the central one would leave the domain.
  bool one_sided_near_obstacle = true;
};

/// Smallest eigenvalue of the pencil (P - αΥ, Υ) over the samples.
AssumptionReport check_assumption_C(const CoefficientField& field, const RadialFunction& alpha,
                                    const std::vector<double>& r_samples,
                                    const std::vector<Vector>& theta_samples,
                                    const AssumptionCOptions& options = {});

/// λ_min of (P, Υ) at one sample, via Cholesky whitening of Υ.
double min_generalized_eigenvalue(const Matrix& p, const Matrix& upsilon);

// ---- Hessian of ρ against P ---------------------------------------------

struct HessianOptions {
  double h_g = 1e-3;
  DifferenceOptions difference;
};

/// Both sides in the coordinate basis ∂θ_i of S(r).
struct HessianForms {
  Matrix hessian;  // D²ρ(∂θ_i, ∂θ_j)
  Matrix p_form;   // P(∂θ_i, ∂θ_j)
  Matrix upsilon;
};

HessianForms hessian_forms(const CoefficientField& field, double r, const Vector& theta,
                           const HessianOptions& options = {});

/// Bilinear form value X^T M X for coordinate components X.
double form_value(const Matrix& form, const Vector& x);

/// max |D²ρ - P| / max |P| over a g-orthonormal tangent basis at (r, θ).
double hessian_identity_check(const CoefficientField& field, double r, const Vector& theta,
                              const HessianOptions& options = {});

}  // namespace conedecay::metric
