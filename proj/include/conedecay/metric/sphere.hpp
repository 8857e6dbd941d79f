#pragma once

#include "conedecay/metric/field.hpp"

namespace conedecay::metric {

/// Point of the standard spherical chart:
/// x1 = r cos θ1, x_k = r sin θ1 ... sin θ_{k-1} cos θ_k, x_n = r sin θ1 ... sin θ_{n-1}.
Vector chart_point(double r, const Vector& theta);

/// Coordinate tangents ∂x/∂θ_i as the columns of an n × (n-1) matrix.
Matrix chart_tangents(double r, const Vector& theta);

struct SphereSample {
  double r = 0.0;
  Vector theta;
  Matrix upsilon;  // γ_ij = <A^{-1} ∂θ_i, ∂θ_j>
  Matrix p_form;   // (1 / 2φ) ∂γ_ij / ∂r; empty until p_form() fills it
};

enum class RadialStencil { central, forward };

struct DifferenceOptions {
  double h_r_relative = 1e-4;
  double h_r_min = 1e-6;
  /// central needs r - h_r >= r0; forward uses a one-sided fourth-order stencil.
  RadialStencil stencil = RadialStencil::central;

  double step(double r) const;
};

/// Υ at (r, θ). Throws DomainError if A is singular there.
SphereSample sphere_metric(const CoefficientField& field, double r, const Vector& theta);

/// Υ and P at (r, θ). Throws DomainError if the stencil leaves |x| >= r0,
/// ParameterError if the field has no cone power.
SphereSample p_form(const CoefficientField& field, double r, const Vector& theta,
                    const DifferenceOptions& options = {});

}  // namespace conedecay::metric
