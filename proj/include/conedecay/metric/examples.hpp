#pragma once

#include <functional>
#include <optional>

#include "conedecay/metric/field.hpp"

namespace conedecay::metric {

using AlphaFunction = std::function<double(double)>;
using MatrixFunction = std::function<Matrix(const Vector&)>;

/// α(r) = δ coth(δ r^m): the exponential-decay convexity profile.
AlphaFunction alpha_coth(double delta, double m);

/// α(r) = m1 / r^m: the polynomial-decay convexity profile.
AlphaFunction alpha_power(double m1, double m);

struct ExampleParams {
  int n = 2;
  double r0 = 1.0;
  double m = 1.0;
  /// Required for E2_4 / E2_5.
  AlphaFunction alpha;
  /// Required for E2_3 (Q(x)) and E2_5 (Q evaluated at r0 x/|x|). Must be symmetric positive definite.
  MatrixFunction q;
  /// Node spacing and per-interval tolerance of the memoised ∫h.
  double memo_spacing = 1e-3;
  double quad_tol = 1e-10;
};

/// Builds one of the closed-form cone metrics. With x̂ = x/|x|, Π = x̂ x̂ᵀ, φ = m r^{m-1}:
///   E2_2: A = I / φ²
///   E2_3: A = Π / φ² + (I-Π) Q(x) (I-Π)
///   E2_4: A = (1/φ² - e^{-H}) Π + e^{-H} I
///   E2_5: A = Π / φ² + e^{-H} (I-Π) Q(r0 x̂) (I-Π)
/// where H(r) = ∫_{r0}^r h, h = 2 α φ - 2/r, so that the sphere metric obeys
/// ∂_r Υ = 2 α φ Υ and the tensor P equals α Υ exactly.
CoefficientField build_example_metric(Variant variant, const ExampleParams& params);

/// h(r) = 2 α(r) φ(r) - 2/r for the E2_4 / E2_5 constructions.
double example_h(const AlphaFunction& alpha, double m, double r);

/// Constant-matrix helper for ExampleParams::q.
MatrixFunction constant_matrix(Matrix q);

}  // namespace conedecay::metric
