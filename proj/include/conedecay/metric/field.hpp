#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>

namespace conedecay::metric {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Closed-form constructions of the coefficient matrix.
enum class Variant { E2_2, E2_3, E2_4, E2_5, custom };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

/// A matrix function A(x) on the exterior of the ball |x| < r0, with the metric g = A^{-1}.
///
/// `cone_power` is set for fields that are cones of polynomial growth,
/// A(x) x = x / φ(r)^2 with φ(r) = m r^{m-1}; it may also be attached to a
/// custom field that is merely *claimed* to be a cone (verify_cone tests it).
class CoefficientField {
 public:
  using Evaluator = std::function<Matrix(const Vector&)>;

  CoefficientField(int dimension, double obstacle_radius, std::optional<double> cone_power,
                   Variant variant, Evaluator evaluator, bool exact_cone = false);

  int dimension() const { return dimension_; }
  double obstacle_radius() const { return r0_; }
  std::optional<double> cone_power() const { return cone_power_; }
  Variant variant() const { return variant_; }

  /// Closed forms that satisfy the cone identity by construction (E2_2..E2_5).
  bool exact_cone() const { return exact_cone_; }

  /// A(x); throws DomainError for |x| < r0 or a wrong dimension.
  Matrix evaluate(const Vector& x) const;

  /// φ(r) = m r^{m-1}; throws if the field carries no cone power.
  double phi(double r) const;

 private:
  int dimension_;
  double r0_;
  std::optional<double> cone_power_;
  Variant variant_;
  Evaluator evaluator_;
  bool exact_cone_;
};

/// ρ(r) = r^m (the normalisation constant is r0^m so the lower endpoint maps to r0^m).
double rho_of_r(double m, double r0, double r);

/// Surface area of the unit sphere S^{n-1} ⊂ R^n, 2 π^{n/2} / Γ(n/2).
double unit_sphere_area(int n);

}  // namespace conedecay::metric
