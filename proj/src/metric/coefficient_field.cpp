#include <cmath>
#include <numbers>
#include <string>

#include "conedecay/error.hpp"
#include "conedecay/metric/field.hpp"

namespace conedecay::metric {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::E2_2: return "E2_2";
    case Variant::E2_3: return "E2_3";
    case Variant::E2_4: return "E2_4";
    case Variant::E2_5: return "E2_5";
    case Variant::custom: return "custom";
  }
  return "custom";
}

Variant parse_variant(std::string_view name) {
  if (name == "E2_2") return Variant::E2_2;
  if (name == "E2_3") return Variant::E2_3;
  if (name == "E2_4") return Variant::E2_4;
  if (name == "E2_5") return Variant::E2_5;
  if (name == "custom") return Variant::custom;
  throw ParameterError("unknown metric variant '" + std::string(name) + "'");
}

CoefficientField::CoefficientField(int dimension, double obstacle_radius,
                                   std::optional<double> cone_power, Variant variant,
                                   Evaluator evaluator, bool exact_cone)
    : dimension_(dimension),
      r0_(obstacle_radius),
      cone_power_(cone_power),
      variant_(variant),
      evaluator_(std::move(evaluator)),
      exact_cone_(exact_cone && cone_power.has_value()) {
  if (dimension_ < 2) throw ParameterError("dimension must be >= 2");
  if (!(r0_ > 0.0)) throw ParameterError("obstacle radius must be positive");
  if (cone_power_ && !(*cone_power_ > 0.0)) throw ParameterError("cone power m must be positive");
  if (!evaluator_) throw ParameterError("coefficient field needs an evaluator");
}

Matrix CoefficientField::evaluate(const Vector& x) const {
  if (x.size() != dimension_) throw DomainError("point has the wrong dimension");
  // Relative slack absorbs round-off in chart points placed exactly on the obstacle.
  if (x.norm() < r0_ * (1.0 - 1e-13)) throw DomainError("point lies inside the obstacle");
  return evaluator_(x);
}

double CoefficientField::phi(double r) const {
  if (!cone_power_) throw ParameterError("field has no cone power");
  const double m = *cone_power_;
  return m * std::pow(r, m - 1.0);
}

double rho_of_r(double m, double r0, double r) {
  if (!(m > 0.0)) throw ParameterError("rho_of_r: m must be positive");
  if (r < r0) throw DomainError("rho_of_r: radius below the obstacle");
  return std::pow(r, m);
}

double unit_sphere_area(int n) {
  const double half = 0.5 * static_cast<double>(n);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

}  // namespace conedecay::metric
