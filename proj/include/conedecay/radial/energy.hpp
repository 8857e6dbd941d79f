#pragma once

#include <vector>

#include "conedecay/radial/grid.hpp"
#include "conedecay/radial/solver.hpp"

namespace conedecay::radial {

/// Physical setting of a radial run; d = n/m must match the grid.
struct RadialSetting {
  int n = 3;
  double m = 1.0;
};

/// (ω_{n-1}/2m) Σ trapezoid (v² + (D0 u)²) ρ^{d-1} Δρ.
double total_energy(const RadialState& s, const RadialGrid& g, const RadialSetting& p);

/// total_energy restricted to ρ <= a^m. Throws DomainError if a^m exceeds the grid.
double local_energy(const RadialState& s, const RadialGrid& g, double a, const RadialSetting& p);

/// Same quadrature with the extra weight e^{ρ - t}. Throws DomainError when the weight
/// would overflow where the state is nonzero.
double weighted_energy_exp(const RadialState& s, const RadialGrid& g, const RadialSetting& p);

/// Energy over ρ > r_star^m divided by e0 (0 when the range is empty or e0 is zero).
double support_mass_outside(const RadialState& s, const RadialGrid& g, double r_star,
                            const RadialSetting& p, double e0);

/// (R0^m + t)^{1/m}.
double front_radius(double t, double R0, double m);

/// support_mass_outside at ρ* = R0^m + t + 5Δρ (R0 = support radius of the data).
double front_mass_outside(const RadialState& s, const RadialGrid& g, double R0,
                          const RadialSetting& p, double e0);

/// RHS - LHS of the linear-weight inequality
///   ∫ ρ e(T) <= ∫_0^T ∫ (u_t² + u_ρ²) + ∫ ρ e(0),
/// with densities in the measure (ω/m) ρ^{d-1} dρ and the time integral by the trapezoid rule.
/// Throws ParameterError with fewer than 2 samples.
double linear_weight_check(const std::vector<RadialState>& trajectory, const RadialGrid& g,
                           const RadialSetting& p);

/// Streaming form of linear_weight_check for observers.
class LinearWeightAccumulator {
 public:
  LinearWeightAccumulator(const RadialGrid& g, const RadialSetting& p) : grid_(g), setting_(p) {}
  void add(const RadialState& s);
  std::size_t samples() const { return samples_; }
  double residual() const;

 private:
  RadialGrid grid_;
  RadialSetting setting_;
  std::size_t samples_ = 0;
  double initial_ = 0.0;
  double last_weighted_ = 0.0;
  double last_t_ = 0.0;
  double last_energy2_ = 0.0;
  double time_integral_ = 0.0;
};

/// D0 u with second-order one-sided stencils at the ends.
std::vector<double> centered_gradient(const std::vector<double>& u, double h);

}  // namespace conedecay::radial
