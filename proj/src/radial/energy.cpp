#include "conedecay/radial/energy.hpp"

#include <cmath>

#include "conedecay/error.hpp"
#include "conedecay/metric/field.hpp"

namespace conedecay::radial {

std::vector<double> centered_gradient(const std::vector<double>& u, double h) {
  const std::size_t n = u.size();
  std::vector<double> g(n, 0.0);
  if (n < 3) return g;
  g[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  for (std::size_t j = 1; j + 1 < n; ++j) g[j] = (u[j + 1] - u[j - 1]) / (2.0 * h);
  g[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return g;
}

namespace {

void check_setting(const RadialGrid& g, const RadialSetting& p) {
  if (!(p.m > 0.0) || p.n < 2) throw ParameterError("radial setting needs n >= 2 and m > 0");
  if (std::abs(g.d - p.n / p.m) > 1e-12 * g.d) throw ParameterError("grid d does not equal n/m");
}

/// Σ_{j in [j0, j1]} trapezoid weight * w(j) * (v² + (D0u)²) ρ^{d-1} h, scaled by `scale`.
template <class Weight>
double density_sum(const RadialState& s, const RadialGrid& g, int j0, int j1, double scale,
                   Weight&& w) {
  if (j1 < j0) return 0.0;
  const double h = g.h();
  const std::vector<double> du = centered_gradient(s.u, h);
  double sum = 0.0;
  for (int j = j0; j <= j1; ++j) {
    const double e = s.v[j] * s.v[j] + du[j] * du[j];
    if (e == 0.0) continue;
    const double tw = (j == j0 || j == j1) ? 0.5 : 1.0;
    sum += tw * w(j) * e * std::pow(g.rho(j), g.d - 1.0);
  }
  return scale * sum * h;
}

double half_measure(const RadialSetting& p) {
  return metric::unit_sphere_area(p.n) / (2.0 * p.m);
}

int last_node_at_or_below(const RadialGrid& g, double rho) {
  int j = static_cast<int>(std::floor((rho - g.rho_min) / g.h() + 1e-9));
  if (j > g.n_cells) j = g.n_cells;
  return j;
}

}  // namespace

double total_energy(const RadialState& s, const RadialGrid& g, const RadialSetting& p) {
  check_setting(g, p);
  return density_sum(s, g, 0, g.n_cells, half_measure(p), [](int) { return 1.0; });
}

double local_energy(const RadialState& s, const RadialGrid& g, double a, const RadialSetting& p) {
  check_setting(g, p);
  const double a_rho = std::pow(a, p.m);
  if (a_rho > g.rho_max * (1.0 + 1e-12)) throw DomainError("local_energy: a^m exceeds the grid");
  if (a_rho < g.rho_min) throw DomainError("local_energy: a below the obstacle");
  return density_sum(s, g, 0, last_node_at_or_below(g, a_rho), half_measure(p), [](int) { return 1.0; });
}

double weighted_energy_exp(const RadialState& s, const RadialGrid& g, const RadialSetting& p) {
  check_setting(g, p);
  return density_sum(s, g, 0, g.n_cells, half_measure(p), [&](int j) {
    const double x = g.rho(j) - s.t;
    if (x > 700.0) throw DomainError("weighted_energy_exp: weight overflows where the state is nonzero");
    return std::exp(x);
  });
}

double support_mass_outside(const RadialState& s, const RadialGrid& g, double r_star,
                            const RadialSetting& p, double e0) {
  check_setting(g, p);
  if (!(e0 > 0.0)) return 0.0;
  const double rho_star = std::pow(r_star, p.m);
  if (rho_star >= g.rho_max) return 0.0;
  const int j0 = rho_star <= g.rho_min ? 0 : last_node_at_or_below(g, rho_star) + 1;
  return density_sum(s, g, j0, g.n_cells, half_measure(p), [](int) { return 1.0; }) / e0;
}

double front_radius(double t, double R0, double m) {
  if (t < 0.0) throw DomainError("front_radius: negative time");
  return std::pow(std::pow(R0, m) + t, 1.0 / m);
}

double front_mass_outside(const RadialState& s, const RadialGrid& g, double R0,
                          const RadialSetting& p, double e0) {
  const double rho_star = std::pow(R0, p.m) + s.t + 5.0 * g.h();
  return support_mass_outside(s, g, std::pow(rho_star, 1.0 / p.m), p, e0);
}

void LinearWeightAccumulator::add(const RadialState& s) {
  check_setting(grid_, setting_);
  const double full = 2.0 * half_measure(setting_);
  const double weighted = density_sum(s, grid_, 0, grid_.n_cells, full, [&](int j) { return grid_.rho(j); });
  const double energy2 = density_sum(s, grid_, 0, grid_.n_cells, full, [](int) { return 1.0; });
  if (samples_ == 0) {
    initial_ = weighted;
  } else {
    time_integral_ += 0.5 * (s.t - last_t_) * (energy2 + last_energy2_);
  }
  last_weighted_ = weighted;
  last_energy2_ = energy2;
  last_t_ = s.t;
  ++samples_;
}

double LinearWeightAccumulator::residual() const {
  if (samples_ < 2) throw ParameterError("linear_weight_check needs at least 2 samples");
  return time_integral_ + initial_ - last_weighted_;
}

double linear_weight_check(const std::vector<RadialState>& trajectory, const RadialGrid& g,
                           const RadialSetting& p) {
  LinearWeightAccumulator acc(g, p);
  for (const auto& s : trajectory) acc.add(s);
  return acc.residual();
}

}  // namespace conedecay::radial
