#include "conedecay/planar/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conedecay/error.hpp"
#include "conedecay/kernels.hpp"
#include "conedecay/planar/energy.hpp"

namespace conedecay::planar {

double PlanarData::value(double r, double theta) const {
  const double x = m == 1.0 ? r : std::pow(r, m);
  const double b = radial.value(x);
  if (mode == 0 || b == 0.0) return b;
  return b * std::cos(mode * (theta - phase));
}

double PlanarData::support_radius() const { return std::pow(radial.hi(), 1.0 / m); }

std::vector<double> sample_data(const PolarGrid2D& g, const PlanarData& data) {
  std::vector<double> u(g.node_count(), 0.0);
  for (int i = 1; i < g.n_r; ++i) {
    for (int j = 0; j < g.n_theta; ++j) u[g.index(i, j)] = data.value(g.r_node[i], g.theta(j));
  }
  return u;
}

double choose_time_step(const PlanarOperator& op, double cfl, double T) {
  if (!(cfl > 0.0 && cfl <= 0.9)) throw ParameterError("cfl must lie in (0, 0.9]");
  if (!(T > 0.0)) throw ParameterError("final time must be positive");
  const double dt_cfl = op.cfl_time_step(cfl);
  if (!(dt_cfl > 0.0) || !std::isfinite(dt_cfl)) throw ParameterError("no admissible time step");
  const double dt = T / std::ceil(T / dt_cfl - 1e-9);
  const double lambda = op.spectral_radius();
  if (lambda > 0.0 && dt >= 0.95 * 2.0 / std::sqrt(lambda)) {
    throw ParameterError("time step exceeds the leapfrog stability limit; lower cfl");
  }
  return dt;
}

void solve_planar(const PlanarOperator& op, const PlanarData& data, double T,
                  const PlanarRunOptions& options, const PlanarObserver& observer) {
  if (options.sample_every < 1) throw ParameterError("sample_every must be >= 1");
  const PolarGrid2D& g = op.grid();
  const double x_lo = data.m == 1.0 ? g.r_min : std::pow(g.r_min, data.m);
  if (data.radial.lo() <= x_lo) throw ParameterError("data support touches the obstacle");
  if (data.support_radius() >= g.r_max) throw ParameterError("data support reaches the outer boundary");

  const double dt = choose_time_step(op, options.cfl, T);
  const int steps = static_cast<int>(std::llround(T / dt));
  const double dt2 = dt * dt;
  const std::size_t n = g.node_count();

  std::vector<double> u0 = sample_data(g, data);
  std::vector<double> u1(n, 0.0);
  if (data.radial.mode == radial::BumpMode::velocity) std::swap(u0, u1);
  std::vector<double> lu(n), prev(n), cur = u0, next(n);
  op.apply(cur, lu);
  for (std::size_t k = 0; k < n; ++k) prev[k] = u0[k] - dt * u1[k] + 0.5 * dt2 * lu[k];

  double e0 = -1.0;
  PlanarState s;
  for (int k = 0; k <= steps; ++k) {
    op.apply(cur, lu);
    kernels::leapfrog_update(prev, cur, lu, dt2, next);
    if (k % options.sample_every == 0 || k == steps) {
      s.t = k == steps ? T : k * dt;
      s.u = cur;
      s.v.resize(n);
      for (std::size_t q = 0; q < n; ++q) s.v[q] = (next[q] - prev[q]) / (2.0 * dt);
      for (double x : s.u) {
        if (!std::isfinite(x)) throw InstabilityError("non-finite value in the planar solution at t = " + std::to_string(s.t));
      }
      const double e = total_energy_2d(s, op);
      if (e0 < 0.0) e0 = e;
      if (e0 > 0.0 && e > (1.0 + options.growth_limit) * e0) {
        throw InstabilityError("planar energy grew from " + std::to_string(e0) + " to " +
                               std::to_string(e) + " at t = " + std::to_string(s.t));
      }
      observer(s);
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
}

std::vector<PlanarState> solve_planar(const PlanarOperator& op, const PlanarData& data, double T,
                                      const PlanarRunOptions& options) {
  std::vector<PlanarState> out;
  solve_planar(op, data, T, options, [&](const PlanarState& s) { out.push_back(s); });
  return out;
}

}  // namespace conedecay::planar
