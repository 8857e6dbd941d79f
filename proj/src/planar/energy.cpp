#include "conedecay/planar/energy.hpp"

#include <algorithm>
#include <cmath>

#include "conedecay/error.hpp"

namespace conedecay::planar {

namespace {

/// Kinetic part over node rows n0..n1, potential part over cell rows c0..c1 (cell i spans
/// nodes i, i+1). Cell differences are the centred differences at the cell centre, so the
/// full sum is the energy the leapfrog scheme conserves up to O(dt²).
double energy_range(const PlanarState& s, const PlanarOperator& op, int n0, int n1, int c0,
                    int c1, double m = 0.0) {
  const PolarGrid2D& g = op.grid();
  const int nt = g.n_theta;
  const auto& mass = op.node_mass();
  auto weight = [&](double r) { return m > 0.0 ? std::exp(std::pow(r, m) - s.t) : 1.0; };
  double sum = 0.0;
  for (int i = std::max(n0, 0); i <= std::min(n1, g.n_r); ++i) {
    double row = 0.0;
    for (int j = 0; j < nt; ++j) {
      const double v = s.v[g.index(i, j)];
      row += v * v;
    }
    sum += 0.5 * mass[i] * weight(g.r_node[i]) * row;
  }
  for (int i = std::max(c0, 0); i <= std::min(c1, g.n_r - 1); ++i) {
    double row = 0.0;
    for (int j = 0; j < nt; ++j) row += op.cell_energy(s.u, i, j);
    sum += weight(g.r_cell[i]) * row;
  }
  return sum;
}

}  // namespace

double total_energy_2d(const PlanarState& s, const PlanarOperator& op) {
  return energy_range(s, op, 0, op.grid().n_r, 0, op.grid().n_r - 1);
}

double local_energy_2d(const PlanarState& s, const PlanarOperator& op, double a) {
  const PolarGrid2D& g = op.grid();
  if (a > g.r_max * (1.0 + 1e-12)) throw DomainError("local_energy_2d: a exceeds r_max");
  int last = -1;
  for (int i = 0; i <= g.n_r; ++i) {
    if (g.r_node[i] <= a * (1.0 + 1e-12)) last = i;
  }
  if (last == g.n_r) return total_energy_2d(s, op);
  int cells = -1;
  for (int i = 0; i < g.n_r; ++i) {
    if (g.r_cell[i] <= a) cells = i;
  }
  return energy_range(s, op, 0, last, 0, cells);
}

double energy_outside_2d(const PlanarState& s, const PlanarOperator& op, double r_star, double e0) {
  const PolarGrid2D& g = op.grid();
  if (!(e0 > 0.0) || r_star >= g.r_max) return 0.0;
  int first = g.n_r + 1;
  for (int i = g.n_r; i >= 0; --i) {
    if (g.r_node[i] > r_star) first = i;
  }
  return energy_range(s, op, first, g.n_r, first, g.n_r - 1) / e0;
}

double weighted_energy_exp_2d(const PlanarState& s, const PlanarOperator& op, double m) {
  if (!(m > 0.0)) throw ParameterError("weighted_energy_exp_2d: m must be positive");
  if (std::pow(op.grid().r_max, m) - s.t > 700.0) throw DomainError("weighted_energy_exp_2d: weight overflows");
  const int nr = op.grid().n_r;
  return energy_range(s, op, 0, nr, 0, nr - 1, m);
}

}  // namespace conedecay::planar
