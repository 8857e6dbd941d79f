#include "conedecay/planar/operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "conedecay/error.hpp"
#include "conedecay/kernels.hpp"

namespace conedecay::planar {

PolarTensor polar_components(const metric::CoefficientField& field, double r, double theta) {
  if (field.dimension() != 2) throw ParameterError("planar operator needs a 2-D field");
  metric::Vector x(2), er(2), et(2);
  er << std::cos(theta), std::sin(theta);
  et << -std::sin(theta), std::cos(theta);
  x = r * er;
  const metric::Matrix a = field.evaluate(x);
  if (!a.allFinite()) throw ParameterError("coefficient matrix has non-finite entries");
  PolarTensor p;
  p.rr = er.dot(a * er);
  p.tt = et.dot(a * et);
  p.rt = 0.5 * (er.dot(a * et) + et.dot(a * er));
  // A tangential part below rounding level (E2_4 far out: e^{-r^m}) can come back slightly
  // negative or with |rt| past sqrt(rr tt); clamp those to the PSD boundary.
  const double slack = 1e-13 * std::max(std::abs(p.rr), std::abs(p.tt));
  if (p.tt < 0.0 && -p.tt <= slack) p.tt = 0.0;
  if (p.rr < 0.0 && -p.rr <= slack) p.rr = 0.0;
  const double cap = std::sqrt(std::max(0.0, p.rr * p.tt));
  if (std::abs(p.rt) > cap && std::abs(p.rt) - cap <= slack) p.rt = std::copysign(cap, p.rt);
  return p;
}

PlanarOperator::PlanarOperator(const metric::CoefficientField& field, const PolarGrid2D& grid)
    : grid_(grid) {
  if (std::abs(grid.r_min - field.obstacle_radius()) > 1e-12 * grid.r_min) {
    throw ParameterError("planar grid must start at the obstacle radius");
  }
  const int nr = grid.n_r;
  const int nt = grid.n_theta;
  const double dth = grid.dtheta();
  const std::size_t ncell = static_cast<std::size_t>(nr) * nt;
  krr_.resize(ncell);
  ktt_.resize(ncell);
  kx_.resize(ncell);
  cell_speed2_.resize(ncell);
  inv_dr_.resize(nr);
  inv_rdt_.resize(nr);
  for (int i = 0; i < nr; ++i) {
    const double dr = grid.r_node[i + 1] - grid.r_node[i];
    const double rc = grid.r_cell[i];
    const double w = rc * dr * dth;
    inv_dr_[i] = 1.0 / dr;
    inv_rdt_[i] = 1.0 / (rc * dth);
    for (int j = 0; j < nt; ++j) {
      const PolarTensor p = polar_components(field, rc, (j + 0.5) * dth);
      const std::size_t k = static_cast<std::size_t>(i) * nt + j;
      krr_[k] = 0.5 * w * p.rr;
      ktt_[k] = 0.5 * w * p.tt;
      kx_[k] = 0.5 * w * (0.5 * p.rt);
      const double tr = 0.5 * (p.rr + p.tt);
      const double det = p.rr * p.tt - p.rt * p.rt;
      if (!(det >= -1e-12 * tr * tr) || !(tr > 0.0) || p.rr < 0.0 || p.tt < 0.0) throw ParameterError("coefficient matrix is degenerate on the annulus");
      cell_speed2_[k] = tr + std::sqrt(std::max(0.0, tr * tr - det));
    }
  }
  mass_.resize(nr + 1);
  inv_mass_.resize(nr + 1);
  for (int i = 0; i <= nr; ++i) {
    mass_[i] = grid.r_node[i] * grid.dr_ds[i] * grid.ds() * dth;
    inv_mass_[i] = 1.0 / mass_[i];
  }
  g00_.assign(ncell, 0.0);
  g10_.assign(ncell, 0.0);
  g01_.assign(ncell, 0.0);
  g11_.assign(ncell, 0.0);
}

void PlanarOperator::apply(std::span<const double> u, std::span<double> out) const {
  if (u.size() != grid_.node_count() || out.size() != grid_.node_count()) {
    throw ParameterError("planar operator: array size does not match the grid");
  }
  const kernels::PlanarCells cells{static_cast<std::size_t>(grid_.n_r),
                                   static_cast<std::size_t>(grid_.n_theta),
                                   krr_, ktt_, kx_, inv_dr_, inv_rdt_};
  const kernels::PlanarScratch scratch{g00_, g10_, g01_, g11_};
  kernels::planar_cell_gradients(cells, u, scratch);
  kernels::planar_gather(cells, scratch, inv_mass_, out);
}

std::vector<double> PlanarOperator::apply(const std::vector<double>& u) const {
  std::vector<double> out(u.size());
  apply(std::span<const double>(u), std::span<double>(out));
  return out;
}

double PlanarOperator::cell_energy(std::span<const double> u, int i, int j) const {
  const int nt = grid_.n_theta;
  const int jp = j + 1 == nt ? 0 : j + 1;
  const std::size_t k = static_cast<std::size_t>(i) * nt + j;
  const double u00 = u[grid_.index(i, j)], u01 = u[grid_.index(i, jp)];
  const double u10 = u[grid_.index(i + 1, j)], u11 = u[grid_.index(i + 1, jp)];
  const double dr0 = (u10 - u00) * inv_dr_[i];
  const double dr1 = (u11 - u01) * inv_dr_[i];
  const double dt0 = (u01 - u00) * inv_rdt_[i];
  const double dt1 = (u11 - u10) * inv_rdt_[i];
  return 0.5 * krr_[k] * (dr0 * dr0 + dr1 * dr1) + 0.5 * ktt_[k] * (dt0 * dt0 + dt1 * dt1) +
         kx_[k] * (dr0 + dr1) * (dt0 + dt1);
}

double PlanarOperator::inner(std::span<const double> u, std::span<const double> w) const {
  const int nt = grid_.n_theta;
  double sum = 0.0;
  for (int i = 0; i <= grid_.n_r; ++i) {
    double row = 0.0;
    for (int j = 0; j < nt; ++j) row += u[grid_.index(i, j)] * w[grid_.index(i, j)];
    sum += mass_[i] * row;
  }
  return sum;
}

double PlanarOperator::cfl_time_step(double cfl) const {
  double best = std::numeric_limits<double>::infinity();
  const double dth = grid_.dtheta();
  for (int i = 0; i < grid_.n_r; ++i) {
    const double size = std::min(grid_.r_node[i + 1] - grid_.r_node[i], grid_.r_cell[i] * dth);
    for (int j = 0; j < grid_.n_theta; ++j) {
      const double c = std::sqrt(cell_speed2_[static_cast<std::size_t>(i) * grid_.n_theta + j]);
      best = std::min(best, size / c);
    }
  }
  return cfl * best;
}

double PlanarOperator::spectral_radius(int iterations) const {
  std::vector<double> u(grid_.node_count()), lu(grid_.node_count());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& x : u) x = dist(rng);
  const std::size_t nt = grid_.n_theta;
  std::fill(u.begin(), u.begin() + nt, 0.0);
  std::fill(u.end() - nt, u.end(), 0.0);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    apply(u, lu);
    const double num = -inner(u, lu);
    const double den = inner(u, u);
    lambda = num / den;
    const double norm = std::sqrt(inner(lu, lu));
    if (!(norm > 0.0)) return 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = -lu[k] / norm;
  }
  return lambda;
}

}  // namespace conedecay::planar
