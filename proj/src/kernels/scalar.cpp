#include "conedecay/kernels.hpp"

namespace conedecay::kernels::scalar {

void radial_step(const RadialCoefficients& c, std::span<const double> prev,
                 std::span<const double> cur, std::span<double> next) {
  const std::size_t n = cur.size();
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double base = 2.0 * cur[j] - prev[j];
    const double lap = (c.upper[j] * cur[j + 1] + c.mid * cur[j]) + c.lower[j] * cur[j - 1];
    next[j] = base + lap;
  }
}

namespace {

inline void cell(const PlanarCells& c, const PlanarScratch& s, std::size_t k, double idr,
                 double irt, double u00, double u01, double u10, double u11) {
  const double dr0 = (u10 - u00) * idr;
  const double dr1 = (u11 - u01) * idr;
  const double dt0 = (u01 - u00) * irt;
  const double dt1 = (u11 - u10) * irt;
  const double sr = dr0 + dr1;
  const double st = dt0 + dt1;
  const double fr0 = c.krr[k] * dr0 + c.kx[k] * st;
  const double fr1 = c.krr[k] * dr1 + c.kx[k] * st;
  const double ft0 = c.ktt[k] * dt0 + c.kx[k] * sr;
  const double ft1 = c.ktt[k] * dt1 + c.kx[k] * sr;
  const double a0 = fr0 * idr;
  const double a1 = fr1 * idr;
  const double b0 = ft0 * irt;
  const double b1 = ft1 * irt;
  s.g00[k] = -(a0 + b0);
  s.g10[k] = a0 - b1;
  s.g01[k] = b0 - a1;
  s.g11[k] = a1 + b1;
}

}  // namespace

void planar_cell_gradients(const PlanarCells& c, std::span<const double> u,
                           const PlanarScratch& s) {
  const std::size_t nt = c.n_theta;
  for (std::size_t i = 0; i < c.n_rows; ++i) {
    const double* lo = u.data() + i * nt;
    const double* hi = lo + nt;
    const double idr = c.inv_dr[i];
    const double irt = c.inv_rdt[i];
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t jp = (j + 1 == nt) ? 0 : j + 1;
      cell(c, s, i * nt + j, idr, irt, lo[j], lo[jp], hi[j], hi[jp]);
    }
  }
}

void planar_gather(const PlanarCells& c, const PlanarScratch& s,
                   std::span<const double> inv_mass, std::span<double> out) {
  const std::size_t nt = c.n_theta;
  for (std::size_t j = 0; j < nt; ++j) {
    out[j] = 0.0;
    out[c.n_rows * nt + j] = 0.0;
  }
  for (std::size_t i = 1; i < c.n_rows; ++i) {
    const double neg_im = -inv_mass[i];
    const std::size_t row = i * nt;
    const std::size_t below = (i - 1) * nt;
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t jm = (j == 0) ? nt - 1 : j - 1;
      const double sum = (s.g00[row + j] + s.g10[below + j]) + (s.g01[row + jm] + s.g11[below + jm]);
      out[row + j] = neg_im * sum;
    }
  }
}

void leapfrog_update(std::span<const double> prev, std::span<const double> cur,
                     std::span<const double> lu, double dt2, std::span<double> next) {
  for (std::size_t k = 0; k < cur.size(); ++k) {
    next[k] = (2.0 * cur[k] - prev[k]) + dt2 * lu[k];
  }
}

}  // namespace conedecay::kernels::scalar
