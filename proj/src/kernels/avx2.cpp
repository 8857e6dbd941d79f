#include "conedecay/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

#include "conedecay/error.hpp"

namespace conedecay::kernels::avx2 {

#if defined(__AVX2__)

bool compiled() { return true; }

void radial_step(const RadialCoefficients& c, std::span<const double> prev,
                 std::span<const double> cur, std::span<double> next) {
  const std::size_t n = cur.size();
  if (n < 3) return;
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d mid = _mm256_set1_pd(c.mid);
  std::size_t j = 1;
  for (; j + 4 < n; j += 4) {
    const __m256d uc = _mm256_loadu_pd(cur.data() + j);
    const __m256d up = _mm256_loadu_pd(cur.data() + j + 1);
    const __m256d um = _mm256_loadu_pd(cur.data() + j - 1);
    const __m256d base = _mm256_sub_pd(_mm256_mul_pd(two, uc), _mm256_loadu_pd(prev.data() + j));
    const __m256d t_up = _mm256_mul_pd(_mm256_loadu_pd(c.upper.data() + j), up);
    const __m256d t_mid = _mm256_mul_pd(mid, uc);
    const __m256d t_lo = _mm256_mul_pd(_mm256_loadu_pd(c.lower.data() + j), um);
    const __m256d lap = _mm256_add_pd(_mm256_add_pd(t_up, t_mid), t_lo);
    _mm256_storeu_pd(next.data() + j, _mm256_add_pd(base, lap));
  }
  for (; j + 1 < n; ++j) {
    const double base = 2.0 * cur[j] - prev[j];
    const double lap = (c.upper[j] * cur[j + 1] + c.mid * cur[j]) + c.lower[j] * cur[j - 1];
    next[j] = base + lap;
  }
}

namespace {

inline void cell_scalar(const PlanarCells& c, const PlanarScratch& s, std::size_t k, double idr,
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
  const __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t i = 0; i < c.n_rows; ++i) {
    const double* lo = u.data() + i * nt;
    const double* hi = lo + nt;
    const double idr_s = c.inv_dr[i];
    const double irt_s = c.inv_rdt[i];
    const __m256d idr = _mm256_set1_pd(idr_s);
    const __m256d irt = _mm256_set1_pd(irt_s);
    std::size_t j = 0;
    // Vector body needs j+4 < nt so that lane j+1 never wraps.
    for (; j + 4 < nt; j += 4) {
      const std::size_t k = i * nt + j;
      const __m256d u00 = _mm256_loadu_pd(lo + j);
      const __m256d u01 = _mm256_loadu_pd(lo + j + 1);
      const __m256d u10 = _mm256_loadu_pd(hi + j);
      const __m256d u11 = _mm256_loadu_pd(hi + j + 1);
      const __m256d dr0 = _mm256_mul_pd(_mm256_sub_pd(u10, u00), idr);
      const __m256d dr1 = _mm256_mul_pd(_mm256_sub_pd(u11, u01), idr);
      const __m256d dt0 = _mm256_mul_pd(_mm256_sub_pd(u01, u00), irt);
      const __m256d dt1 = _mm256_mul_pd(_mm256_sub_pd(u11, u10), irt);
      const __m256d sr = _mm256_add_pd(dr0, dr1);
      const __m256d st = _mm256_add_pd(dt0, dt1);
      const __m256d krr = _mm256_loadu_pd(c.krr.data() + k);
      const __m256d ktt = _mm256_loadu_pd(c.ktt.data() + k);
      const __m256d kx = _mm256_loadu_pd(c.kx.data() + k);
      const __m256d xst = _mm256_mul_pd(kx, st);
      const __m256d xsr = _mm256_mul_pd(kx, sr);
      const __m256d fr0 = _mm256_add_pd(_mm256_mul_pd(krr, dr0), xst);
      const __m256d fr1 = _mm256_add_pd(_mm256_mul_pd(krr, dr1), xst);
      const __m256d ft0 = _mm256_add_pd(_mm256_mul_pd(ktt, dt0), xsr);
      const __m256d ft1 = _mm256_add_pd(_mm256_mul_pd(ktt, dt1), xsr);
      const __m256d a0 = _mm256_mul_pd(fr0, idr);
      const __m256d a1 = _mm256_mul_pd(fr1, idr);
      const __m256d b0 = _mm256_mul_pd(ft0, irt);
      const __m256d b1 = _mm256_mul_pd(ft1, irt);
      _mm256_storeu_pd(s.g00.data() + k, _mm256_xor_pd(_mm256_add_pd(a0, b0), sign));
      _mm256_storeu_pd(s.g10.data() + k, _mm256_sub_pd(a0, b1));
      _mm256_storeu_pd(s.g01.data() + k, _mm256_sub_pd(b0, a1));
      _mm256_storeu_pd(s.g11.data() + k, _mm256_add_pd(a1, b1));
    }
    for (; j < nt; ++j) {
      const std::size_t jp = (j + 1 == nt) ? 0 : j + 1;
      cell_scalar(c, s, i * nt + j, idr_s, irt_s, lo[j], lo[jp], hi[j], hi[jp]);
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
    const double neg_im_s = -inv_mass[i];
    const __m256d neg_im = _mm256_set1_pd(neg_im_s);
    const std::size_t row = i * nt;
    const std::size_t below = (i - 1) * nt;
    {
      const std::size_t jm = nt - 1;
      const double sum = (s.g00[row] + s.g10[below]) + (s.g01[row + jm] + s.g11[below + jm]);
      out[row] = neg_im_s * sum;
    }
    std::size_t j = 1;
    for (; j + 4 <= nt; j += 4) {
      const __m256d left = _mm256_add_pd(_mm256_loadu_pd(s.g00.data() + row + j),
                                         _mm256_loadu_pd(s.g10.data() + below + j));
      const __m256d right = _mm256_add_pd(_mm256_loadu_pd(s.g01.data() + row + j - 1),
                                          _mm256_loadu_pd(s.g11.data() + below + j - 1));
      _mm256_storeu_pd(out.data() + row + j, _mm256_mul_pd(neg_im, _mm256_add_pd(left, right)));
    }
    for (; j < nt; ++j) {
      const double sum = (s.g00[row + j] + s.g10[below + j]) + (s.g01[row + j - 1] + s.g11[below + j - 1]);
      out[row + j] = neg_im_s * sum;
    }
  }
}

void leapfrog_update(std::span<const double> prev, std::span<const double> cur,
                     std::span<const double> lu, double dt2, std::span<double> next) {
  const std::size_t n = cur.size();
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d d2 = _mm256_set1_pd(dt2);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d base = _mm256_sub_pd(_mm256_mul_pd(two, _mm256_loadu_pd(cur.data() + k)),
                                       _mm256_loadu_pd(prev.data() + k));
    const __m256d acc = _mm256_mul_pd(d2, _mm256_loadu_pd(lu.data() + k));
    _mm256_storeu_pd(next.data() + k, _mm256_add_pd(base, acc));
  }
  for (; k < n; ++k) {
    next[k] = (2.0 * cur[k] - prev[k]) + dt2 * lu[k];
  }
}

#else

bool compiled() { return false; }

namespace {
[[noreturn]] void unavailable() { throw Error("AVX2 kernels were not compiled into this build"); }
}  // namespace

void radial_step(const RadialCoefficients&, std::span<const double>, std::span<const double>,
                 std::span<double>) {
  unavailable();
}
void planar_cell_gradients(const PlanarCells&, std::span<const double>, const PlanarScratch&) {
  unavailable();
}
void planar_gather(const PlanarCells&, const PlanarScratch&, std::span<const double>,
                   std::span<double>) {
  unavailable();
}
void leapfrog_update(std::span<const double>, std::span<const double>, std::span<const double>,
                     double, std::span<double>) {
  unavailable();
}

#endif

}  // namespace conedecay::kernels::avx2
