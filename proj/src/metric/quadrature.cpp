#include "conedecay/metric/quadrature.hpp"

#include <cmath>
#include <mutex>

#include "conedecay/error.hpp"

namespace conedecay::metric {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double out = simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
  if (!std::isfinite(out)) throw DomainError("adaptive_simpson: non-finite integrand");
  return out;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> integrand, double r0,
                                       double spacing, double tol)
    : h_(std::move(integrand)), r0_(r0), spacing_(spacing), tol_(tol) {
  if (!(spacing > 0.0)) throw ParameterError("CumulativeIntegral: spacing must be positive");
  value_.push_back(0.0);
  slope_.push_back(h_(r0_));
}

void CumulativeIntegral::extend_to(std::size_t node) const {
  {
    std::shared_lock lock(mutex_);
    if (node < value_.size()) return;
  }
  std::unique_lock lock(mutex_);
  while (value_.size() <= node) {
    const std::size_t k = value_.size();
    const double a = r0_ + static_cast<double>(k - 1) * spacing_;
    const double b = r0_ + static_cast<double>(k) * spacing_;
    value_.push_back(value_.back() + adaptive_simpson(h_, a, b, tol_));
    slope_.push_back(h_(b));
  }
}

void CumulativeIntegral::prepopulate(double r_max) const {
  if (r_max <= r0_) return;
  extend_to(static_cast<std::size_t>(std::ceil((r_max - r0_) / spacing_)) + 1);
}

double CumulativeIntegral::operator()(double r) const {
  if (r < r0_) throw DomainError("CumulativeIntegral: radius below the lower limit");
  if (r == r0_) return 0.0;
  const double s = (r - r0_) / spacing_;
  const auto k = static_cast<std::size_t>(s);
  extend_to(k + 1);
  double v0, v1, d0, d1;
  {
    std::shared_lock lock(mutex_);
    v0 = value_[k];
    v1 = value_[k + 1];
    d0 = slope_[k] * spacing_;
    d1 = slope_[k + 1] * spacing_;
  }
  const double t = s - static_cast<double>(k);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * v0 + h10 * d0 + h01 * v1 + h11 * d1;
}

}  // namespace conedecay::metric
