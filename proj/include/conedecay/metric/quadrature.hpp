#pragma once

#include <functional>
#include <shared_mutex>
#include <vector>

namespace conedecay::metric {

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

/// Memoised primitive H(r) = ∫_{r0}^{r} h(y) dy for r >= r0.
///
/// Node values H(r0 + kΔ) are accumulated by adaptive Simpson; between nodes
/// the primitive is the cubic Hermite interpolant built from H and H' = h at
/// the two nodes. The node table grows on demand and is safe to share between
/// threads.
class CumulativeIntegral {
 public:
  CumulativeIntegral(std::function<double(double)> integrand, double r0, double spacing = 1e-3,
                     double tol = 1e-10);

  double operator()(double r) const;

  double lower_limit() const { return r0_; }
  double spacing() const { return spacing_; }

  /// Extends the node table to cover [r0, r_max] (optional; avoids lock traffic later).
  void prepopulate(double r_max) const;

 private:
  void extend_to(std::size_t node) const;

  std::function<double(double)> h_;
  double r0_;
  double spacing_;
  double tol_;
  mutable std::shared_mutex mutex_;
  mutable std::vector<double> value_;  // H at nodes
  mutable std::vector<double> slope_;  // h at nodes
};

}  // namespace conedecay::metric
