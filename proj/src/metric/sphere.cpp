#include "conedecay/metric/sphere.hpp"

#include <algorithm>
#include <cmath>

#include "conedecay/error.hpp"

namespace conedecay::metric {

namespace {

void require_angles(int n, const Vector& theta) {
  if (n < 2 || theta.size() != n - 1) throw DomainError("angle vector must have n-1 components");
}

Matrix upsilon_at(const CoefficientField& field, double r, const Vector& theta) {
  const Matrix a = field.evaluate(chart_point(r, theta));
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw DomainError("coefficient matrix is not positive definite");
  const Matrix t = chart_tangents(r, theta);
  Matrix g = t.transpose() * llt.solve(t);
  return 0.5 * (g + g.transpose());
}

}  // namespace

Vector chart_point(double r, const Vector& theta) {
  const int n = static_cast<int>(theta.size()) + 1;
  Vector x(n);
  double prod = r;
  for (int k = 0; k < n - 1; ++k) {
    x(k) = prod * std::cos(theta(k));
    prod *= std::sin(theta(k));
  }
  x(n - 1) = prod;
  return x;
}

Matrix chart_tangents(double r, const Vector& theta) {
  const int n = static_cast<int>(theta.size()) + 1;
  require_angles(n, theta);
  Matrix t = Matrix::Zero(n, n - 1);
  // Component k is r * (prod_{l<k} s_l) * c_k (k < n-1) or r * prod_{l<n-1} s_l.
  for (int i = 0; i < n - 1; ++i) {
    for (int k = i; k < n; ++k) {
      double v = r;
      for (int l = 0; l < std::min(k, n - 1); ++l) {
        v *= (l == i) ? std::cos(theta(l)) : std::sin(theta(l));
      }
      if (k < n - 1) v *= (k == i) ? -std::sin(theta(k)) : std::cos(theta(k));
      t(k, i) = v;
    }
  }
  return t;
}

double DifferenceOptions::step(double r) const { return std::max(h_r_relative * r, h_r_min); }

SphereSample sphere_metric(const CoefficientField& field, double r, const Vector& theta) {
  require_angles(field.dimension(), theta);
  if (r < field.obstacle_radius()) throw DomainError("sphere_metric: r below the obstacle radius");
  SphereSample s;
  s.r = r;
  s.theta = theta;
  s.upsilon = upsilon_at(field, r, theta);
  return s;
}

SphereSample p_form(const CoefficientField& field, double r, const Vector& theta,
                    const DifferenceOptions& options) {
  if (!field.cone_power()) throw ParameterError("p_form needs a field with a cone power");
  SphereSample s = sphere_metric(field, r, theta);
  const double h = options.step(r);
  Matrix dg;
  if (options.stencil == RadialStencil::central) {
    if (r - h < field.obstacle_radius()) {
      throw DomainError("p_form: central difference leaves the exterior domain");
    }
    dg = (upsilon_at(field, r + h, theta) - upsilon_at(field, r - h, theta)) / (2.0 * h);
  } else {
    // fourth order, so the r0 samples are not the least accurate ones
    dg = (-25.0 * s.upsilon + 48.0 * upsilon_at(field, r + h, theta) -
          36.0 * upsilon_at(field, r + 2.0 * h, theta) + 16.0 * upsilon_at(field, r + 3.0 * h, theta) -
          3.0 * upsilon_at(field, r + 4.0 * h, theta)) /
         (12.0 * h);
  }
  s.p_form = dg / (2.0 * field.phi(r));
  s.p_form = 0.5 * (s.p_form + s.p_form.transpose()).eval();
  return s;
}

}  // namespace conedecay::metric
