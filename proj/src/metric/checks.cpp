#include "conedecay/metric/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "conedecay/error.hpp"
#include "conedecay/metric/quadrature.hpp"

namespace conedecay::metric {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Matrix inverse_spd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw DomainError("coefficient matrix is not positive definite");
  return llt.solve(Matrix::Identity(a.rows(), a.cols()));
}

}  // namespace

std::vector<Vector> circle_angles(int count) {
  if (count <= 0) throw ParameterError("circle_angles: count must be positive");
  std::vector<Vector> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    Vector t(1);
    t(0) = 2.0 * kPi * k / count;
    out.push_back(t);
  }
  return out;
}

std::vector<Vector> random_angles(int n, int count, std::uint64_t seed, double pole_gap) {
  if (n < 2 || count <= 0) throw ParameterError("random_angles: need n >= 2 and count > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> polar(pole_gap, kPi - pole_gap);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * kPi);
  std::vector<Vector> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    Vector t(n - 1);
    for (int i = 0; i < n - 2; ++i) t(i) = polar(rng);
    t(n - 2) = azimuth(rng);
    out.push_back(t);
  }
  return out;
}

std::vector<Vector> unit_directions(int n, int count, std::uint64_t seed) {
  if (n < 2 || count <= 0) throw ParameterError("unit_directions: need n >= 2 and count > 0");
  std::vector<Vector> out;
  out.reserve(count);
  if (n == 2) {
    for (const auto& t : circle_angles(count)) out.push_back(chart_point(1.0, t));
    return out;
  }
  if (n == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vector d(3);
      d << s * std::cos(golden * k), s * std::sin(golden * k), z;
      out.push_back(d);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < count; ++k) {
    Vector d(n);
    for (int i = 0; i < n; ++i) d(i) = normal(rng);
    out.push_back(d / d.norm());
  }
  return out;
}

AssumptionReport verify_cone(const CoefficientField& field, const std::vector<double>& radii,
                             const std::vector<Vector>& directions, double tolerance) {
  if (radii.empty() || directions.empty()) throw ParameterError("verify_cone: empty sample set");
  if (!field.cone_power()) throw ParameterError("verify_cone: field declares no cone power");
  AssumptionReport rep;
  rep.assumption = Assumption::cone;
  rep.tolerance = tolerance;
  rep.margin_is_defect = true;
  rep.margin = -1.0;
  for (double r : radii) {
    if (r < field.obstacle_radius()) throw DomainError("verify_cone: radius below the obstacle");
    const double phi = field.phi(r);
    for (const auto& d : directions) {
      const Vector x = r * d / d.norm();
      const Vector target = x / (phi * phi);
      const double defect = (field.evaluate(x) * x - target).norm() / target.norm();
      rep.samples.push_back({r, to_std(x), defect});
      if (defect > rep.margin) {
        rep.margin = defect;
        rep.worst = rep.samples.back();
      }
    }
  }
  rep.samples_checked = rep.samples.size();
  rep.pass = rep.margin <= tolerance;
  return rep;
}

AssumptionReport check_assumption_B(const CoefficientField& field, const std::vector<double>& radii,
                                    const std::vector<Vector>& directions, double tolerance) {
  AssumptionReport rep = verify_cone(field, radii, directions, tolerance);
  rep.assumption = Assumption::B;
  return rep;
}

double conormal_norm(const CoefficientField& field, const Vector& x) {
  const double r = x.norm();
  if (!(r > 0.0)) throw DomainError("conormal_norm: zero point");
  const Vector xh = x / r;
  return std::sqrt(xh.dot(field.evaluate(x) * xh));
}

double speed_bound_F(const CoefficientField& field, double y, const SpeedOptions& options) {
  if (y < field.obstacle_radius()) throw DomainError("speed_bound_F: y below the obstacle radius");
  if (field.exact_cone() && field.cone_power() && !options.force_sampling) {
    return 1.0 / field.phi(y);
  }
  const int n = field.dimension();
  const int count = n == 2 ? options.directions_2d : n == 3 ? options.directions_3d : options.directions_nd;
  double best = 0.0;
  for (const auto& d : unit_directions(n, count, options.seed)) {
    best = std::max(best, conormal_norm(field, y * d));
  }
  return best;
}

AssumptionReport check_assumption_A(const CoefficientField& field, double y_max,
                                    const AssumptionAOptions& options) {
  const double r0 = field.obstacle_radius();
  if (!(y_max >= 4.0 * r0)) throw ParameterError("check_assumption_A: y_max must be at least 4 r0");
  auto inv_f = [&](double y) {
    const double f = speed_bound_F(field, y, options.speed);
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("check_assumption_A: F(y) <= 0");
    return 1.0 / f;
  };
  AssumptionReport rep;
  rep.assumption = Assumption::A;
  rep.heuristic = true;
  rep.tolerance = 0.0;
  rep.note = "ladder ratio test; margin = last increment / previous increment - fraction";
  double partial = 0.0;
  double prev_increment = 0.0;
  double last_ratio = std::numeric_limits<double>::quiet_NaN();
  double y = r0;
  rep.samples.push_back({r0, {0.0, 0.0}, 0.0});
  for (int k = 1; r0 * std::ldexp(1.0, k) <= y_max * (1.0 + 1e-12); ++k) {
    const double y_next = r0 * std::ldexp(1.0, k);
    const double increment = adaptive_simpson(inv_f, y, y_next, options.quad_tol * (y_next - y));
    partial += increment;
    const double ratio = prev_increment > 0.0 ? increment / prev_increment : 0.0;
    if (k >= 2) last_ratio = ratio;
    rep.samples.push_back({y_next, {partial, increment}, k >= 2 ? ratio - options.fraction : 0.0});
    prev_increment = increment;
    y = y_next;
  }
  rep.samples_checked = rep.samples.size();
  rep.margin = last_ratio - options.fraction;
  rep.worst = rep.samples.back();
  rep.pass = rep.margin >= -rep.tolerance;
  return rep;
}

double min_generalized_eigenvalue(const Matrix& p, const Matrix& upsilon) {
  Eigen::LLT<Matrix> llt(upsilon);
  if (llt.info() != Eigen::Success) throw DomainError("sphere metric is singular or indefinite");
  const Matrix l = llt.matrixL();
  // M = L^{-1} P L^{-T}
  Matrix m = l.triangularView<Eigen::Lower>().solve(p);
  m = l.triangularView<Eigen::Lower>().solve(m.transpose()).transpose();
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

AssumptionReport check_assumption_C(const CoefficientField& field, const RadialFunction& alpha,
                                    const std::vector<double>& r_samples,
                                    const std::vector<Vector>& theta_samples,
                                    const AssumptionCOptions& options) {
  if (r_samples.empty() || theta_samples.empty()) throw ParameterError("check_assumption_C: empty sample set");
  AssumptionReport rep;
  rep.assumption = Assumption::C;
  rep.tolerance = options.tolerance;
  rep.margin = std::numeric_limits<double>::infinity();
  const double r0 = field.obstacle_radius();
  for (double r : r_samples) {
    if (r < r0) throw DomainError("check_assumption_C: radius below the obstacle");
    DifferenceOptions diff = options.difference;
    if (options.one_sided_near_obstacle && r - diff.step(r) < r0) diff.stencil = RadialStencil::forward;
    const double a = alpha(r);
    for (const auto& theta : theta_samples) {
      const SphereSample s = p_form(field, r, theta, diff);
      const double lambda = min_generalized_eigenvalue(s.p_form, s.upsilon) - a;
      rep.samples.push_back({r, to_std(theta), lambda});
      if (lambda < rep.margin) {
        rep.margin = lambda;
        rep.worst = rep.samples.back();
      }
    }
  }
  rep.samples_checked = rep.samples.size();
  rep.pass = rep.margin >= -rep.tolerance;
  return rep;
}

HessianForms hessian_forms(const CoefficientField& field, double r, const Vector& theta,
                           const HessianOptions& options) {
  if (!field.cone_power()) throw ParameterError("hessian_forms: field declares no cone power");
  const int n = field.dimension();
  const double m = *field.cone_power();
  const double r0 = field.obstacle_radius();
  const double hg = options.h_g;
  if (r - hg < r0) throw DomainError("hessian_forms: differencing step leaves the exterior domain");

  const SphereSample s = p_form(field, r, theta, options.difference);
  const Vector x = chart_point(r, theta);
  const Matrix a = field.evaluate(x);

  // ρ = r^m
  const Vector grad = m * std::pow(r, m - 2.0) * x;
  Matrix hess = m * std::pow(r, m - 2.0) * Matrix::Identity(n, n) +
                m * (m - 2.0) * std::pow(r, m - 4.0) * (x * x.transpose());

  // dg[c] = ∂_c g by central differences
  std::vector<Matrix> dg(n);
  for (int c = 0; c < n; ++c) {
    Vector xp = x, xm = x;
    xp(c) += hg;
    xm(c) -= hg;
    if (xm.norm() < r0 || xp.norm() < r0) throw DomainError("hessian_forms: differencing step leaves the exterior domain");
    dg[c] = (inverse_spd(field.evaluate(xp)) - inverse_spd(field.evaluate(xm))) / (2.0 * hg);
  }
  const Vector v = a * grad;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double christ = 0.0;
      for (int l = 0; l < n; ++l) {
        christ += v(l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
      }
      hess(i, j) -= 0.5 * christ;
    }
  }
  const Matrix t = chart_tangents(r, theta);
  HessianForms out;
  out.hessian = t.transpose() * hess * t;
  out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
  out.p_form = s.p_form;
  out.upsilon = s.upsilon;
  return out;
}

double form_value(const Matrix& form, const Vector& x) { return x.dot(form * x); }

double hessian_identity_check(const CoefficientField& field, double r, const Vector& theta,
                              const HessianOptions& options) {
  const HessianForms f = hessian_forms(field, r, theta, options);
  Eigen::LLT<Matrix> llt(f.upsilon);
  if (llt.info() != Eigen::Success) throw DomainError("sphere metric is singular or indefinite");
  const Matrix l = llt.matrixL();
  // Columns of C = L^{-T} are g-orthonormal.
  const Matrix c = l.transpose().triangularView<Eigen::Upper>().solve(
      Matrix::Identity(f.upsilon.rows(), f.upsilon.cols()));
  const Matrix h = c.transpose() * f.hessian * c;
  const Matrix p = c.transpose() * f.p_form * c;
  const double scale = std::max(p.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  return (h - p).cwiseAbs().maxCoeff() / scale;
}

}  // namespace conedecay::metric
