#include "conedecay/metric/examples.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "conedecay/error.hpp"
#include "conedecay/metric/quadrature.hpp"

namespace conedecay::metric {

AlphaFunction alpha_coth(double delta, double m) {
  if (!(delta > 0.0)) throw ParameterError("coth alpha needs delta > 0");
  return [delta, m](double r) { return delta / std::tanh(delta * std::pow(r, m)); };
}

AlphaFunction alpha_power(double m1, double m) {
  if (!(m1 > 0.0)) throw ParameterError("power alpha needs m1 > 0");
  return [m1, m](double r) { return m1 / std::pow(r, m); };
}

double example_h(const AlphaFunction& alpha, double m, double r) {
  const double phi = m * std::pow(r, m - 1.0);
  return 2.0 * alpha(r) * phi - 2.0 / r;
}

MatrixFunction constant_matrix(Matrix q) {
  return [q = std::move(q)](const Vector&) { return q; };
}

namespace {

void require_spd(const MatrixFunction& q, int n, double r0, const char* what) {
  // Probe Q at a ring of points on the obstacle and at 2 r0.
  const int probes = 16;
  for (int k = 0; k < probes; ++k) {
    for (double scale : {1.0, 2.0}) {
      Vector x = Vector::Zero(n);
      const double a = 2.0 * std::numbers::pi * k / probes;
      x(0) = std::cos(a);
      x(1) = std::sin(a);
      if (n > 2) x(2) = 0.3 * std::sin(3.0 * a);
      x *= scale * r0 / x.norm();
      const Matrix m = q(x);
      if (m.rows() != n || m.cols() != n) throw ParameterError(std::string(what) + ": Q has the wrong size");
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff())) {
        throw ParameterError(std::string(what) + ": Q is not symmetric");
      }
      Eigen::LLT<Matrix> llt(m);
      if (llt.info() != Eigen::Success) throw ParameterError(std::string(what) + ": Q is not positive definite");
    }
  }
}

}  // namespace

CoefficientField build_example_metric(Variant variant, const ExampleParams& p) {
  if (!(p.m > 0.0)) throw ParameterError("cone power m must be positive");
  if (!(p.r0 > 0.0)) throw ParameterError("obstacle radius must be positive");
  if (p.n < 2) throw ParameterError("dimension must be >= 2");
  const int n = p.n;
  const double m = p.m;
  const double r0 = p.r0;
  auto inv_phi2 = [m](double r) {
    const double phi = m * std::pow(r, m - 1.0);
    return 1.0 / (phi * phi);
  };

  switch (variant) {
    case Variant::E2_2: {
      auto eval = [n, inv_phi2](const Vector& x) -> Matrix {
        return inv_phi2(x.norm()) * Matrix::Identity(n, n);
      };
      return {n, r0, m, variant, eval, true};
    }
    case Variant::E2_3: {
      if (!p.q) throw ParameterError("E2_3 needs a Q matrix function");
      require_spd(p.q, n, r0, "E2_3");
      auto eval = [n, inv_phi2, q = p.q](const Vector& x) -> Matrix {
        const double r = x.norm();
        const Vector xh = x / r;
        const Matrix proj = xh * xh.transpose();
        const Matrix tang = Matrix::Identity(n, n) - proj;
        return inv_phi2(r) * proj + tang * q(x) * tang;
      };
      return {n, r0, m, variant, eval, true};
    }
    case Variant::E2_4:
    case Variant::E2_5: {
      if (!p.alpha) throw ParameterError(std::string(to_string(variant)) + " needs an alpha profile");
      if (variant == Variant::E2_5) {
        if (!p.q) throw ParameterError("E2_5 needs a Q matrix function");
        require_spd(p.q, n, r0, "E2_5");
      }
      auto primitive = std::make_shared<CumulativeIntegral>(
          [alpha = p.alpha, m](double r) { return example_h(alpha, m, r); }, r0, p.memo_spacing,
          p.quad_tol);
      if (variant == Variant::E2_4) {
        auto eval = [n, r0, inv_phi2, primitive](const Vector& x) -> Matrix {
          const double r = x.norm();
          const double e = std::exp(-(*primitive)(std::max(r, r0)));
          const Vector xh = x / r;
          return (inv_phi2(r) - e) * (xh * xh.transpose()) + e * Matrix::Identity(n, n);
        };
        return {n, r0, m, variant, eval, true};
      }
      auto eval = [n, r0, inv_phi2, primitive, q = p.q](const Vector& x) -> Matrix {
        const double r = x.norm();
        const double e = std::exp(-(*primitive)(std::max(r, r0)));
        const Vector xh = x / r;
        const Matrix proj = xh * xh.transpose();
        const Matrix tang = Matrix::Identity(n, n) - proj;
        const Vector on_obstacle = r0 * xh;
        return inv_phi2(r) * proj + e * (tang * q(on_obstacle) * tang);
      };
      return {n, r0, m, variant, eval, true};
    }
    case Variant::custom:
      break;
  }
  throw ParameterError("build_example_metric: variant 'custom' has no closed form; construct a CoefficientField directly");
}

}  // namespace conedecay::metric
