#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conedecay/error.hpp"
#include "conedecay/radial/energy.hpp"
#include "conedecay/radial/grid.hpp"
#include "conedecay/radial/oracle.hpp"
#include "conedecay/radial/solver.hpp"

using namespace conedecay;
using namespace conedecay::radial;

namespace {

BumpSpec bump(double c, double w, BumpMode mode = BumpMode::displacement) {
  BumpSpec b;
  b.center = c;
  b.width = w;
  b.mode = mode;
  return b;
}

// d/dρ of a (1 - s²)⁴.
double bump_slope(const BumpSpec& b, double rho) {
  const double s = (rho - b.center) / b.width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return b.amplitude * 4.0 * q * q * q * (-2.0 * s) / b.width;
}

// Composite Simpson, n even.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("bump primitive and curvature") {
  const auto b = bump(3.0, 1.5);
  CHECK(b.primitive(b.lo()) == 0.0);
  CHECK(b.primitive(b.hi()) == doctest::Approx(simpson([&](double x) { return b.value(x); }, b.lo(), b.hi(), 2000)).epsilon(1e-12));
  const double x = 3.4, h = 1e-4;
  CHECK(b.second_derivative(x) == doctest::Approx((b.value(x + h) - 2 * b.value(x) + b.value(x - h)) / (h * h)).epsilon(1e-6));
}

TEST_CASE("images oracle") {
  const auto b = bump(4.0, 2.0);
  for (double rho : {1.0, 2.5, 4.0, 5.9}) CHECK(dalembert_images_oracle(b, 1.0, 0.0, rho) == doctest::Approx(b.value(rho)));
  for (double t : {0.5, 3.0, 7.0}) CHECK(dalembert_images_oracle(b, 1.0, t, 1.0) == doctest::Approx(0.0));
  // Long after the reflection the profile is the outgoing halves only.
  CHECK(dalembert_images_oracle(b, 1.0, 10.0, 14.0) == doctest::Approx(0.5 * b.value(4.0)));
  CHECK(images_exit_time(b, 1.0, 8.0) == doctest::Approx(8.0 + 6.0 - 2.0));
  CHECK_THROWS_AS(dalembert_images_oracle(b, 1.0, 1.0, 2.0, 2.0), ParameterError);
}

TEST_CASE("solver follows the oracle for d = 1") {
  const auto b = bump(4.0, 2.0);
  const double T = 6.0;
  const auto g = make_radial_grid(3, 3.0, 1.0, sized_rho_max(1.0, b.hi(), T, 1000), 1000, 0.5, T);
  double err = 0.0;
  solve_radial(g, b, T, 50, [&](const RadialState& s) {
    for (int j = 0; j < g.nodes(); ++j) err = std::max(err, std::abs(s.u[j] - dalembert_images_oracle(b, g.rho_min, s.t, g.rho(j))));
  });
  CHECK(err < 2e-2);
}

TEST_CASE("zero data stays zero") {
  BumpSpec b = bump(3.0, 1.0);
  b.amplitude = 0.0;
  const auto g = make_radial_grid(3, 1.0, 1.0, 20.0, 200, 0.5, 5.0);
  for (const auto& s : solve_radial(g, b, 5.0, 10)) {
    CHECK(std::all_of(s.u.begin(), s.u.end(), [](double x) { return x == 0.0; }));
    CHECK(total_energy(s, g, {3, 1.0}) == 0.0);
  }
}

TEST_CASE("energy quadrature against the exact initial energy") {
  // n = m = 3: E(0) = (4π / 6) ∫ (u0')² dρ for displacement data.
  const auto b = bump(3.0, 1.0);
  const double exact = 4.0 * std::numbers::pi / 6.0 *
                       simpson([&](double x) { return std::pow(bump_slope(b, x), 2); }, b.lo(), b.hi(), 4000);
  const auto g = make_radial_grid(3, 3.0, 1.0, 12.0, 4000, 0.5, 1.0);
  RadialStepper st(g, b);
  const RadialSetting p{3, 3.0};
  CHECK(total_energy(st.state(), g, p) == doctest::Approx(exact).epsilon(1e-4));
  CHECK(local_energy(st.state(), g, std::cbrt(12.0), p) == doctest::Approx(total_energy(st.state(), g, p)));
  CHECK_THROWS_AS(local_energy(st.state(), g, 3.0, p), DomainError);
}

TEST_CASE("energy is conserved and the scheme is reversible") {
  const auto b = bump(3.0, 1.0, BumpMode::velocity);
  const double T = 20.0;
  const RadialSetting p{3, 1.5};
  const auto g = make_radial_grid(3, 1.5, 1.0, sized_rho_max(1.0, b.hi(), T, 2000), 2000, 0.5, T);
  RadialStepper st(g, b);
  const double e0 = total_energy(st.state(), g, p);
  const auto u0 = st.current();
  const int steps = g.steps_to(T);
  for (int k = 0; k < steps; ++k) st.step();
  CHECK(std::abs(total_energy(st.state(), g, p) - e0) / e0 < 1e-3);
  st.reverse();
  for (int k = 0; k < steps; ++k) st.step();
  double back = 0.0;
  for (std::size_t j = 0; j < u0.size(); ++j) back = std::max(back, std::abs(st.current()[j] - u0[j]));
  CHECK(back < 1e-9);
}

TEST_CASE("front radius and gradients") {
  CHECK(front_radius(7.0, 1.0, 3.0) == doctest::Approx(2.0));
  CHECK(front_radius(2.0, 1.0, 1.0) == doctest::Approx(3.0));
  std::vector<double> u(11);
  for (int j = 0; j <= 10; ++j) u[j] = 2.0 * (0.1 * j) * (0.1 * j) - 0.1 * j;
  const auto du = centered_gradient(u, 0.1);
  for (int j = 0; j <= 10; ++j) CHECK(du[j] == doctest::Approx(4.0 * 0.1 * j - 1.0).epsilon(1e-12));
}

TEST_CASE("linear weight inequality holds on a d = 2 run") {
  const auto b = bump(3.0, 1.0);
  const double T = 10.0;
  const auto g = make_radial_grid(3, 1.5, 1.0, sized_rho_max(1.0, b.hi(), T, 1000), 1000, 0.5, T);
  const auto traj = solve_radial(g, b, T, 5);
  const RadialSetting p{3, 1.5};
  const double e0 = total_energy(traj.front(), g, p);
  CHECK(linear_weight_check(traj, g, p) >= -1e-3 * e0);
  LinearWeightAccumulator acc(g, p);
  for (const auto& s : traj) acc.add(s);
  CHECK(acc.residual() == doctest::Approx(linear_weight_check(traj, g, p)));
  CHECK_THROWS_AS(linear_weight_check({traj.front()}, g, p), ParameterError);
}

TEST_CASE("setup validation") {
  CHECK_THROWS_AS(make_radial_grid(1.0, 10.0, 100, 1.0, 1.2, 5.0), ParameterError);
  CHECK_THROWS_AS(make_radial_grid(0.0, 10.0, 100, 1.0, 0.5, 5.0), ParameterError);
  const auto g = make_radial_grid(1.0, 10.0, 100, 1.0, 0.5, 5.0);
  CHECK_THROWS_AS(validate_setup(g, bump(3.0, 1.0), 8.0), ParameterError);
  CHECK_THROWS_AS(validate_setup(g, bump(1.5, 1.0), 1.0), ParameterError);
  CHECK_NOTHROW(validate_setup(g, bump(3.0, 1.0), 4.0));
  CHECK(g.steps_to(5.0) * g.dt == doctest::Approx(5.0));
}
