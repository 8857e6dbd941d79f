#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "conedecay/error.hpp"
#include "conedecay/metric/examples.hpp"
#include "conedecay/planar/energy.hpp"
#include "conedecay/planar/operator.hpp"
#include "conedecay/planar/snapshot.hpp"
#include "conedecay/planar/solver.hpp"
#include "conedecay/radial/grid.hpp"
#include "conedecay/radial/solver.hpp"

using namespace conedecay;
using namespace conedecay::planar;

namespace {

metric::CoefficientField e2_2(double m) {
  metric::ExampleParams p;
  p.n = 2;
  p.m = m;
  return metric::build_example_metric(metric::Variant::E2_2, p);
}

metric::CoefficientField e2_4(double m, double delta) {
  metric::ExampleParams p;
  p.n = 2;
  p.m = m;
  p.alpha = metric::alpha_coth(delta, m);
  return metric::build_example_metric(metric::Variant::E2_4, p);
}

template <class F>
std::vector<double> sample(const PolarGrid2D& g, F f) {
  std::vector<double> u(g.node_count());
  for (int i = 0; i <= g.n_r; ++i)
    for (int j = 0; j < g.n_theta; ++j) u[g.index(i, j)] = f(g.r_node[i] * std::cos(g.theta(j)), g.r_node[i] * std::sin(g.theta(j)));
  return u;
}

double interior_max(const PolarGrid2D& g, const std::vector<double>& v) {
  double e = 0.0;
  for (int i = 1; i < g.n_r; ++i)
    for (int j = 0; j < g.n_theta; ++j) e = std::max(e, std::abs(v[g.index(i, j)]));
  return e;
}

std::vector<double> random_interior(const PolarGrid2D& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> u(g.node_count(), 0.0);
  for (int i = 1; i < g.n_r; ++i)
    for (int j = 0; j < g.n_theta; ++j) u[g.index(i, j)] = d(rng);
  return u;
}

PlanarData ring(double c, double w, int mode, double m) {
  PlanarData d;
  d.radial.center = c;
  d.radial.width = w;
  d.mode = mode;
  d.m = m;
  return d;
}

}  // namespace

TEST_CASE("operator on polynomials with A = I") {
  const auto f = e2_2(1.0);
  double prev = 0.0;
  for (int n : {40, 80}) {
    const auto g = make_polar_grid(1.0, 3.0, n, 2 * n);
    PlanarOperator op(f, g);
    const double harmonic = interior_max(g, op.apply(sample(g, [](double x, double y) { return x * x - y * y; })));
    if (prev > 0.0) CHECK(prev / harmonic == doctest::Approx(4.0).epsilon(0.25));
    prev = harmonic;
    CHECK(harmonic < 5e-2);
    CHECK(interior_max(g, op.apply(sample(g, [](double x, double) { return x; }))) < 1e-2);
    const auto lr2 = op.apply(sample(g, [](double x, double y) { return x * x + y * y; }));
    for (int i = 1; i < g.n_r; ++i) CHECK(lr2[g.index(i, 3)] == doctest::Approx(4.0).epsilon(1e-9));
  }
}

TEST_CASE("operator is symmetric and negative semidefinite in the area inner product") {
  const auto g = make_polar_grid(1.0, 2.5, 30, 24, RadialSpacing::uniform_rho, 2.0);
  PlanarOperator op(e2_4(2.0, 0.5), g);
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto u = random_interior(g, s), w = random_interior(g, s + 10);
    const double a = op.inner(op.apply(u), w), b = op.inner(u, op.apply(w));
    CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), std::abs(b)));
    CHECK(op.inner(op.apply(u), u) <= 1e-10 * op.inner(u, u));
  }
  CHECK(op.spectral_radius() > 0.0);
  CHECK(op.cfl_time_step(0.5) > 0.0);
}

TEST_CASE("potential energy sum is -1/2 <u, Lu>") {
  const auto g = make_polar_grid(1.0, 2.0, 20, 16, RadialSpacing::uniform_r, 1.0);
  PlanarOperator op(e2_4(1.0, 0.7), g);
  const auto u = random_interior(g, 4);
  PlanarState s;
  s.u = u;
  s.v.assign(u.size(), 0.0);
  CHECK(total_energy_2d(s, op) == doctest::Approx(-0.5 * op.inner(u, op.apply(u))).epsilon(1e-12));
  CHECK(local_energy_2d(s, op, 2.0) == doctest::Approx(total_energy_2d(s, op)));
  CHECK(local_energy_2d(s, op, 1.5) < total_energy_2d(s, op));
  CHECK_THROWS_AS(local_energy_2d(s, op, 2.5), DomainError);
  s.u.assign(u.size(), 0.0);
  CHECK(total_energy_2d(s, op) == 0.0);
}

TEST_CASE("grid must start at the obstacle") {
  CHECK_THROWS_AS(PlanarOperator(e2_2(1.0), make_polar_grid(1.5, 3.0, 10, 8)), ParameterError);
  CHECK_THROWS_AS(make_polar_grid(1.0, 0.5, 10, 8), ParameterError);
  CHECK_THROWS_AS(make_polar_grid(1.0, 2.0, 10, 2), ParameterError);
}

TEST_CASE("zero data gives a zero trajectory") {
  const auto g = make_polar_grid(1.0, 3.0, 20, 16);
  PlanarOperator op(e2_2(1.0), g);
  auto d = ring(2.0, 0.5, 2, 1.0);
  d.radial.amplitude = 0.0;
  PlanarRunOptions o;
  o.sample_every = 5;
  for (const auto& s : solve_planar(op, d, 1.0, o)) CHECK(interior_max(g, s.u) == 0.0);
}

TEST_CASE("planar energy is conserved on E2_4") {
  const double m = 2.0;
  const auto g = make_polar_grid(1.0, 5.0, 200, 128, RadialSpacing::uniform_rho, m);
  PlanarOperator op(e2_4(m, 0.5), g);
  PlanarRunOptions o;
  o.sample_every = 100;
  double e0 = -1.0, worst = 0.0;
  solve_planar(op, ring(2.5, 1.0, 2, m), 20.0, o, [&](const PlanarState& s) {
    const double e = total_energy_2d(s, op);
    if (e0 < 0.0) e0 = e;
    worst = std::max(worst, std::abs(e - e0) / e0);
  });
  CHECK(worst <= 5e-3);
}

TEST_CASE("radial data on a cone matches the radial solver") {
  // E2_2 with n = m = 2 reduces to u_tt = u_ρρ (d = 1) in ρ = r².
  const double m = 2.0, T = 2.0;
  radial::BumpSpec b;
  b.center = 3.0;
  b.width = 1.0;
  const auto rg = radial::make_radial_grid(2, m, 1.0, 12.0, 8000, 0.5, T);
  radial::RadialStepper rs(rg, b);
  for (int k = 0; k < rg.steps_to(T); ++k) rs.step();
  const auto& ur = rs.current();
  auto radial_at = [&](double rho) {
    const double x = (rho - rg.rho_min) / rg.h();
    const int j = std::min(static_cast<int>(x), rg.n_cells - 1);
    return ur[j] + (x - j) * (ur[j + 1] - ur[j]);
  };
  std::vector<double> errs;
  for (int n : {100, 200}) {
    const auto g = make_polar_grid(1.0, std::sqrt(12.0), n, 16, RadialSpacing::uniform_rho, m);
    PlanarOperator op(e2_2(m), g);
    PlanarRunOptions o;
    o.sample_every = 1000000;
    const auto traj = solve_planar(op, ring(b.center, b.width, 0, m), T, o);
    const auto& u = traj.back().u;
    double err = 0.0;
    for (int i = 0; i <= g.n_r; ++i) err = std::max(err, std::abs(u[g.index(i, 5)] - radial_at(g.r_node[i] * g.r_node[i])));
    errs.push_back(err);
  }
  CHECK(errs[1] < 1e-2);
  CHECK(errs[0] / errs[1] > 3.0);
}

TEST_CASE("snapshot round trip") {
  const auto g = make_polar_grid(1.0, 2.0, 6, 8);
  PlanarState s;
  s.t = 1.25;
  s.u = random_interior(g, 8);
  s.v = random_interior(g, 9);
  const auto path = std::filesystem::temp_directory_path() / "conedecay_snapshot_test.bin";
  write_snapshot(path, g, s);
  CHECK(std::filesystem::file_size(path) == 4 + 4 + 8 + 8 + 3 * 8 + 2 * 8 * g.node_count());
  const Snapshot back = read_snapshot(path);
  CHECK(back.n_r_nodes == 7);
  CHECK(back.n_theta == 8);
  CHECK(back.t == 1.25);
  CHECK(back.r_max == 2.0);
  CHECK(back.u == s.u);
  CHECK(back.v == s.v);
  std::filesystem::remove(path);
  CHECK_THROWS(read_snapshot(path));
}
