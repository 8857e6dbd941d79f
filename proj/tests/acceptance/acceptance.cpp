// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "conedecay/decay/classify.hpp"
#include "conedecay/decay/fit.hpp"
#include "conedecay/error.hpp"
#include "conedecay/experiment/commands.hpp"
#include "conedecay/experiment/config.hpp"
#include "conedecay/metric/checks.hpp"
#include "conedecay/metric/examples.hpp"
#include "conedecay/radial/grid.hpp"
#include "conedecay/radial/oracle.hpp"
#include "conedecay/radial/solver.hpp"

using namespace conedecay;
namespace ex = conedecay::experiment;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool in_band(double ratio, double lo, double hi) { return ratio >= lo && ratio <= hi; }

// Runs every trajectory seen by the acceptance suite also feeds criteria 8 and 9.
struct RadialRecord {
  std::string label;
  double max_weighted_increase = 0.0;
  double linear_weight_residual = 0.0;
  double e0 = 0.0;
};
std::vector<RadialRecord> radial_runs;
std::vector<decay::EnergySeries> run_series;

ex::RadialRun radial(const std::string& label, const std::string& yaml) {
  ex::RadialRun run = ex::run_radial(ex::parse_config(yaml));
  radial_runs.push_back({label, run.max_weighted_increase, run.linear_weight_residual, run.e0});
  for (std::size_t k = 0; k < run.trace.a.size(); ++k) run_series.push_back(run.trace.local_series(k));
  return run;
}

std::string radial_yaml(int n, double m, double center, double width, const char* mode, int cells,
                        double T, int sample_every, const std::string& extra = "") {
  return fmt(
      "name: n%d_m%g\n"
      "metric: {variant: E2_2, n: %d, m: %g, r0: 1}\n"
      "data: {center: %g, width: %g, amplitude: 1, mode: %s}\n"
      "grid: {n_cells: %d, cfl: 0.5%s}\n"
      "observation: {a: [2], T: %g, sample_every: %d}\n",
      n, m, n, m, center, width, mode, cells, extra.c_str(), T, sample_every);
}

std::string planar_yaml(const char* variant, double m, int n_r, int n_theta, double T,
                        double center, double r_max = 0.0) {
  const std::string rm = r_max > 0.0 ? fmt(", r_max: %g", r_max) : std::string();
  return fmt(
      "name: planar_%s_m%g\n"
      "metric: {variant: %s, n: 2, m: %g, r0: 1, alpha: {type: coth, delta: 0.5}}\n"
      "data: {center: %g, width: 1.0, amplitude: 1, mode: displacement, angular_mode: 2}\n"
      "grid: {n_r: %d, n_theta: %d, cfl: 0.5%s}\n"
      "observation: {a: [2], T: %g, sample_every: 10}\n",
      variant, m, variant, m, center, n_r, n_theta, rm.c_str(), T);
}

// ---- 1 ---------------------------------------------------------------------

void criterion_1() {
  Stopwatch sw;
  radial::BumpSpec b;
  b.center = 4.0;
  b.width = 2.0;
  const double T = 6.0;
  const double rho_max = radial::sized_rho_max(1.0, b.hi(), T, 1000);
  auto max_error = [&](int cells) {
    const auto g = radial::make_radial_grid(3, 3.0, 1.0, rho_max, cells, 0.5, T);
    double err = 0.0;
    radial::solve_radial(g, b, T, 1, [&](const radial::RadialState& s) {
      for (int j = 0; j < g.nodes(); ++j) {
        err = std::max(err, std::abs(s.u[j] - radial::dalembert_images_oracle(b, g.rho_min, s.t, g.rho(j))));
      }
    });
    return err;
  };
  const double e1 = max_error(1000), e2 = max_error(2000);
  const double ratio = e1 / e2;
  const double t = sw.seconds();
  report(1, e2 <= 5e-3 * b.amplitude && in_band(ratio, 3.5, 4.5) && t < 10.0,
         fmt("max error %.3e at 2000 cells (limit 5e-3), ratio %.3f (band [3.5, 4.5]), %.1f s", e2, ratio, t));
}

// ---- 2 ---------------------------------------------------------------------

void criterion_2() {
  const double T = 50.0;
  const auto r1 = radial("drift_2000", radial_yaml(3, 1.5, 2.5, 1.0, "velocity", 2000, T, 20));
  const auto r2 = radial("drift_4000", radial_yaml(3, 1.5, 2.5, 1.0, "velocity", 4000, T, 20));
  const double rad_ratio = r1.energy_drift / r2.energy_drift;

  const auto p1 = ex::run_planar(ex::parse_config(planar_yaml("E2_4", 2.0, 100, 64, 20.0, 2.5, 5.2)));
  const auto p2 = ex::run_planar(ex::parse_config(planar_yaml("E2_4", 2.0, 200, 128, 20.0, 2.5, 5.2)));
  const double pl_ratio = p1.energy_drift / p2.energy_drift;

  const bool pass = r2.energy_drift <= 1e-3 && p2.energy_drift <= 5e-3 && in_band(rad_ratio, 3.5, 4.5) &&
                    in_band(pl_ratio, 3.5, 4.5);
  report(2, pass,
         fmt("radial drift %.3e (limit 1e-3, T = 50, 4000 cells), doubling ratio %.3f; planar drift %.3e "
             "(limit 5e-3, T = 20, 200x128), doubling ratio %.3f (band [3.5, 4.5])",
             r2.energy_drift, rad_ratio, p2.energy_drift, pl_ratio));
}

// ---- 3 ---------------------------------------------------------------------

void criterion_3() {
  bool pass = true;
  std::string detail;
  for (double m : {1.0, 2.0, 3.0}) {
    Stopwatch sw;
    const auto r = radial(fmt("front_m%g", m), radial_yaml(3, m, 2.5, 1.0, "displacement", 4000, 30.0, 5));
    const double tr = sw.seconds();
    Stopwatch sp;
    const auto p = ex::run_planar(ex::parse_config(planar_yaml("E2_4", m, 200, 128, 10.0, 2.5)));
    const double tp = sp.seconds();
    const bool ok = r.max_front_mass <= 1e-6 && p.max_front_mass <= 1e-4 && tr < 30.0 && tp < 30.0;
    pass = pass && ok;
    detail += fmt("m=%g radial %.2e (%.1f s) planar %.2e (%.1f s); ", m, r.max_front_mass, tr, p.max_front_mass, tp);
  }
  report(3, pass, detail + "limits 1e-6 / 1e-4, 30 s");
}

// ---- 4 ---------------------------------------------------------------------

void criterion_4() {
  const double T = 60.0, a = 2.0;
  radial::BumpSpec b;
  b.center = 2.5;
  b.width = 1.0;
  bool pass = true;
  std::string detail;
  for (double m : {3.0, 1.5, 1.0}) {
    Stopwatch sw;
    const auto run = radial(fmt("sweep_m%g", m), radial_yaml(3, m, b.center, b.width, "velocity", 4000, T, 10));
    const double secs = sw.seconds();
    const auto& fit = run.fits[0];
    const std::string model = fit ? std::string(decay::to_string(fit->model)) : "none (" + run.fit_errors[0] + ")";
    bool ok = secs < 60.0;
    if (m == 1.5) {
      // exponential rejected: the verdict is polynomial, not a tie
      ok = ok && fit && fit->model == decay::Model::polynomial && fit->rate > 0.0;
      detail += fmt("m=1.5 %s p=%.3f r2=%.5f (%.1f s); ", model.c_str(), fit ? fit->rate : 0.0,
                    fit ? fit->r_squared : 0.0, secs);
    } else {
      const double exit = radial::images_exit_time(b, 1.0, std::pow(a, m));
      double worst = 0.0;
      for (const auto& row : run.trace.rows) {
        if (row.t > exit) worst = std::max(worst, row.e_local[0] / run.e0);
      }
      ok = ok && fit && fit->model == decay::Model::extinct && worst <= 1e-4;
      detail += fmt("m=%g %s, max E/E0 after exit t=%.2f: %.2e (%.1f s); ", m, model.c_str(), exit, worst, secs);
    }
    pass = pass && ok;
  }
  report(4, pass, detail + "n = 3, 4000 cells");
}

// ---- 5 ---------------------------------------------------------------------

void criterion_5() {
  Stopwatch sw;
  const auto run = ex::run_planar(ex::parse_config(planar_yaml("E2_4", 2.0, 400, 256, 40.0, 2.5)));
  const double secs = sw.seconds();
  for (std::size_t k = 0; k < run.trace.a.size(); ++k) run_series.push_back(run.trace.local_series(k));
  const auto& fit = run.fits[0];
  if (!fit) {
    report(5, false, "no verdict: " + run.fit_errors[0] + fmt(" (%.1f s)", secs));
    return;
  }
  // decades of decay over the fit window, read off the samples
  const auto series = run.trace.local_series(0);
  double first = 0.0, last = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (series.times[k] < fit->window.t1 || series.times[k] > fit->window.t2) continue;
    if (first == 0.0) first = series.values[k];
    last = series.values[k];
  }
  const double decades = first > 0.0 && last > 0.0 ? std::log10(first / last) : 0.0;
  const bool pass = fit->model == decay::Model::exponential && fit->rate > 0.0 && fit->r_squared >= 0.95 &&
                    decades >= 1.0 && secs < 600.0;
  report(5, pass,
         fmt("verdict %s, rate %.4g, r2 %.4f (limit 0.95), window [%.2f, %.2f], %.2f decades, %.1f s (%s)",
             std::string(decay::to_string(fit->model)).c_str(), fit->rate, fit->r_squared, fit->window.t1,
             fit->window.t2, decades, secs, fit->note.c_str()));
}

// ---- 6 ---------------------------------------------------------------------

void criterion_6() {
  metric::ExampleParams p;
  p.n = 2;
  p.m = 2.0;
  p.alpha = metric::alpha_coth(0.5, p.m);
  const auto field = metric::build_example_metric(metric::Variant::E2_4, p);
  std::vector<double> radii;
  for (int k = 0; k <= 20; ++k) radii.push_back(1.0 + 2.0 * k / 20.0);
  const auto angles = metric::circle_angles(64);
  const auto ok = metric::check_assumption_C(field, p.alpha, radii, angles);
  const auto doubled = metric::check_assumption_C(field, [&](double r) { return 2.0 * p.alpha(r); }, radii, angles);
  report(6, ok.margin >= -1e-8 && doubled.margin < 0.0,
         fmt("margin %.3e (limit -1e-8) over %zu samples; with 2 alpha %.3e (must be < 0)", ok.margin,
             ok.samples_checked, doubled.margin));
}

// ---- 7 ---------------------------------------------------------------------

void criterion_7() {
  bool pass = true;
  std::string detail;
  for (auto variant : {metric::Variant::E2_2, metric::Variant::E2_4}) {
    metric::ExampleParams p;
    p.n = 2;
    // E2_2 at m = 2 has g = 4|x|² I, on which central differences are exact; m = 3 is not.
    p.m = variant == metric::Variant::E2_2 ? 3.0 : 2.0;
    p.alpha = metric::alpha_coth(0.5, p.m);
    const auto field = metric::build_example_metric(variant, p);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> rd(1.05, 3.0), td(0.0, 2.0 * M_PI);
    std::vector<std::pair<double, double>> samples(100);
    for (auto& s : samples) s = {rd(rng), td(rng)};
    auto worst = [&](double hg) {
      metric::HessianOptions o;
      o.h_g = hg;
      double w = 0.0;
      for (auto [r, t] : samples) {
        Eigen::VectorXd th(1);
        th << t;
        w = std::max(w, metric::hessian_identity_check(field, r, th, o));
      }
      return w;
    };
    const double base = worst(1e-3);
    const double w4 = worst(0.04), w2 = worst(0.02), w1 = worst(0.01);
    const double q1 = w4 / w2, q2 = w2 / w1;
    const bool ok = base <= 1e-4 && in_band(q1, 3.5, 4.5) && in_band(q2, 3.5, 4.5);
    pass = pass && ok;
    detail += fmt("%s (m=%g) residual %.2e, step ratios %.3f %.3f; ", std::string(metric::to_string(variant)).c_str(),
                  p.m, base, q1, q2);
  }
  report(7, pass, detail + "limit 1e-4, band [3.5, 4.5]");
}

// ---- 8 ---------------------------------------------------------------------

void criterion_8() {
  // per-step sampling on top of every trajectory already run
  for (double m : {3.0, 1.5, 1.0}) {
    radial(fmt("per_step_m%g", m), radial_yaml(3, m, 2.5, 1.0, "velocity", 4000, 60.0, 1));
  }
  radial("per_step_d1", radial_yaml(3, 3.0, 4.0, 2.0, "displacement", 2000, 6.0, 1));
  double worst_w = 0.0, worst_lw = std::numeric_limits<double>::infinity();
  std::string where_w, where_lw;
  for (const auto& r : radial_runs) {
    if (r.max_weighted_increase > worst_w) {
      worst_w = r.max_weighted_increase;
      where_w = r.label;
    }
    const double lw = r.linear_weight_residual / r.e0;
    if (lw < worst_lw) {
      worst_lw = lw;
      where_lw = r.label;
    }
  }
  report(8, worst_w <= 1e-6 && worst_lw >= -1e-3,
         fmt("%zu trajectories: max relative W increase %.2e (limit 1e-6%s%s), min linear-weight residual %.3e E0 "
             "(limit -1e-3, %s)",
             radial_runs.size(), worst_w, where_w.empty() ? "" : ", ", where_w.c_str(), worst_lw, where_lw.c_str()));
}

// ---- 9 ---------------------------------------------------------------------

decay::EnergySeries synthetic(std::function<double(double)> f, double t0, double t1, int n, double noise,
                              std::uint64_t seed) {
  decay::EnergySeries s;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, noise);
  for (int k = 0; k < n; ++k) {
    const double t = t0 + (t1 - t0) * k / (n - 1);
    s.times.push_back(t);
    s.values.push_back(f(t) * (noise > 0.0 ? 1.0 + g(rng) : 1.0));
  }
  return s;
}

void criterion_9() {
  struct Case {
    const char* name;
    bool exponential;
    double rate, prefactor, t0, t1;
  };
  const Case cases[] = {{"5e^-0.7t", true, 0.7, 5.0, 0.0, 20.0},
                        {"3/t", false, 1.0, 3.0, 10.0, 100.0},
                        {"2t^-4", false, 4.0, 2.0, 10.0, 100.0}};
  bool pass = true;
  double worst_clean = 0.0, worst_noisy = 0.0;
  std::vector<decay::EnergySeries> all = run_series;
  for (const Case& c : cases) {
    auto f = [&](double t) { return c.exponential ? c.prefactor * std::exp(-c.rate * t) : c.prefactor * std::pow(t, -c.rate); };
    const decay::FitWindow w{c.t0, c.t1};
    for (double noise : {0.0, 1e-3}) {
      const auto s = synthetic(f, c.t0, c.t1, 400, noise, 99);
      const auto fit = c.exponential ? decay::fit_exponential(s, w) : decay::fit_polynomial(s, w);
      const double err = std::max(std::abs(fit.rate - c.rate) / c.rate, std::abs(fit.prefactor - c.prefactor) / c.prefactor);
      if (noise == 0.0) worst_clean = std::max(worst_clean, err);
      else worst_noisy = std::max(worst_noisy, std::abs(fit.rate - c.rate) / c.rate);
    }
  }
  pass = worst_clean <= 1e-6 && worst_noisy <= 0.01;
  all.push_back(synthetic([](double t) { return 5.0 * std::exp(-0.3 * t); }, 0.0, 60.0, 400, 1e-3, 5));
  all.push_back(synthetic([](double t) { return 2.0 * std::pow(t, -2.5); }, 1.0, 400.0, 800, 1e-3, 6));
  all.push_back(synthetic([](double t) { return t < 10.0 ? std::exp(-t) : 1e-12; }, 0.0, 30.0, 100, 0.0, 7));
  int checked = 0, mismatches = 0;
  decay::ClassifyOptions o;
  auto verdict = [&](const decay::EnergySeries& s) -> std::pair<std::string, double> {
    try {
      const auto f = decay::classify(s, o);
      return {std::string(decay::to_string(f.model)), f.rate};
    } catch (const InsufficientData&) {
      return {"extend T", 0.0};
    }
  };
  for (const auto& s : all) {
    const auto base = verdict(s);
    for (double c : {1e-3, 7.0, 1e3}) {
      const auto v = verdict(s.scaled(c));
      if (v.first != base.first || std::abs(v.second - base.second) > 1e-9 * std::abs(base.second)) ++mismatches;
    }
    if (verdict(s.decimated(2)).first != base.first) ++mismatches;
    ++checked;
  }
  pass = pass && mismatches == 0;
  report(9, pass,
         fmt("noiseless max relative error %.2e (limit 1e-6), 0.1%% noise rate error %.2e (limit 1e-2), "
             "%d series under scaling and decimation, %d verdict changes",
             worst_clean, worst_noisy, checked, mismatches));
}

void guarded(int id, void (*f)()) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("error: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, criterion_1);
  guarded(2, criterion_2);
  guarded(3, criterion_3);
  guarded(4, criterion_4);
  guarded(5, criterion_5);
  guarded(6, criterion_6);
  guarded(7, criterion_7);
  guarded(8, criterion_8);
  guarded(9, criterion_9);
  return failures;
}
