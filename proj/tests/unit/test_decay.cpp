#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "conedecay/decay/classify.hpp"
#include "conedecay/decay/fit.hpp"
#include "conedecay/decay/series.hpp"
#include "conedecay/error.hpp"

using namespace conedecay;
using namespace conedecay::decay;

namespace {

EnergySeries make(std::function<double(double)> f, double t0, double t1, int n, double noise = 0.0,
                  std::uint64_t seed = 1) {
  EnergySeries s;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, noise);
  for (int k = 0; k < n; ++k) {
    const double t = t0 + (t1 - t0) * k / (n - 1);
    s.times.push_back(t);
    s.values.push_back(f(t) * (noise > 0.0 ? 1.0 + g(rng) : 1.0));
  }
  return s;
}

}  // namespace

TEST_CASE("exponential fit recovers its parameters") {
  const auto s = make([](double t) { return 5.0 * std::exp(-0.7 * t); }, 0.0, 20.0, 200);
  const DecayFit f = fit_exponential(s, {1.0, 19.0});
  CHECK(f.model == Model::exponential);
  CHECK(std::abs(f.rate - 0.7) <= 1e-6 * 0.7);
  CHECK(std::abs(f.prefactor - 5.0) <= 1e-6 * 5.0);
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK_FALSE(f.flagged);
  const auto noisy = make([](double t) { return 5.0 * std::exp(-0.7 * t); }, 0.0, 20.0, 200, 1e-3, 7);
  CHECK(std::abs(fit_exponential(noisy, {1.0, 19.0}).rate - 0.7) <= 0.01 * 0.7);
}

TEST_CASE("polynomial fit recovers its parameters") {
  for (double p : {1.0, 4.0}) {
    const double c = p == 1.0 ? 3.0 : 2.0;
    const auto s = make([&](double t) { return c * std::pow(t, -p); }, 1.0, 100.0, 300);
    const DecayFit f = fit_polynomial(s, {10.0, 100.0});
    CHECK(std::abs(f.rate - p) <= 1e-6 * p);
    CHECK(std::abs(f.prefactor - c) <= 1e-6 * c);
    const auto noisy = make([&](double t) { return c * std::pow(t, -p); }, 1.0, 100.0, 300, 1e-3, 3);
    CHECK(std::abs(fit_polynomial(noisy, {10.0, 100.0}).rate - p) <= 0.01 * p);
  }
}

TEST_CASE("misfits and degenerate inputs") {
  const auto inv = make([](double t) { return 3.0 / t; }, 10.0, 100.0, 200);
  CHECK(fit_exponential(inv, {10.0, 100.0}).flagged);
  const auto flat = make([](double) { return 2.0; }, 0.0, 10.0, 50);
  CHECK(fit_exponential(flat, {0.0, 10.0}).rate == doctest::Approx(0.0));
  CHECK_THROWS_AS(fit_exponential(flat, {0.0, 0.05}), InsufficientData);
  CHECK_THROWS_AS(fit_polynomial(flat, {0.0, 10.0}), ParameterError);
  auto zero = flat;
  zero.values[20] = 0.0;
  CHECK_THROWS_AS(fit_exponential(zero, {0.0, 10.0}), ParameterError);
  EnergySeries bad;
  bad.times = {0.0, 1.0, 1.0};
  bad.values = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("polynomial sub-window slopes drift on exponential data") {
  const auto s = make([](double t) { return 5.0 * std::exp(-0.7 * t); }, 0.0, 50.0, 500);
  const DecayFit a = fit_polynomial(s, {5.0, 10.0});
  const DecayFit b = fit_polynomial(s, {30.0, 50.0});
  CHECK(b.rate > 2.0 * a.rate);
  ClassifyOptions o;
  o.window = FitWindow{5.0, 45.0};
  o.extinction_threshold = 1e-30;
  CHECK(classify(s, o).model == Model::exponential);
}

TEST_CASE("classify picks the generating family") {
  ClassifyOptions o;
  const auto e = make([](double t) { return 5.0 * std::exp(-0.3 * t); }, 0.0, 60.0, 400);
  const DecayFit fe = classify(e, o);
  CHECK(fe.model == Model::exponential);
  CHECK(fe.rate == doctest::Approx(0.3).epsilon(1e-6));
  const auto p = make([](double t) { return 2.0 * std::pow(t, -2.5); }, 1.0, 400.0, 800);
  const DecayFit fp = classify(p, o);
  CHECK(fp.model == Model::polynomial);
  CHECK(fp.rate == doctest::Approx(2.5).epsilon(1e-6));
  auto x = make([](double t) { return t < 10.0 ? 1.0 : 1e-12; }, 0.0, 30.0, 100);
  const DecayFit fx = classify(x, o);
  CHECK(fx.model == Model::extinct);
  REQUIRE(fx.extinction_time);
  CHECK(*fx.extinction_time == doctest::Approx(x.times[std::lower_bound(x.times.begin(), x.times.end(), 10.0) - x.times.begin()]));
  const auto flat = make([](double) { return 2.0; }, 0.0, 60.0, 100);
  CHECK_THROWS_AS(classify(flat, o), InsufficientData);
  CHECK_FALSE(extinction_time(flat, 1e-8));
}

TEST_CASE("classify is invariant under scaling and decimation") {
  ClassifyOptions o;
  std::vector<EnergySeries> all = {
      make([](double t) { return 5.0 * std::exp(-0.3 * t); }, 0.0, 60.0, 400),
      make([](double t) { return 2.0 * std::pow(t, -2.5); }, 1.0, 400.0, 800),
      make([](double t) { return t < 10.0 ? std::exp(-t) : 1e-12; }, 0.0, 30.0, 100),
      make([](double t) { return 1.0 / (1.0 + 0.1 * t * t) + std::exp(-t); }, 0.0, 200.0, 600, 1e-3, 5),
  };
  for (const auto& s : all) {
    const DecayFit base = classify(s, o);
    for (double c : {1e-6, 3.0, 1e5}) {
      const DecayFit f = classify(s.scaled(c), o);
      CHECK(f.model == base.model);
      CHECK(f.rate == doctest::Approx(base.rate).epsilon(1e-9));
    }
    CHECK(classify(s.decimated(2), o).model == base.model);
  }
}

TEST_CASE("fit serialisation") {
  const auto s = make([](double t) { return 5.0 * std::exp(-0.7 * t); }, 0.0, 20.0, 200);
  DecayFit f = fit_exponential(s, {1.0, 19.0});
  f.slope_spread = 0.01;
  const DecayFit back = parse_csv_row(to_csv_row(f));
  CHECK(back.model == f.model);
  CHECK(back.rate == f.rate);
  CHECK(back.prefactor == f.prefactor);
  CHECK(back.window.t1 == 1.0);
  CHECK(back.points == f.points);
  CHECK_FALSE(back.extinction_time);
  CHECK(fit_csv_header().find("model,rate,prefactor") == 0);
  CHECK(summary_block(f).find("exponential") != std::string::npos);
  CHECK(parse_model("extinct") == Model::extinct);
  CHECK_THROWS(parse_model("linear"));
}
