#include "conedecay/radial/solver.hpp"

#include <cmath>
#include <utility>

#include "conedecay/error.hpp"
#include "conedecay/kernels.hpp"

namespace conedecay::radial {

std::vector<double> sample_bump(const RadialGrid& grid, const BumpSpec& data) {
  std::vector<double> out(grid.nodes());
  for (int j = 0; j < grid.nodes(); ++j) out[j] = data.value(grid.rho(j));
  out.front() = 0.0;
  out.back() = 0.0;
  return out;
}

namespace {

std::vector<double> zeros(const RadialGrid& g) { return std::vector<double>(g.nodes(), 0.0); }

}  // namespace

RadialStepper::RadialStepper(const RadialGrid& grid, const BumpSpec& data)
    : RadialStepper(grid,
                    data.mode == BumpMode::displacement ? sample_bump(grid, data) : zeros(grid),
                    data.mode == BumpMode::velocity ? sample_bump(grid, data) : zeros(grid)) {}

RadialStepper::RadialStepper(const RadialGrid& grid, std::vector<double> u0, std::vector<double> u1)
    : grid_(grid), dt_(grid.dt) {
  if (!(dt_ > 0.0)) throw ParameterError("radial grid has no time step");
  if (dt_ > 0.9 * grid.h() * (1.0 + 1e-12)) throw ParameterError("CFL violated: dt > 0.9 h");
  const std::size_t n = grid.nodes();
  if (u0.size() != n || u1.size() != n) throw ParameterError("initial data size does not match the grid");
  build_coefficients();
  u0.front() = u0.back() = 0.0;
  u1.front() = u1.back() = 0.0;
  const std::vector<double> lu = apply_operator(u0);
  prev_.resize(n);
  for (std::size_t j = 0; j < n; ++j) prev_[j] = u0[j] - dt_ * u1[j] + 0.5 * dt_ * dt_ * lu[j];
  prev_.front() = prev_.back() = 0.0;
  cur_ = std::move(u0);
  next_.assign(n, 0.0);
}

void RadialStepper::build_coefficients() {
  const int n = grid_.nodes();
  const double h = grid_.h();
  const double dt2 = dt_ * dt_;
  lower_.assign(n, 0.0);
  upper_.assign(n, 0.0);
  for (int j = 1; j < n - 1; ++j) {
    const double adv = (grid_.d - 1.0) / (2.0 * h * grid_.rho(j));
    upper_[j] = dt2 * (1.0 / (h * h) + adv);
    lower_[j] = dt2 * (1.0 / (h * h) - adv);
  }
  mid_ = -2.0 * dt2 / (h * h);
}

std::vector<double> RadialStepper::apply_operator(const std::vector<double>& u) const {
  const int n = grid_.nodes();
  const double dt2 = dt_ * dt_;
  std::vector<double> out(n, 0.0);
  for (int j = 1; j < n - 1; ++j) {
    out[j] = ((upper_[j] * u[j + 1] + mid_ * u[j]) + lower_[j] * u[j - 1]) / dt2;
  }
  return out;
}

void RadialStepper::step() {
  kernels::radial_step({lower_, upper_, mid_}, prev_, cur_, next_);
  next_.front() = 0.0;
  next_.back() = 0.0;
  std::swap(prev_, cur_);
  std::swap(cur_, next_);
  t_ += dt_;
}

void RadialStepper::reverse() {
  kernels::radial_step({lower_, upper_, mid_}, prev_, cur_, next_);
  next_.front() = 0.0;
  next_.back() = 0.0;
  std::swap(prev_, next_);
  dt_ = -dt_;
}

RadialState RadialStepper::state() const {
  kernels::radial_step({lower_, upper_, mid_}, prev_, cur_, next_);
  next_.front() = 0.0;
  next_.back() = 0.0;
  RadialState s;
  s.t = t_;
  s.u = cur_;
  s.v.resize(cur_.size());
  const double inv = 1.0 / (2.0 * dt_);
  for (std::size_t j = 0; j < cur_.size(); ++j) s.v[j] = (next_[j] - prev_[j]) * inv;
  return s;
}

void solve_radial(const RadialGrid& grid, const BumpSpec& data, double T, int sample_every,
                  const RadialObserver& observer) {
  if (sample_every < 1) throw ParameterError("sample_every must be >= 1");
  validate_setup(grid, data, T);
  RadialStepper stepper(grid, data);
  const int steps = grid.steps_to(T);
  auto emit = [&] {
    RadialState s = stepper.state();
    for (double x : s.u) {
      if (!std::isfinite(x)) throw InstabilityError("non-finite value in the radial solution at t = " + std::to_string(s.t));
    }
    observer(s);
  };
  emit();
  for (int k = 1; k <= steps; ++k) {
    stepper.step();
    if (k % sample_every == 0 || k == steps) emit();
  }
}

std::vector<RadialState> solve_radial(const RadialGrid& grid, const BumpSpec& data, double T,
                                      int sample_every) {
  std::vector<RadialState> out;
  solve_radial(grid, data, T, sample_every, [&](const RadialState& s) { out.push_back(s); });
  return out;
}

}  // namespace conedecay::radial
