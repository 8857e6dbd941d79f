#pragma once

#include <functional>
#include <vector>

#include "conedecay/radial/grid.hpp"

namespace conedecay::radial {

struct RadialState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

/// Leapfrog core. Holds u^{k-1} and u^k; the Dirichlet nodes stay zero.
class RadialStepper {
 public:
  /// Initial levels from the data: u^0 = u0 and the backward Taylor level
  /// u^{-1} = u0 - dt u1 + dt²/2 L u0, so the first leapfrog step is the forward Taylor step.
  RadialStepper(const RadialGrid& grid, const BumpSpec& data);
  /// Starts from arbitrary u^0, u_t(0) node arrays.
  RadialStepper(const RadialGrid& grid, std::vector<double> u0, std::vector<double> u1);

  void step();
  /// Runs time backwards from the current level: u^{k+1} becomes the previous level.
  void reverse();

  double time() const { return t_; }
  double dt() const { return dt_; }
  const std::vector<double>& current() const { return cur_; }
  const std::vector<double>& previous() const { return prev_; }
  const RadialGrid& grid() const { return grid_; }

  /// State at the current level with v = (u^{k+1} - u^{k-1}) / 2dt (computes u^{k+1} without advancing).
  RadialState state() const;

  /// Discrete L u = D+D- u + (d-1)/ρ D0 u at interior nodes, zero at the ends.
  std::vector<double> apply_operator(const std::vector<double>& u) const;

 private:
  void build_coefficients();

  RadialGrid grid_;
  double dt_;
  double t_ = 0.0;
  std::vector<double> lower_, upper_;
  double mid_ = 0.0;
  std::vector<double> prev_, cur_;
  mutable std::vector<double> next_;
};

using RadialObserver = std::function<void(const RadialState&)>;

/// Integrates to T (a whole number of steps), calling `observer` at t = 0 and every
/// `sample_every` steps, and at T. Throws InstabilityError on non-finite values,
/// ParameterError on an invalid setup.
void solve_radial(const RadialGrid& grid, const BumpSpec& data, double T, int sample_every,
                  const RadialObserver& observer);

std::vector<RadialState> solve_radial(const RadialGrid& grid, const BumpSpec& data, double T,
                                      int sample_every);

/// Node values of the bump (u0 or u1 depending on mode).
std::vector<double> sample_bump(const RadialGrid& grid, const BumpSpec& data);

}  // namespace conedecay::radial
