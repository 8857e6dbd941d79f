#pragma once

#include "conedecay/radial/grid.hpp"

namespace conedecay::radial {

/// Exact solution of u_tt = u_ρρ on [rho_min, ∞) with u(rho_min) = 0, by odd reflection
/// of the data about rho_min. Throws ParameterError unless d == 1.
double dalembert_images_oracle(const BumpSpec& data, double rho_min, double t, double rho,
                               double d = 1.0);

/// Time after which the reflected wave has left ρ <= a_rho (d = 1):
/// a_rho + (center + width) - 2 rho_min.
double images_exit_time(const BumpSpec& data, double rho_min, double a_rho);

}  // namespace conedecay::radial
