#include "conedecay/radial/oracle.hpp"

#include <cmath>

#include "conedecay/error.hpp"

namespace conedecay::radial {

double dalembert_images_oracle(const BumpSpec& data, double rho_min, double t, double rho, double d) {
  if (d != 1.0) throw ParameterError("images oracle is exact only for d = 1");
  if (rho < rho_min) throw DomainError("images oracle queried inside the obstacle");
  auto odd = [&](double x) {
    return x >= rho_min ? data.value(x) : -data.value(2.0 * rho_min - x);
  };
  // ∫_{rho_min}^x of the odd extension is even about rho_min.
  auto prim = [&](double x) {
    return data.primitive(rho_min + std::abs(x - rho_min)) - data.primitive(rho_min);
  };
  if (data.mode == BumpMode::displacement) return 0.5 * (odd(rho - t) + odd(rho + t));
  return 0.5 * (prim(rho + t) - prim(rho - t));
}

double images_exit_time(const BumpSpec& data, double rho_min, double a_rho) {
  return a_rho + data.hi() - 2.0 * rho_min;
}

}  // namespace conedecay::radial
