#include "conedecay/decay/series.hpp"

#include <cmath>

#include "conedecay/error.hpp"

namespace conedecay::decay {

void EnergySeries::validate() const {
  if (times.size() != values.size()) throw ParameterError("series: times and values differ in length");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k]) || !std::isfinite(values[k])) throw ParameterError("series: non-finite sample");
    if (values[k] < 0.0) throw ParameterError("series: negative value");
    if (k > 0 && !(times[k] > times[k - 1])) throw ParameterError("series: times not strictly increasing");
  }
}

double EnergySeries::reference_energy() const {
  if (std::isfinite(meta.e0)) return meta.e0;
  if (values.empty()) throw ParameterError("series: empty");
  return values.front();
}

EnergySeries EnergySeries::decimated(std::size_t k) const {
  if (k == 0) throw ParameterError("decimation factor must be positive");
  EnergySeries out;
  out.meta = meta;
  for (std::size_t i = 0; i < times.size(); i += k) {
    out.times.push_back(times[i]);
    out.values.push_back(values[i]);
  }
  return out;
}

EnergySeries EnergySeries::scaled(double c) const {
  if (!(c > 0.0)) throw ParameterError("scale factor must be positive");
  EnergySeries out = *this;
  for (double& v : out.values) v *= c;
  if (std::isfinite(out.meta.e0)) out.meta.e0 *= c;
  return out;
}

}  // namespace conedecay::decay
