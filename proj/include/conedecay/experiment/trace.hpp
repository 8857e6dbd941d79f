#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "conedecay/decay/series.hpp"

namespace conedecay::experiment {

struct TraceRow {
  double t = 0.0;
  double e_total = 0.0;
  std::vector<double> e_local;  // one per observation radius
  double w_exp = 0.0;
  double front_mass_outside = 0.0;
};

/// CSV trajectory: "# key=value" metadata lines, then
///   t,E_total,E_local_a=<a>...,W_exp,front_mass_outside
/// with every number printed as %.17g.
struct Trace {
  std::map<std::string, std::string> meta;
  std::vector<double> a;
  std::vector<TraceRow> rows;

  /// E(t, a[index]) with metadata (n, m, R0, e0, t_transit for that a) taken from `meta`.
  decay::EnergySeries local_series(std::size_t index) const;
  double meta_number(const std::string& key) const;
};

std::string format_number(double v);
/// Column label for radius a, e.g. "E_local_a=2".
std::string local_column(double a);
/// Metadata key of the transit time for radius a.
std::string transit_key(double a);

void write_trace(std::ostream& os, const Trace& trace);
void write_trace(const std::filesystem::path& path, const Trace& trace);
Trace read_trace(std::istream& is);
Trace read_trace(const std::filesystem::path& path);

}  // namespace conedecay::experiment
