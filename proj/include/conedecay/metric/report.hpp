#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace conedecay::metric {

enum class Assumption { A, B, C, cone };

std::string_view to_string(Assumption a);
Assumption parse_assumption(std::string_view s);

/// One checked sample: radius, the remaining coordinates (angles, a Cartesian
/// point, or a ladder value) and the sample's own margin.
struct ReportSample {
  double r = 0.0;
  std::vector<double> coords;
  double margin = 0.0;
};

struct AssumptionReport {
  Assumption assumption = Assumption::cone;
  bool pass = false;
  double margin = 0.0;
  double tolerance = 0.0;
  /// True when margin is an upper bound (cone defect), false when it is a lower bound.
  bool margin_is_defect = false;
  bool heuristic = false;
  ReportSample worst;
  std::size_t samples_checked = 0;
  std::vector<ReportSample> samples;
  std::string note;
};

/// Line-oriented record: "key value" header lines starting with '#',
/// then one sample per line "r coord... margin".
void write_report(std::ostream& os, const AssumptionReport& report);
AssumptionReport read_report(std::istream& is);

}  // namespace conedecay::metric
