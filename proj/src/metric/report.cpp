#include "conedecay/metric/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "conedecay/error.hpp"

namespace conedecay::metric {

std::string_view to_string(Assumption a) {
  switch (a) {
    case Assumption::A: return "A";
    case Assumption::B: return "B";
    case Assumption::C: return "C";
    case Assumption::cone: return "cone";
  }
  return "cone";
}

Assumption parse_assumption(std::string_view s) {
  if (s == "A") return Assumption::A;
  if (s == "B") return Assumption::B;
  if (s == "C") return Assumption::C;
  if (s == "cone") return Assumption::cone;
  throw ParameterError("unknown assumption tag '" + std::string(s) + "'");
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sample(std::ostream& os, const ReportSample& s) {
  os << fmt(s.r);
  for (double c : s.coords) os << ' ' << fmt(c);
  os << ' ' << fmt(s.margin) << '\n';
}

ReportSample parse_sample(const std::string& line) {
  std::istringstream in(line);
  std::vector<double> vals;
  double v;
  while (in >> v) vals.push_back(v);
  if (vals.size() < 2) throw Error("report sample line needs at least r and margin: " + line);
  ReportSample s;
  s.r = vals.front();
  s.margin = vals.back();
  s.coords.assign(vals.begin() + 1, vals.end() - 1);
  return s;
}

}  // namespace

void write_report(std::ostream& os, const AssumptionReport& r) {
  os << "# assumption " << to_string(r.assumption) << '\n';
  os << "# verdict " << (r.pass ? "pass" : "fail") << '\n';
  os << "# margin " << fmt(r.margin) << '\n';
  os << "# tolerance " << fmt(r.tolerance) << '\n';
  os << "# margin_kind " << (r.margin_is_defect ? "defect" : "lower_bound") << '\n';
  os << "# heuristic " << (r.heuristic ? 1 : 0) << '\n';
  os << "# samples_checked " << r.samples_checked << '\n';
  if (!r.note.empty()) os << "# note " << r.note << '\n';
  os << "# worst ";
  write_sample(os, r.worst);
  for (const auto& s : r.samples) write_sample(os, s);
}

AssumptionReport read_report(std::istream& is) {
  AssumptionReport r;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      r.samples.push_back(parse_sample(line));
      continue;
    }
    std::istringstream in(line.substr(1));
    std::string key;
    in >> key;
    std::string rest;
    std::getline(in >> std::ws, rest);
    if (key == "assumption") r.assumption = parse_assumption(rest);
    else if (key == "verdict") r.pass = (rest == "pass");
    else if (key == "margin") r.margin = std::stod(rest);
    else if (key == "tolerance") r.tolerance = std::stod(rest);
    else if (key == "margin_kind") r.margin_is_defect = (rest == "defect");
    else if (key == "heuristic") r.heuristic = (rest == "1");
    else if (key == "samples_checked") r.samples_checked = std::stoull(rest);
    else if (key == "note") r.note = rest;
    else if (key == "worst") r.worst = parse_sample(rest);
    else throw Error("unknown report header '" + key + "'");
  }
  return r;
}

}  // namespace conedecay::metric
