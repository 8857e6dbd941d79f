#include "conedecay/experiment/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "conedecay/error.hpp"

namespace conedecay::experiment {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string local_column(double a) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "E_local_a=%g", a);
  return buf;
}

std::string transit_key(double a) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "t_transit_a=%g", a);
  return buf;
}

double Trace::meta_number(const std::string& key) const {
  const auto it = meta.find(key);
  if (it == meta.end()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(it->second);
}

decay::EnergySeries Trace::local_series(std::size_t index) const {
  if (index >= a.size()) throw ParameterError("trace has no observation radius #" + std::to_string(index));
  decay::EnergySeries s;
  s.meta.n = static_cast<int>(meta_number("n"));
  s.meta.m = meta_number("m");
  s.meta.a = a[index];
  s.meta.R0 = meta_number("R0");
  s.meta.e0 = meta_number("e0");
  s.meta.t_transit = meta_number(transit_key(a[index]));
  if (auto it = meta.find("run_id"); it != meta.end()) s.meta.run_id = it->second;
  for (const auto& r : rows) {
    s.times.push_back(r.t);
    s.values.push_back(r.e_local[index]);
  }
  return s;
}

void write_trace(std::ostream& os, const Trace& t) {
  for (const auto& [k, v] : t.meta) os << "# " << k << '=' << v << '\n';
  os << "t,E_total";
  for (double a : t.a) os << ',' << local_column(a);
  os << ",W_exp,front_mass_outside\n";
  for (const auto& r : t.rows) {
    os << format_number(r.t) << ',' << format_number(r.e_total);
    for (double e : r.e_local) os << ',' << format_number(e);
    os << ',' << format_number(r.w_exp) << ',' << format_number(r.front_mass_outside) << '\n';
  }
}

void write_trace(const std::filesystem::path& path, const Trace& t) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write trace " + path.string());
  write_trace(os, t);
  if (!os) throw Error("failed writing trace " + path.string());
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

Trace read_trace(std::istream& is) {
  Trace t;
  std::string line;
  bool header = false;
  std::size_t columns = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(line.find_first_not_of("# "));
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw Error("malformed trace metadata: " + line);
      // keys may contain '=' (t_transit_a=2); the value follows the last one
      const auto last = body.rfind('=');
      t.meta[body.substr(0, last)] = body.substr(last + 1);
      continue;
    }
    const auto cells = split(line);
    if (!header) {
      if (cells.size() < 4 || cells[0] != "t" || cells[1] != "E_total" || cells[cells.size() - 2] != "W_exp" ||
          cells.back() != "front_mass_outside") {
        throw Error("unexpected trace header: " + line);
      }
      for (std::size_t k = 2; k + 2 < cells.size(); ++k) {
        const std::string prefix = "E_local_a=";
        if (cells[k].rfind(prefix, 0) != 0) throw Error("unexpected trace column " + cells[k]);
        t.a.push_back(std::stod(cells[k].substr(prefix.size())));
      }
      columns = cells.size();
      header = true;
      continue;
    }
    if (cells.size() != columns) throw Error("trace row has " + std::to_string(cells.size()) + " fields");
    TraceRow r;
    r.t = std::stod(cells[0]);
    r.e_total = std::stod(cells[1]);
    for (std::size_t k = 0; k < t.a.size(); ++k) r.e_local.push_back(std::stod(cells[2 + k]));
    r.w_exp = std::stod(cells[columns - 2]);
    r.front_mass_outside = std::stod(cells[columns - 1]);
    t.rows.push_back(std::move(r));
  }
  if (!header) throw Error("trace has no header line");
  return t;
}

Trace read_trace(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read trace " + path.string());
  return read_trace(is);
}

}  // namespace conedecay::experiment
