#include "conedecay/experiment/run_record.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "conedecay/error.hpp"

namespace conedecay::experiment {

namespace {

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

bool RunRecord::all_checks_pass() const {
  for (const auto& [name, c] : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json fit_to_json(const decay::DecayFit& f) {
  nlohmann::json j;
  j["model"] = std::string(decay::to_string(f.model));
  j["rate"] = finite_or_null(f.rate);
  j["prefactor"] = finite_or_null(f.prefactor);
  j["window"] = {finite_or_null(f.window.t1), finite_or_null(f.window.t2)};
  j["r_squared"] = finite_or_null(f.r_squared);
  j["residual_rms"] = finite_or_null(f.residual_rms);
  j["points"] = f.points;
  j["flagged"] = f.flagged;
  j["slope_spread"] = finite_or_null(f.slope_spread);
  j["extinction_time"] = f.extinction_time ? nlohmann::json(*f.extinction_time) : nlohmann::json(nullptr);
  j["note"] = f.note;
  return j;
}

nlohmann::json report_to_json(const metric::AssumptionReport& r) {
  nlohmann::json j;
  j["assumption"] = std::string(metric::to_string(r.assumption));
  j["verdict"] = r.pass ? "pass" : "fail";
  j["margin"] = finite_or_null(r.margin);
  j["tolerance"] = r.tolerance;
  j["heuristic"] = r.heuristic;
  j["samples_checked"] = r.samples_checked;
  j["worst_point"] = {{"r", r.worst.r}, {"coords", r.worst.coords}, {"margin", finite_or_null(r.worst.margin)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["started"] = started;
  j["finished"] = finished;
  j["config"] = config;
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(report_to_json(r));
  j["series"] = series;
  j["fits"] = nlohmann::json::object();
  for (const auto& [k, f] : fits) j["fits"][k] = fit_to_json(f);
  j["checks"] = nlohmann::json::object();
  for (const auto& [k, c] : checks) {
    j["checks"][k] = {{"pass", c.pass}, {"value", finite_or_null(c.value)}, {"limit", c.limit}, {"detail", c.detail}};
  }
  j["notes"] = notes;
  j["pass"] = all_checks_pass();
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << j.dump(2) << '\n';
  if (!os) throw Error("failed writing " + path.string());
}

}  // namespace conedecay::experiment
