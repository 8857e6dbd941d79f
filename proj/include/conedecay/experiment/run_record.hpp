#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conedecay/decay/fit.hpp"
#include "conedecay/metric/report.hpp"

namespace conedecay::experiment {

struct CheckOutcome {
  bool pass = true;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

/// Everything a command produced, serialised as one JSON document.
struct RunRecord {
  std::string command;
  std::string config_hash;
  std::string started;   // ISO-8601 UTC
  std::string finished;
  nlohmann::json config;
  std::vector<metric::AssumptionReport> reports;
  nlohmann::json series = nlohmann::json::object();  // label -> {t: [...], E: [...]}
  std::map<std::string, decay::DecayFit> fits;         // label -> fit
  std::map<std::string, CheckOutcome> checks;
  std::vector<std::string> notes;

  bool all_checks_pass() const;
  nlohmann::json to_json() const;
};

std::string utc_timestamp();
nlohmann::json fit_to_json(const decay::DecayFit& f);
nlohmann::json report_to_json(const metric::AssumptionReport& r);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace conedecay::experiment
