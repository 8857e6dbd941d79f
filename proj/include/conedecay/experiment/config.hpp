#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conedecay/decay/classify.hpp"
#include "conedecay/metric/examples.hpp"
#include "conedecay/planar/grid.hpp"
#include "conedecay/radial/grid.hpp"

namespace conedecay::experiment {

enum class AlphaKind { none, coth, power };

struct AlphaSpec {
  AlphaKind kind = AlphaKind::none;
  double delta = 0.0;
  double m1 = 0.0;
};

struct MetricConfig {
  metric::Variant variant = metric::Variant::E2_2;
  int n = 3;
  double m = 1.0;
  double r0 = 1.0;
  AlphaSpec alpha;
  /// Constant SPD matrix for E2_3 / E2_5 (row-major n×n); empty means identity.
  std::vector<std::vector<double>> q;
};

struct ChecksConfig {
  double r_max_factor = 3.0;  // radii sampled in [r0, factor r0]
  int n_radii = 9;
  int n_angles = 64;
  double y_max_factor = 64.0;
  double a_fraction = 0.75;
  int hessian_samples = 100;
  double hessian_tolerance = 1e-4;
  double alpha_scale = 1.0;
  double cone_tolerance = 1e-10;
  double c_tolerance = 1e-8;
};

struct DataConfig {
  radial::BumpSpec bump;  // in ρ = r^m
  int angular_mode = 0;    // planar only
  double phase = 0.0;
};

struct GridConfig {
  // radial
  int n_cells = 4000;
  std::optional<double> rho_max;
  // planar
  int n_r = 200;
  int n_theta = 128;
  std::optional<double> r_max;
  planar::RadialSpacing spacing = planar::RadialSpacing::uniform_rho;
  double cfl = 0.5;
};

struct ObservationConfig {
  std::vector<double> a = {2.0};
  double T = 40.0;
  int sample_every = 10;
  std::vector<double> snapshot_times;  // planar only
};

struct InvariantConfig {
  double energy_drift = 1e-3;
  double front_mass = 1e-6;
  double weighted_step = 1e-6;
  double linear_weight = 1e-3;
  double planar_energy_drift = 5e-3;
  double planar_front_mass = 1e-4;
};

struct OutputConfig {
  std::string dir = "out";
  bool svg = true;
};

struct SweepConfig {
  std::string axis = "m";
  std::vector<double> values;
};

struct ExperimentConfig {
  std::string name = "run";
  std::uint64_t seed = 1;
  MetricConfig metric;
  ChecksConfig checks;
  DataConfig data;
  GridConfig grid;
  ObservationConfig observation;
  decay::ClassifyOptions analysis;
  InvariantConfig invariants;
  OutputConfig output;
  std::optional<SweepConfig> sweep;

  /// 1-based line of each key present in the source document.
  std::map<std::string, int> key_lines;
  int line_of(const std::string& key) const {
    const auto it = key_lines.find(key);
    return it == key_lines.end() ? 0 : it->second;
  }
};

/// Parses a YAML document. Unknown keys, wrong types and out-of-range values raise
/// ConfigError carrying the dotted key and the 1-based line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Fully resolved config (every default filled in) as JSON with sorted keys.
nlohmann::json to_json(const ExperimentConfig& c);
/// FNV-1a 64 over the compact dump of to_json, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

/// Builds the coefficient field described by the metric block.
metric::CoefficientField build_field(const MetricConfig& m);
/// α(r) from the metric block, scaled; empty function when no α is configured.
metric::AlphaFunction build_alpha(const MetricConfig& m, double scale = 1.0);

/// ρ-support check, grid sizing and the a <= domain rule. Throws ConfigError.
void validate_radial(const ExperimentConfig& c);
void validate_planar(const ExperimentConfig& c);

}  // namespace conedecay::experiment
