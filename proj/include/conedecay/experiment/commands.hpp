#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "conedecay/experiment/config.hpp"
#include "conedecay/experiment/run_record.hpp"
#include "conedecay/experiment/trace.hpp"
#include "conedecay/planar/solver.hpp"
#include "conedecay/radial/solver.hpp"

namespace conedecay::experiment {

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_config_error = 2,
  exit_instability = 3,
  exit_extend_t = 4,
  exit_io_error = 5,
};

/// Maps a caught exception to the CLI exit code.
int exit_code_for(const std::exception& e);

struct CommandContext {
  std::filesystem::path out_dir = "out";
  int workers = 1;
  std::optional<std::uint64_t> seed;
  /// Progress and summaries; null silences them.
  std::ostream* log = nullptr;
};

struct CommandResult {
  int exit_code = exit_ok;
  RunRecord record;
};

// ---- in-memory runs (no files) ------------------------------------------

struct RadialRun {
  radial::RadialGrid grid;
  Trace trace;
  double e0 = 0.0;
  double energy_drift = 0.0;
  double max_front_mass = 0.0;
  /// Largest W(t_{k+1}) / W(t_k) - 1 between consecutive samples.
  double max_weighted_increase = 0.0;
  double linear_weight_residual = 0.0;
  std::vector<std::optional<decay::DecayFit>> fits;  // per observation radius
  std::vector<std::string> fit_errors;                 // "extend T" messages, per radius
};

RadialRun run_radial(const ExperimentConfig& c,
                     const std::function<void(const radial::RadialState&)>& on_sample = {});

struct PlanarRun {
  planar::PolarGrid2D grid;
  Trace trace;
  double e0 = 0.0;
  double energy_drift = 0.0;
  double max_front_mass = 0.0;
  std::vector<std::optional<decay::DecayFit>> fits;
  std::vector<std::string> fit_errors;
};

PlanarRun run_planar(const ExperimentConfig& c,
                     const std::function<void(const planar::PolarGrid2D&, const planar::PlanarState&)>&
                         on_sample = {});

/// Transit time for radius a: the reflected trailing edge of the data leaves ρ <= a^m.
double transit_time(double a, double m, double r0, const radial::BumpSpec& data);

/// Classifies every E(t, a) series of a trace with the given options.
std::vector<std::optional<decay::DecayFit>> analyze_trace(const Trace& t, const decay::ClassifyOptions& o,
                                                          std::vector<std::string>* errors = nullptr);

// ---- CLI commands (write artifacts under ctx.out_dir) --------------------

CommandResult cmd_check_metric(const ExperimentConfig& c, const CommandContext& ctx);
CommandResult cmd_run_radial(const ExperimentConfig& c, const CommandContext& ctx);
CommandResult cmd_run_planar(const ExperimentConfig& c, const CommandContext& ctx);
CommandResult cmd_analyze(const std::filesystem::path& trace, const ExperimentConfig& c,
                          const CommandContext& ctx);
CommandResult cmd_sweep(const ExperimentConfig& c, const CommandContext& ctx);

}  // namespace conedecay::experiment
