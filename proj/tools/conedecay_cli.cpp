// conedecay: command-line front end for the metric checks, solvers and decay analysis.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "conedecay/error.hpp"
#include "conedecay/experiment/commands.hpp"
#include "conedecay/experiment/config.hpp"

namespace ex = conedecay::experiment;

int main(int argc, char** argv) {
  CLI::App app{"Wave-equation decay laboratory on exterior cone domains"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 1;
  std::optional<std::uint64_t> seed;
  std::string trace_path;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "YAML experiment config");
    if (config_required) opt->required();
    sub->add_option("--out", out_dir, "output directory (default: output.dir from the config)");
    sub->add_option("--workers", workers, "parallel runs for sweep")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "seed for randomized metric samples");
  };
  auto* check = app.add_subcommand("check-metric", "verify the cone condition and assumptions A, B, C");
  auto* radial = app.add_subcommand("run-radial", "integrate the reduced radial equation");
  auto* planar = app.add_subcommand("run-planar", "integrate the 2-D variable-coefficient equation");
  auto* analyze = app.add_subcommand("analyze", "classify the local energy series of a trace CSV");
  auto* sweep = app.add_subcommand("sweep", "run the radial solver over a parameter axis");
  add_common(check, true);
  add_common(radial, true);
  add_common(planar, true);
  add_common(analyze, false);
  add_common(sweep, true);
  analyze->add_option("trace", trace_path, "trace CSV written by run-radial or run-planar")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ex::exit_config_error;
  }

  try {
    ex::ExperimentConfig config = config_path.empty() ? ex::parse_config("") : ex::load_config(config_path);
    if (seed) config.seed = *seed;
    ex::CommandContext ctx;
    ctx.out_dir = out_dir.empty() ? config.output.dir : out_dir;
    ctx.workers = workers;
    ctx.seed = seed;
    ctx.log = &std::cout;

    ex::CommandResult result;
    if (*check) result = ex::cmd_check_metric(config, ctx);
    else if (*radial) result = ex::cmd_run_radial(config, ctx);
    else if (*planar) result = ex::cmd_run_planar(config, ctx);
    else if (*analyze) result = ex::cmd_analyze(trace_path, config, ctx);
    else result = ex::cmd_sweep(config, ctx);
    std::cout << "exit " << result.exit_code << " (" << ctx.out_dir.string() << ")\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ex::exit_code_for(e);
  }
}
