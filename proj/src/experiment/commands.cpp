#include "conedecay/experiment/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "conedecay/error.hpp"
#include "conedecay/experiment/svg_plot.hpp"
#include "conedecay/metric/checks.hpp"
#include "conedecay/planar/energy.hpp"
#include "conedecay/planar/snapshot.hpp"
#include "conedecay/radial/energy.hpp"

namespace conedecay::experiment {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParameterError*>(&e)) return exit_config_error;
  if (dynamic_cast<const InstabilityError*>(&e)) return exit_instability;
  if (dynamic_cast<const InsufficientData*>(&e)) return exit_extend_t;
  if (dynamic_cast<const fs::filesystem_error*>(&e)) return exit_io_error;
  if (dynamic_cast<const DomainError*>(&e)) return exit_check_failed;
  if (dynamic_cast<const Error*>(&e)) return exit_io_error;
  return exit_io_error;
}

double transit_time(double a, double m, double r0, const radial::BumpSpec& data) {
  return std::pow(a, m) + data.hi() - 2.0 * std::pow(r0, m);
}

std::vector<std::optional<decay::DecayFit>> analyze_trace(const Trace& t, const decay::ClassifyOptions& o,
                                                          std::vector<std::string>* errors) {
  std::vector<std::optional<decay::DecayFit>> out;
  for (std::size_t k = 0; k < t.a.size(); ++k) {
    const decay::EnergySeries s = t.local_series(k);
    std::string err;
    if (s.size() > 0 && s.reference_energy() == 0.0 &&
        std::all_of(s.values.begin(), s.values.end(), [](double v) { return v == 0.0; })) {
      decay::DecayFit f;
      f.model = decay::Model::extinct;
      f.extinction_time = s.times.front();
      f.note = "zero data";
      out.emplace_back(f);
    } else {
      try {
        out.emplace_back(decay::classify(s, o));
      } catch (const InsufficientData& e) {
        out.emplace_back(std::nullopt);
        err = e.what();
      }
    }
    if (errors) errors->push_back(err);
  }
  return out;
}

namespace {

void log_line(const CommandContext& ctx, const std::string& s) {
  if (ctx.log) *ctx.log << s << '\n';
}

std::vector<PlotSeries> plot_series(const Trace& t) {
  std::vector<PlotSeries> out;
  for (std::size_t k = 0; k < t.a.size(); ++k) {
    PlotSeries p;
    p.label = local_column(t.a[k]);
    for (const auto& r : t.rows) {
      p.t.push_back(r.t);
      p.values.push_back(r.e_local[k]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

nlohmann::json series_json(const Trace& t, std::size_t k) {
  nlohmann::json j;
  std::vector<double> ts, es;
  for (const auto& r : t.rows) {
    ts.push_back(r.t);
    es.push_back(r.e_local[k]);
  }
  j["t"] = ts;
  j["E"] = es;
  return j;
}

void add_fits(RunRecord& rec, const Trace& t, const std::vector<std::optional<decay::DecayFit>>& fits,
              const std::vector<std::string>& errors) {
  for (std::size_t k = 0; k < t.a.size(); ++k) {
    const std::string label = local_column(t.a[k]);
    rec.series[label] = series_json(t, k);
    if (fits[k]) rec.fits[label] = *fits[k];
    if (k < errors.size() && !errors[k].empty()) rec.notes.push_back(label + ": " + errors[k]);
  }
}

int final_exit(const RunRecord& rec, const std::vector<std::string>& fit_errors) {
  if (!rec.all_checks_pass()) return exit_check_failed;
  for (const auto& e : fit_errors) {
    if (!e.empty()) return exit_extend_t;
  }
  return exit_ok;
}

void print_fits(const CommandContext& ctx, const Trace& t, const std::vector<std::optional<decay::DecayFit>>& fits,
                const std::vector<std::string>& errors) {
  if (!ctx.log) return;
  for (std::size_t k = 0; k < t.a.size(); ++k) {
    *ctx.log << "[" << local_column(t.a[k]) << "]\n";
    if (fits[k]) *ctx.log << decay::summary_block(*fits[k]);
    else *ctx.log << "no verdict: " << errors[k] << '\n';
  }
}

void print_checks(const CommandContext& ctx, const RunRecord& rec) {
  if (!ctx.log) return;
  for (const auto& [name, c] : rec.checks) {
    *ctx.log << (c.pass ? "ok   " : "FAIL ") << name << "  value " << format_number(c.value) << "  limit "
             << format_number(c.limit);
    if (!c.detail.empty()) *ctx.log << "  (" << c.detail << ")";
    *ctx.log << '\n';
  }
}

fs::path prepare_out(const CommandContext& ctx) {
  fs::create_directories(ctx.out_dir);
  return ctx.out_dir;
}

}  // namespace

RadialRun run_radial(const ExperimentConfig& c, const std::function<void(const radial::RadialState&)>& on_sample) {
  validate_radial(c);
  const int n = c.metric.n;
  const double m = c.metric.m;
  const double r0 = c.metric.r0;
  const radial::BumpSpec& b = c.data.bump;
  const double T = c.observation.T;
  const double rho_min = std::pow(r0, m);
  const double rho_max = c.grid.rho_max ? *c.grid.rho_max : radial::sized_rho_max(rho_min, b.hi(), T, c.grid.n_cells);

  RadialRun run;
  run.grid = radial::make_radial_grid(rho_min, rho_max, c.grid.n_cells, n / m, c.grid.cfl, T);
  const radial::RadialSetting setting{n, m};
  const double R0 = std::pow(b.hi(), 1.0 / m);

  Trace& tr = run.trace;
  tr.a = c.observation.a;
  tr.meta["run_id"] = c.name;
  tr.meta["kind"] = "radial";
  tr.meta["n"] = std::to_string(n);
  tr.meta["m"] = format_number(m);
  tr.meta["r0"] = format_number(r0);
  tr.meta["R0"] = format_number(R0);
  tr.meta["d"] = format_number(run.grid.d);
  tr.meta["rho_min"] = format_number(rho_min);
  tr.meta["rho_max"] = format_number(rho_max);
  tr.meta["n_cells"] = std::to_string(c.grid.n_cells);
  tr.meta["dt"] = format_number(run.grid.dt);
  tr.meta["config_hash"] = config_hash(c);
  for (double a : tr.a) tr.meta[transit_key(a)] = format_number(transit_time(a, m, r0, b));

  radial::LinearWeightAccumulator lw(run.grid, setting);
  double prev_w = -1.0;
  radial::solve_radial(run.grid, b, T, c.observation.sample_every, [&](const radial::RadialState& s) {
    TraceRow row;
    row.t = s.t;
    row.e_total = radial::total_energy(s, run.grid, setting);
    if (tr.rows.empty()) run.e0 = row.e_total;
    for (double a : tr.a) row.e_local.push_back(radial::local_energy(s, run.grid, a, setting));
    row.w_exp = radial::weighted_energy_exp(s, run.grid, setting);
    row.front_mass_outside = radial::front_mass_outside(s, run.grid, R0, setting, run.e0);
    if (prev_w > 0.0) run.max_weighted_increase = std::max(run.max_weighted_increase, row.w_exp / prev_w - 1.0);
    prev_w = row.w_exp;
    run.max_front_mass = std::max(run.max_front_mass, row.front_mass_outside);
    lw.add(s);
    tr.rows.push_back(std::move(row));
    if (on_sample) on_sample(s);
  });
  tr.meta["e0"] = format_number(run.e0);
  run.energy_drift = run.e0 > 0.0 ? std::abs(tr.rows.back().e_total - run.e0) / run.e0 : 0.0;
  run.linear_weight_residual = lw.residual();
  run.fits = analyze_trace(tr, c.analysis, &run.fit_errors);
  return run;
}

PlanarRun run_planar(const ExperimentConfig& c,
                     const std::function<void(const planar::PolarGrid2D&, const planar::PlanarState&)>& on_sample) {
  validate_planar(c);
  const double m = c.metric.m;
  const double r0 = c.metric.r0;
  const radial::BumpSpec& b = c.data.bump;
  const double T = c.observation.T;
  const double rho_min = std::pow(r0, m);
  const double rho_max = c.grid.r_max ? std::pow(*c.grid.r_max, m) : radial::sized_rho_max(rho_min, b.hi(), T, c.grid.n_r);
  const double r_max = std::pow(rho_max, 1.0 / m);
  for (double a : c.observation.a) {
    if (a > r_max) throw ConfigError("observation.a", c.line_of("observation.a"), "a exceeds the planar grid");
  }

  PlanarRun run;
  run.grid = planar::make_polar_grid(r0, r_max, c.grid.n_r, c.grid.n_theta, c.grid.spacing, m);
  const metric::CoefficientField field = build_field(c.metric);
  const planar::PlanarOperator op(field, run.grid);
  planar::PlanarData data;
  data.radial = b;
  data.mode = c.data.angular_mode;
  data.phase = c.data.phase;
  data.m = m;
  const double R0 = data.support_radius();
  double max_drho = 0.0;
  for (int i = 0; i < run.grid.n_r; ++i) {
    max_drho = std::max(max_drho, std::pow(run.grid.r_node[i + 1], m) - std::pow(run.grid.r_node[i], m));
  }

  Trace& tr = run.trace;
  tr.a = c.observation.a;
  tr.meta["run_id"] = c.name;
  tr.meta["kind"] = "planar";
  tr.meta["variant"] = std::string(metric::to_string(c.metric.variant));
  tr.meta["n"] = "2";
  tr.meta["m"] = format_number(m);
  tr.meta["r0"] = format_number(r0);
  tr.meta["R0"] = format_number(R0);
  tr.meta["r_max"] = format_number(r_max);
  tr.meta["n_r"] = std::to_string(c.grid.n_r);
  tr.meta["n_theta"] = std::to_string(c.grid.n_theta);
  tr.meta["config_hash"] = config_hash(c);
  for (double a : tr.a) tr.meta[transit_key(a)] = format_number(transit_time(a, m, r0, b));

  planar::PlanarRunOptions opt;
  opt.cfl = c.grid.cfl;
  opt.sample_every = c.observation.sample_every;
  planar::solve_planar(op, data, T, opt, [&](const planar::PlanarState& s) {
    TraceRow row;
    row.t = s.t;
    row.e_total = planar::total_energy_2d(s, op);
    if (tr.rows.empty()) run.e0 = row.e_total;
    for (double a : tr.a) row.e_local.push_back(planar::local_energy_2d(s, op, a));
    row.w_exp = planar::weighted_energy_exp_2d(s, op, m);
    const double r_star = std::pow(std::pow(R0, m) + s.t + 5.0 * max_drho, 1.0 / m);
    row.front_mass_outside = planar::energy_outside_2d(s, op, r_star, run.e0);
    run.max_front_mass = std::max(run.max_front_mass, row.front_mass_outside);
    tr.rows.push_back(std::move(row));
    if (on_sample) on_sample(run.grid, s);
  });
  tr.meta["e0"] = format_number(run.e0);
  tr.meta["dt"] = format_number(planar::choose_time_step(op, opt.cfl, T));
  run.energy_drift = run.e0 > 0.0 ? std::abs(tr.rows.back().e_total - run.e0) / run.e0 : 0.0;
  run.fits = analyze_trace(tr, c.analysis, &run.fit_errors);
  return run;
}

CommandResult cmd_check_metric(const ExperimentConfig& c, const CommandContext& ctx) {
  CommandResult res;
  RunRecord& rec = res.record;
  rec.command = "check-metric";
  rec.started = utc_timestamp();
  rec.config = to_json(c);
  rec.config_hash = config_hash(c);
  const std::uint64_t seed = ctx.seed.value_or(c.seed);

  const metric::CoefficientField field = build_field(c.metric);
  const int n = c.metric.n;
  const double r0 = c.metric.r0;
  const auto& k = c.checks;
  std::vector<double> radii;
  for (int i = 0; i < k.n_radii; ++i) {
    radii.push_back(k.n_radii == 1 ? r0 : r0 + (k.r_max_factor - 1.0) * r0 * i / (k.n_radii - 1));
  }
  const std::vector<metric::Vector> angles =
      n == 2 ? metric::circle_angles(k.n_angles) : metric::random_angles(n, k.n_angles, seed);

  rec.reports.push_back(metric::check_assumption_B(field, radii, metric::unit_directions(n, k.n_angles, seed),
                                                   k.cone_tolerance));
  metric::AssumptionAOptions aopt;
  aopt.fraction = k.a_fraction;
  aopt.speed.seed = seed;
  rec.reports.push_back(metric::check_assumption_A(field, k.y_max_factor * r0, aopt));

  if (const auto alpha = build_alpha(c.metric, k.alpha_scale)) {
    metric::AssumptionCOptions copt;
    copt.tolerance = k.c_tolerance;
    rec.reports.push_back(metric::check_assumption_C(field, alpha, radii, angles, copt));
  } else {
    rec.notes.push_back("assumption C skipped: no alpha profile configured");
  }
  for (const auto& r : rec.reports) {
    CheckOutcome o;
    o.pass = r.pass;
    o.value = r.margin;
    o.limit = r.margin_is_defect ? r.tolerance : 0.0 - r.tolerance;  // not -tol: avoids printing -0
    o.detail = r.heuristic ? "heuristic" : "";
    rec.checks["assumption_" + std::string(metric::to_string(r.assumption))] = o;
  }

  if (k.hessian_samples > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rs(1.05 * r0, k.r_max_factor * r0);
    const auto thetas = n == 2 ? std::vector<metric::Vector>{} : metric::random_angles(n, k.hessian_samples, seed + 1);
    std::uniform_real_distribution<double> th(0.0, 2.0 * 3.14159265358979323846);
    double worst = 0.0;
    for (int s = 0; s < k.hessian_samples; ++s) {
      metric::Vector theta(n - 1);
      const double r = rs(rng);
      if (n == 2) theta(0) = th(rng);
      else theta = thetas[s];
      worst = std::max(worst, metric::hessian_identity_check(field, r, theta));
    }
    rec.checks["hessian_identity"] = {worst <= k.hessian_tolerance, worst, k.hessian_tolerance,
                                      std::to_string(k.hessian_samples) + " random samples"};
  }

  const fs::path out = prepare_out(ctx);
  fs::create_directories(out / "reports");
  for (const auto& r : rec.reports) {
    std::ofstream os(out / "reports" / ("assumption_" + std::string(metric::to_string(r.assumption)) + ".txt"));
    if (!os) throw Error("cannot write report");
    metric::write_report(os, r);
  }
  rec.finished = utc_timestamp();
  write_json(out / "record.json", rec.to_json());
  print_checks(ctx, rec);
  res.exit_code = rec.all_checks_pass() ? exit_ok : exit_check_failed;
  return res;
}

namespace {

void radial_checks(RunRecord& rec, const RadialRun& run, const InvariantConfig& inv) {
  rec.checks["energy_conservation"] = {run.energy_drift <= inv.energy_drift, run.energy_drift, inv.energy_drift,
                                       "|E(T)-E(0)|/E(0)"};
  rec.checks["finite_speed"] = {run.max_front_mass <= inv.front_mass, run.max_front_mass, inv.front_mass,
                                "max energy fraction beyond the front"};
  rec.checks["weighted_energy_monotone"] = {run.max_weighted_increase <= inv.weighted_step,
                                            run.max_weighted_increase, inv.weighted_step,
                                            "max relative increase of W_exp between samples"};
  const double lim = -inv.linear_weight * run.e0;
  rec.checks["linear_weight_inequality"] = {run.linear_weight_residual >= lim, run.linear_weight_residual, lim,
                                            "RHS - LHS"};
}

}  // namespace

CommandResult cmd_run_radial(const ExperimentConfig& c, const CommandContext& ctx) {
  CommandResult res;
  RunRecord& rec = res.record;
  rec.command = "run-radial";
  rec.started = utc_timestamp();
  rec.config = to_json(c);
  rec.config_hash = config_hash(c);
  const RadialRun run = run_radial(c);
  radial_checks(rec, run, c.invariants);
  add_fits(rec, run.trace, run.fits, run.fit_errors);

  const fs::path out = prepare_out(ctx);
  write_trace(out / "trace.csv", run.trace);
  if (c.output.svg) write_decay_svg(out / "decay.svg", c.name + " (radial, d = " + format_number(run.grid.d) + ")", plot_series(run.trace));
  rec.finished = utc_timestamp();
  write_json(out / "record.json", rec.to_json());
  print_checks(ctx, rec);
  print_fits(ctx, run.trace, run.fits, run.fit_errors);
  res.exit_code = final_exit(rec, run.fit_errors);
  return res;
}

CommandResult cmd_run_planar(const ExperimentConfig& c, const CommandContext& ctx) {
  CommandResult res;
  RunRecord& rec = res.record;
  rec.command = "run-planar";
  rec.started = utc_timestamp();
  rec.config = to_json(c);
  rec.config_hash = config_hash(c);
  const fs::path out = prepare_out(ctx);

  std::vector<double> pending = c.observation.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snap = 0;
  int snap_id = 0;
  if (!pending.empty()) fs::create_directories(out / "snapshots");
  const PlanarRun run = run_planar(c, [&](const planar::PolarGrid2D& g, const planar::PlanarState& s) {
    while (next_snap < pending.size() && s.t >= pending[next_snap] - 1e-12) {
      char name[64];
      std::snprintf(name, sizeof name, "snap_%03d.bin", snap_id++);
      planar::write_snapshot(out / "snapshots" / name, g, s);
      ++next_snap;
    }
  });
  const auto& inv = c.invariants;
  rec.checks["energy_conservation"] = {run.energy_drift <= inv.planar_energy_drift, run.energy_drift,
                                       inv.planar_energy_drift, "|E(T)-E(0)|/E(0)"};
  rec.checks["finite_speed"] = {run.max_front_mass <= inv.planar_front_mass, run.max_front_mass,
                                inv.planar_front_mass, "max energy fraction beyond the front"};
  add_fits(rec, run.trace, run.fits, run.fit_errors);
  write_trace(out / "trace.csv", run.trace);
  if (c.output.svg) write_decay_svg(out / "decay.svg", c.name + " (planar)", plot_series(run.trace));
  rec.finished = utc_timestamp();
  write_json(out / "record.json", rec.to_json());
  print_checks(ctx, rec);
  print_fits(ctx, run.trace, run.fits, run.fit_errors);
  res.exit_code = final_exit(rec, run.fit_errors);
  return res;
}

CommandResult cmd_analyze(const fs::path& trace_path, const ExperimentConfig& c, const CommandContext& ctx) {
  CommandResult res;
  RunRecord& rec = res.record;
  rec.command = "analyze";
  rec.started = utc_timestamp();
  rec.config = to_json(c);
  rec.config_hash = config_hash(c);
  const Trace t = read_trace(trace_path);
  std::vector<std::string> errors;
  const auto fits = analyze_trace(t, c.analysis, &errors);
  add_fits(rec, t, fits, errors);
  const fs::path out = prepare_out(ctx);
  {
    std::ofstream os(out / "fits.csv");
    if (!os) throw Error("cannot write fits.csv");
    os << "a," << decay::fit_csv_header() << '\n';
    for (std::size_t k = 0; k < t.a.size(); ++k) {
      if (fits[k]) os << format_number(t.a[k]) << ',' << decay::to_csv_row(*fits[k]) << '\n';
    }
  }
  if (c.output.svg) write_decay_svg(out / "decay.svg", "analysis of " + trace_path.filename().string(), plot_series(t));
  rec.finished = utc_timestamp();
  write_json(out / "analysis.json", rec.to_json());
  print_fits(ctx, t, fits, errors);
  res.exit_code = final_exit(rec, errors);
  return res;
}

CommandResult cmd_sweep(const ExperimentConfig& c, const CommandContext& ctx) {
  if (!c.sweep) throw ConfigError("sweep", 0, "the sweep command needs a sweep block");
  CommandResult res;
  RunRecord& rec = res.record;
  rec.command = "sweep";
  rec.started = utc_timestamp();
  rec.config = to_json(c);
  rec.config_hash = config_hash(c);

  std::vector<double> values = c.sweep->values;
  std::sort(values.begin(), values.end());
  struct Item {
    double value = 0.0;
    ExperimentConfig config;
    std::optional<RadialRun> run;
    int exit_code = exit_ok;
    std::string error;
  };
  std::vector<Item> items(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    Item& it = items[k];
    it.value = values[k];
    it.config = c;
    it.config.sweep.reset();
    if (c.sweep->axis == "m") it.config.metric.m = values[k];
    else it.config.metric.n = static_cast<int>(std::lround(values[k]));
    it.config.name = c.name + "_" + c.sweep->axis + "=" + format_number(values[k]);
  }

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < items.size(); k = next++) {
      Item& it = items[k];
      try {
        it.run = run_radial(it.config);
      } catch (const std::exception& e) {
        it.exit_code = exit_code_for(e);
        it.error = e.what();
      }
      std::lock_guard lock(log_mutex);
      log_line(ctx, "finished " + it.config.name);
    }
  };
  const int workers = std::max(1, std::min<int>(ctx.workers, static_cast<int>(items.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const fs::path out = prepare_out(ctx);
  std::ostringstream table;
  table << "axis,value,d,a,model,rate,r_squared,extinction_time,checks_pass,exit_code\n";
  int worst_exit = exit_ok;
  for (Item& it : items) {
    const double d = it.config.metric.n / it.config.metric.m;
    if (!it.run) {
      table << c.sweep->axis << ',' << format_number(it.value) << ',' << format_number(d) << ",,error,,,,false,"
            << it.exit_code << '\n';
      rec.notes.push_back(it.config.name + ": " + it.error);
      worst_exit = std::max(worst_exit, it.exit_code);
      continue;
    }
    RunRecord sub;
    radial_checks(sub, *it.run, it.config.invariants);
    const int code = final_exit(sub, it.run->fit_errors);
    worst_exit = std::max(worst_exit, code);
    for (const auto& [name, chk] : sub.checks) rec.checks[it.config.name + "." + name] = chk;
    const fs::path dir = out / (c.sweep->axis + "=" + format_number(it.value));
    fs::create_directories(dir);
    write_trace(dir / "trace.csv", it.run->trace);
    if (c.output.svg) write_decay_svg(dir / "decay.svg", it.config.name, plot_series(it.run->trace));
    for (std::size_t k = 0; k < it.run->trace.a.size(); ++k) {
      const double a = it.run->trace.a[k];
      table << c.sweep->axis << ',' << format_number(it.value) << ',' << format_number(d) << ','
            << format_number(a) << ',';
      const auto& f = it.run->fits[k];
      if (f) {
        rec.fits[it.config.name + "." + local_column(a)] = *f;
        table << decay::to_string(f->model) << ',' << format_number(f->rate) << ',' << format_number(f->r_squared)
              << ',' << (f->extinction_time ? format_number(*f->extinction_time) : "");
      } else {
        table << "extend_T,,,";
      }
      table << ',' << (sub.all_checks_pass() ? "true" : "false") << ',' << code << '\n';
    }
  }
  {
    std::ofstream os(out / "sweep.csv");
    if (!os) throw Error("cannot write sweep.csv");
    os << table.str();
  }
  rec.finished = utc_timestamp();
  write_json(out / "record.json", rec.to_json());
  if (ctx.log) *ctx.log << table.str();
  res.exit_code = worst_exit;
  return res;
}

}  // namespace conedecay::experiment
