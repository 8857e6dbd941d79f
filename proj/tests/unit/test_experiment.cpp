#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conedecay/error.hpp"
#include "conedecay/experiment/commands.hpp"
#include "conedecay/experiment/config.hpp"
#include "conedecay/experiment/svg_plot.hpp"
#include "conedecay/experiment/trace.hpp"

using namespace conedecay;
using namespace conedecay::experiment;
namespace fs = std::filesystem;

namespace {

const char* kRadial = R"(name: unit
metric:
  variant: E2_2
  n: 3
  m: 1.5
  r0: 1
data: {center: 2.5, width: 1.0, mode: velocity}
grid: {n_cells: 1000, cfl: 0.5}
observation: {a: [2, 2.5], T: 40, sample_every: 10}
)";

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("conedecay_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config errors carry the key and line") {
  CHECK(error_line("name: x\nmetric:\n  variant: E2_2\n  colour: red\n") == 4);
  CHECK(error_line("name: x\nmetric: {variant: E2_9}\n") == 2);
  CHECK(error_line("name: x\ngrid:\n  n_cells: -5\n") == 3);
  CHECK(error_line("name: x\nobservation:\n  T: fast\n") == 3);
  CHECK(error_line("name: x\nbogus: 1\n") == 2);
  try {
    parse_config("metric:\n  n: 3\n  m: 0\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "metric.m");
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_config("metric: [1, 2\n"), ConfigError);
}

TEST_CASE("config hash is deterministic and tracks values") {
  const auto a = parse_config(kRadial);
  const auto b = parse_config(std::string(kRadial) + "\n# trailing comment\n");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  std::string reordered = "observation: {a: [2, 2.5], T: 40, sample_every: 10}\n" + std::string(kRadial);
  reordered = reordered.substr(0, reordered.rfind("observation"));
  CHECK(config_hash(parse_config(reordered)) == config_hash(a));
  std::string changed = kRadial;
  changed.replace(changed.find("T: 40"), 5, "T: 41");
  CHECK(config_hash(parse_config(changed)) != config_hash(a));
  const auto j = to_json(a);
  CHECK(j["metric"]["variant"] == "E2_2");
  CHECK(j["grid"]["n_cells"] == 1000);
  CHECK(j.contains("analysis"));
}

TEST_CASE("validation rejects geometry that cannot work") {
  auto c = parse_config(kRadial);
  CHECK_NOTHROW(validate_radial(c));
  c.observation.a = {40.0};
  CHECK_THROWS_AS(validate_radial(c), ConfigError);
  auto p = parse_config("metric: {variant: E2_2, n: 3, m: 1}\n");
  CHECK_THROWS_AS(validate_planar(p), ConfigError);
}

TEST_CASE("trace round trip") {
  Trace t;
  t.meta["n"] = "3";
  t.meta["m"] = "1.5";
  t.meta[transit_key(2.0)] = "4.25";
  t.a = {2.0};
  t.rows.push_back({0.0, 1.0, {0.5}, 2.0, 0.0});
  t.rows.push_back({0.1, 1.0, {0.1 / 3.0}, 1.9, 1e-17});
  std::stringstream ss;
  write_trace(ss, t);
  const Trace back = read_trace(ss);
  CHECK(back.a == t.a);
  CHECK(back.meta == t.meta);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[1].e_local[0] == t.rows[1].e_local[0]);
  CHECK(back.rows[1].front_mass_outside == 1e-17);
  const auto s = back.local_series(0);
  CHECK(s.meta.t_transit == 4.25);
  CHECK(s.meta.n == 3);
  CHECK(local_column(2.5) == "E_local_a=2.5");
}

TEST_CASE("radial run passes its invariants and analyze reproduces the fits") {
  const auto c = parse_config(kRadial);
  const fs::path out = scratch("unit_radial");
  CommandContext ctx;
  ctx.out_dir = out;
  const auto run = cmd_run_radial(c, ctx);
  CHECK(run.record.all_checks_pass());
  CHECK(fs::exists(out / "trace.csv"));
  CHECK(fs::exists(out / "record.json"));
  CHECK(fs::exists(out / "decay.svg"));
  const fs::path again = scratch("unit_analyze");
  ctx.out_dir = again;
  const auto an = cmd_analyze(out / "trace.csv", c, ctx);
  CHECK(fs::exists(again / "fits.csv"));
  REQUIRE(an.record.fits.size() == run.record.fits.size());
  for (const auto& [label, f] : run.record.fits) {
    const auto& g = an.record.fits.at(label);
    CHECK(g.model == f.model);
    CHECK(g.rate == f.rate);
    CHECK(g.r_squared == f.r_squared);
  }
  CHECK(run.record.config_hash == config_hash(c));
  fs::remove_all(out);
  fs::remove_all(again);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ConfigError("x", 1, "bad")) == exit_config_error);
  CHECK(exit_code_for(ParameterError("bad")) == exit_config_error);
  CHECK(exit_code_for(InstabilityError("boom")) == exit_instability);
  CHECK(exit_code_for(InsufficientData("short")) == exit_extend_t);
  CHECK(exit_code_for(DomainError("out")) == exit_check_failed);
  CHECK(exit_code_for(fs::filesystem_error("io", std::error_code())) == exit_io_error);
}

TEST_CASE("svg plot") {
  PlotSeries s{"E", {0.0, 1.0, 2.0, 3.0}, {1.0, 0.1, 0.0, 0.001}};
  const std::string svg = decay_svg("demo", {s});
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("demo") != std::string::npos);
}
