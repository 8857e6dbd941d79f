#include "conedecay/experiment/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "conedecay/error.hpp"
#include "conedecay/radial/oracle.hpp"

namespace conedecay::experiment {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

/// A YAML mapping with its dotted path; tracks unknown keys.
class Section {
 public:
  Section(YAML::Node node, std::string path, std::set<std::string> allowed,
          std::map<std::string, int>* lines)
      : node_(std::move(node)), path_(std::move(path)), lines_(lines) {
    if (!node_.IsMap()) throw ConfigError(path_, line_of(node_), "expected a mapping");
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      const std::string key = it->first.as<std::string>();
      if (!allowed.count(key)) throw ConfigError(join(path_, key), line_of(it->first), "unknown key");
      if (lines_) (*lines_)[join(path_, key)] = line_of(it->first);
    }
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }
  YAML::Node raw(const std::string& key) const { return node_[key]; }
  std::string path(const std::string& key) const { return join(path_, key); }

  template <class T>
  void read(const std::string& key, T& out) const {
    const YAML::Node n = node_[key];
    if (!n) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path(key), line_of(n), "wrong type");
    }
  }

  template <class T>
  void read(const std::string& key, std::optional<T>& out) const {
    const YAML::Node n = node_[key];
    if (!n || (n.IsScalar() && n.Scalar() == "auto")) return;
    T v{};
    read(key, v);
    out = v;
  }

  std::optional<Section> child(const std::string& key, std::set<std::string> allowed) const {
    const YAML::Node n = node_[key];
    if (!n) return std::nullopt;
    return Section(n, path(key), std::move(allowed), lines_);
  }

  void fail(const std::string& key, const std::string& what) const {
    const YAML::Node n = node_[key];
    throw ConfigError(path(key), n ? line_of(n) : line_of(node_), what);
  }

  void require(bool ok, const std::string& key, const std::string& what) const {
    if (!ok) fail(key, what);
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::map<std::string, int>* lines_;
};

void read_metric(const Section& s, MetricConfig& m) {
  std::string variant = std::string(metric::to_string(m.variant));
  s.read("variant", variant);
  try {
    m.variant = metric::parse_variant(variant);
  } catch (const ParameterError& e) {
    s.fail("variant", e.what());
  }
  s.require(m.variant != metric::Variant::custom, "variant", "custom fields cannot be described in a config");
  s.read("n", m.n);
  s.read("m", m.m);
  s.read("r0", m.r0);
  s.require(m.n >= 2, "n", "must be >= 2");
  s.require(m.m > 0.0, "m", "must be positive");
  s.require(m.r0 > 0.0, "r0", "must be positive");
  if (auto a = s.child("alpha", {"type", "delta", "m1"})) {
    std::string type = "none";
    a->read("type", type);
    if (type == "coth") {
      m.alpha.kind = AlphaKind::coth;
      a->read("delta", m.alpha.delta);
      a->require(m.alpha.delta > 0.0, "delta", "must be positive");
    } else if (type == "power") {
      m.alpha.kind = AlphaKind::power;
      a->read("m1", m.alpha.m1);
      a->require(m.alpha.m1 > 0.0, "m1", "must be positive");
    } else if (type == "none") {
      m.alpha.kind = AlphaKind::none;
    } else {
      a->fail("type", "expected coth, power or none");
    }
  }
  s.read("q", m.q);
  if (!m.q.empty()) {
    bool square = m.q.size() == static_cast<std::size_t>(m.n);
    for (const auto& row : m.q) square = square && row.size() == static_cast<std::size_t>(m.n);
    s.require(square, "q", "must be an n x n matrix");
  }
  const bool needs_alpha = m.variant == metric::Variant::E2_4 || m.variant == metric::Variant::E2_5;
  s.require(!needs_alpha || m.alpha.kind != AlphaKind::none, "alpha", "E2_4 and E2_5 need an alpha profile");
}

void read_bump(const Section& s, DataConfig& d) {
  s.read("center", d.bump.center);
  s.read("width", d.bump.width);
  s.read("amplitude", d.bump.amplitude);
  std::string mode = d.bump.mode == radial::BumpMode::displacement ? "displacement" : "velocity";
  s.read("mode", mode);
  if (mode == "displacement") d.bump.mode = radial::BumpMode::displacement;
  else if (mode == "velocity") d.bump.mode = radial::BumpMode::velocity;
  else s.fail("mode", "expected displacement or velocity");
  s.read("angular_mode", d.angular_mode);
  s.read("phase", d.phase);
  s.require(d.bump.width > 0.0, "width", "must be positive");
  s.require(d.angular_mode >= 0, "angular_mode", "must be >= 0");
}

void read_analysis(const Section& s, decay::ClassifyOptions& a) {
  s.read("extinction_threshold", a.extinction_threshold);
  std::size_t min_samples = a.extinction_min_samples;
  s.read("extinction_min_samples", min_samples);
  a.extinction_min_samples = min_samples;
  s.read("residual_ratio", a.residual_ratio);
  s.read("slope_tolerance", a.slope_tolerance);
  s.read("sub_windows", a.sub_windows);
  s.read("window_offset", a.window_offset);
  s.read("window_end_fraction", a.window_end_fraction);
  s.read("min_decades", a.min_decades);
  s.read("r2_threshold", a.r2_threshold);
  if (s.has("window")) {
    std::vector<double> w;
    s.read("window", w);
    s.require(w.size() == 2 && w[1] > w[0], "window", "expected [t1, t2] with t2 > t1");
    a.window = decay::FitWindow{w[0], w[1]};
  }
  s.require(a.extinction_threshold > 0.0, "extinction_threshold", "must be positive");
  s.require(a.residual_ratio >= 1.0, "residual_ratio", "must be >= 1");
  s.require(a.slope_tolerance > 0.0, "slope_tolerance", "must be positive");
  s.require(a.sub_windows >= 2, "sub_windows", "must be >= 2");
  s.require(a.window_end_fraction > 0.0 && a.window_end_fraction <= 1.0, "window_end_fraction", "must lie in (0, 1]");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, e.msg);
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  ExperimentConfig c;
  const Section top(root, "", {"name", "seed", "metric", "checks", "data", "grid", "observation",
                               "analysis", "invariants", "output", "sweep"},
                    &c.key_lines);
  top.read("name", c.name);
  top.read("seed", c.seed);
  if (auto s = top.child("metric", {"variant", "n", "m", "r0", "alpha", "q"})) read_metric(*s, c.metric);
  else read_metric(Section(YAML::Node(YAML::NodeType::Map), "metric", {}, nullptr), c.metric);

  if (auto s = top.child("checks", {"r_max_factor", "n_radii", "n_angles", "y_max_factor", "a_fraction",
                                    "hessian_samples", "hessian_tolerance", "alpha_scale",
                                    "cone_tolerance", "c_tolerance"})) {
    auto& k = c.checks;
    s->read("r_max_factor", k.r_max_factor);
    s->read("n_radii", k.n_radii);
    s->read("n_angles", k.n_angles);
    s->read("y_max_factor", k.y_max_factor);
    s->read("a_fraction", k.a_fraction);
    s->read("hessian_samples", k.hessian_samples);
    s->read("hessian_tolerance", k.hessian_tolerance);
    s->read("alpha_scale", k.alpha_scale);
    s->read("cone_tolerance", k.cone_tolerance);
    s->read("c_tolerance", k.c_tolerance);
    s->require(k.r_max_factor > 1.0, "r_max_factor", "must exceed 1");
    s->require(k.n_radii >= 1, "n_radii", "must be >= 1");
    s->require(k.n_angles >= 1, "n_angles", "must be >= 1");
    s->require(k.y_max_factor >= 4.0, "y_max_factor", "must be >= 4");
    s->require(k.hessian_samples >= 0, "hessian_samples", "must be >= 0");
    s->require(k.alpha_scale > 0.0, "alpha_scale", "must be positive");
  }
  if (auto s = top.child("data", {"center", "width", "amplitude", "mode", "angular_mode", "phase"})) {
    read_bump(*s, c.data);
  }
  if (auto s = top.child("grid", {"n_cells", "rho_max", "n_r", "n_theta", "r_max", "spacing", "cfl"})) {
    auto& g = c.grid;
    s->read("n_cells", g.n_cells);
    s->read("rho_max", g.rho_max);
    s->read("n_r", g.n_r);
    s->read("n_theta", g.n_theta);
    s->read("r_max", g.r_max);
    s->read("cfl", g.cfl);
    std::string spacing = g.spacing == planar::RadialSpacing::uniform_rho ? "rho" : "r";
    s->read("spacing", spacing);
    if (spacing == "rho") g.spacing = planar::RadialSpacing::uniform_rho;
    else if (spacing == "r") g.spacing = planar::RadialSpacing::uniform_r;
    else s->fail("spacing", "expected rho or r");
    s->require(g.n_cells > 10, "n_cells", "must exceed 10");
    s->require(g.n_r >= 2, "n_r", "must be >= 2");
    s->require(g.n_theta >= 4, "n_theta", "must be >= 4");
    s->require(g.cfl > 0.0 && g.cfl <= 0.9, "cfl", "must lie in (0, 0.9]");
  }
  if (auto s = top.child("observation", {"a", "T", "sample_every", "snapshot_times"})) {
    auto& o = c.observation;
    if (s->has("a") && s->raw("a").IsScalar()) {
      double a = 0.0;
      s->read("a", a);
      o.a = {a};
    } else {
      s->read("a", o.a);
    }
    s->read("T", o.T);
    s->read("sample_every", o.sample_every);
    s->read("snapshot_times", o.snapshot_times);
    s->require(!o.a.empty(), "a", "needs at least one radius");
    s->require(o.T > 0.0, "T", "must be positive");
    s->require(o.sample_every >= 1, "sample_every", "must be >= 1");
    for (double a : o.a) s->require(a > c.metric.r0, "a", "every a must exceed r0");
    for (double t : o.snapshot_times) s->require(t >= 0.0 && t <= o.T, "snapshot_times", "must lie in [0, T]");
  }
  if (auto s = top.child("analysis", {"extinction_threshold", "extinction_min_samples", "residual_ratio",
                                      "slope_tolerance", "sub_windows", "window_offset",
                                      "window_end_fraction", "window", "min_decades", "r2_threshold"})) {
    read_analysis(*s, c.analysis);
  }
  if (auto s = top.child("invariants", {"energy_drift", "front_mass", "weighted_step", "linear_weight",
                                        "planar_energy_drift", "planar_front_mass"})) {
    s->read("planar_energy_drift", c.invariants.planar_energy_drift);
    s->read("planar_front_mass", c.invariants.planar_front_mass);
    s->read("energy_drift", c.invariants.energy_drift);
    s->read("front_mass", c.invariants.front_mass);
    s->read("weighted_step", c.invariants.weighted_step);
    s->read("linear_weight", c.invariants.linear_weight);
  }
  if (auto s = top.child("output", {"dir", "svg"})) {
    s->read("dir", c.output.dir);
    s->read("svg", c.output.svg);
  }
  if (auto s = top.child("sweep", {"axis", "values"})) {
    SweepConfig sw;
    s->read("axis", sw.axis);
    s->read("values", sw.values);
    s->require(sw.axis == "m" || sw.axis == "n", "axis", "expected m or n");
    s->require(!sw.values.empty(), "values", "needs at least one value");
    c.sweep = sw;
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::json to_json(const ExperimentConfig& c) {
  using nlohmann::json;
  json j;
  j["name"] = c.name;
  j["seed"] = c.seed;
  json m;
  m["variant"] = std::string(metric::to_string(c.metric.variant));
  m["n"] = c.metric.n;
  m["m"] = c.metric.m;
  m["r0"] = c.metric.r0;
  switch (c.metric.alpha.kind) {
    case AlphaKind::none: m["alpha"] = {{"type", "none"}}; break;
    case AlphaKind::coth: m["alpha"] = {{"type", "coth"}, {"delta", c.metric.alpha.delta}}; break;
    case AlphaKind::power: m["alpha"] = {{"type", "power"}, {"m1", c.metric.alpha.m1}}; break;
  }
  m["q"] = c.metric.q;
  j["metric"] = m;
  const auto& k = c.checks;
  j["checks"] = {{"r_max_factor", k.r_max_factor}, {"n_radii", k.n_radii}, {"n_angles", k.n_angles},
                 {"y_max_factor", k.y_max_factor}, {"a_fraction", k.a_fraction},
                 {"hessian_samples", k.hessian_samples}, {"hessian_tolerance", k.hessian_tolerance},
                 {"alpha_scale", k.alpha_scale}, {"cone_tolerance", k.cone_tolerance},
                 {"c_tolerance", k.c_tolerance}};
  const auto& d = c.data;
  j["data"] = {{"center", d.bump.center}, {"width", d.bump.width}, {"amplitude", d.bump.amplitude},
               {"mode", d.bump.mode == radial::BumpMode::displacement ? "displacement" : "velocity"},
               {"angular_mode", d.angular_mode}, {"phase", d.phase}};
  const auto& g = c.grid;
  j["grid"] = {{"n_cells", g.n_cells}, {"n_r", g.n_r}, {"n_theta", g.n_theta}, {"cfl", g.cfl},
               {"spacing", g.spacing == planar::RadialSpacing::uniform_rho ? "rho" : "r"}};
  j["grid"]["rho_max"] = g.rho_max ? json(*g.rho_max) : json("auto");
  j["grid"]["r_max"] = g.r_max ? json(*g.r_max) : json("auto");
  const auto& o = c.observation;
  j["observation"] = {{"a", o.a}, {"T", o.T}, {"sample_every", o.sample_every},
                      {"snapshot_times", o.snapshot_times}};
  const auto& a = c.analysis;
  j["analysis"] = {{"extinction_threshold", a.extinction_threshold},
                   {"extinction_min_samples", a.extinction_min_samples},
                   {"residual_ratio", a.residual_ratio}, {"slope_tolerance", a.slope_tolerance},
                   {"sub_windows", a.sub_windows}, {"window_offset", a.window_offset},
                   {"window_end_fraction", a.window_end_fraction}, {"min_decades", a.min_decades},
                   {"r2_threshold", a.r2_threshold}};
  j["analysis"]["window"] = a.window ? json::array({a.window->t1, a.window->t2}) : json("auto");
  const auto& inv = c.invariants;
  j["invariants"] = {{"energy_drift", inv.energy_drift}, {"front_mass", inv.front_mass},
                     {"weighted_step", inv.weighted_step}, {"linear_weight", inv.linear_weight},
                     {"planar_energy_drift", inv.planar_energy_drift},
                     {"planar_front_mass", inv.planar_front_mass}};
  j["output"] = {{"dir", c.output.dir}, {"svg", c.output.svg}};
  if (c.sweep) j["sweep"] = {{"axis", c.sweep->axis}, {"values", c.sweep->values}};
  return j;
}

std::string config_hash(const ExperimentConfig& c) {
  const std::string text = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

metric::AlphaFunction build_alpha(const MetricConfig& m, double scale) {
  metric::AlphaFunction base;
  switch (m.alpha.kind) {
    case AlphaKind::none: return {};
    case AlphaKind::coth: base = metric::alpha_coth(m.alpha.delta, m.m); break;
    case AlphaKind::power: base = metric::alpha_power(m.alpha.m1, m.m); break;
  }
  if (scale == 1.0) return base;
  return [base, scale](double r) { return scale * base(r); };
}

metric::CoefficientField build_field(const MetricConfig& m) {
  metric::ExampleParams p;
  p.n = m.n;
  p.r0 = m.r0;
  p.m = m.m;
  p.alpha = build_alpha(m);
  metric::Matrix q = metric::Matrix::Identity(m.n, m.n);
  if (!m.q.empty()) {
    for (int i = 0; i < m.n; ++i) {
      for (int j = 0; j < m.n; ++j) q(i, j) = m.q[i][j];
    }
  }
  p.q = metric::constant_matrix(q);
  try {
    return metric::build_example_metric(m.variant, p);
  } catch (const ParameterError& e) {
    throw ConfigError("metric", 0, e.what());
  }
}

void validate_radial(const ExperimentConfig& c) {
  const double rho_min = std::pow(c.metric.r0, c.metric.m);
  const auto& b = c.data.bump;
  if (b.lo() <= rho_min) throw ConfigError("data.center", c.line_of("data.center"), "data support must stay clear of the obstacle (center - width > r0^m)");
  const double T = c.observation.T;
  const double rho_max = c.grid.rho_max ? *c.grid.rho_max : radial::sized_rho_max(rho_min, b.hi(), T, c.grid.n_cells);
  const double h = (rho_max - rho_min) / c.grid.n_cells;
  if (rho_max < b.hi() + T + 10.0 * h * (1.0 - 1e-9)) {
    throw ConfigError("grid.rho_max", c.line_of("grid.rho_max"), "too small for T: the front would reach the outer boundary");
  }
  for (double a : c.observation.a) {
    if (std::pow(a, c.metric.m) > rho_max) throw ConfigError("observation.a", c.line_of("observation.a"), "a^m exceeds the radial grid");
  }
}

void validate_planar(const ExperimentConfig& c) {
  if (c.metric.n != 2) throw ConfigError("metric.n", c.line_of("metric.n"), "the planar solver needs n = 2");
  const double m = c.metric.m;
  const double rho_min = std::pow(c.metric.r0, m);
  const auto& b = c.data.bump;
  if (b.lo() <= rho_min) throw ConfigError("data.center", c.line_of("data.center"), "data support must stay clear of the obstacle (center - width > r0^m)");
  if (c.grid.r_max) {
    const double need = std::pow(b.hi() + c.observation.T, 1.0 / m);
    if (*c.grid.r_max <= need) throw ConfigError("grid.r_max", c.line_of("grid.r_max"), "too small for T: the front would reach the outer boundary");
  }
  for (double a : c.observation.a) {
    if (c.grid.r_max && a > *c.grid.r_max) throw ConfigError("observation.a", c.line_of("observation.a"), "a exceeds r_max");
  }
}

}  // namespace conedecay::experiment
