#include "wpflow/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace wpflow {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t = {
      // functions
      {"circle_fourier", 1e-12},
      {"circle_cross", 1e-3},
      {"band_limited_cross", 1e-3},
      {"line_closed_form", 1e-5},
      {"dilation", 1e-2},
      {"bmo_homogeneity", 1e-12},
      {"bmo_monotone", 1e-14},
      {"jn_stability", 0.25},
      {"h32_closed_form", 1e-10},
      {"cayley_round_trip", 1e-6},
      // mollifier
      {"kernel_moments", 1e-10},
      {"mollifier_rate", 0.1},
      {"comparability", 1.5},
      {"oscillation_constant", 2.0},
      // semmes
      {"rho_identity", 1e-8},
      {"kernel_fd", 1e-4},
      {"energy_exponent", 0.1},
      {"sup_mu", 1.0},
      {"pointwise_stability", 0.25},
      {"fubini", 1e-2},
      // flow
      {"flow_closed_form", 1e-6},
      {"self_convergence", 4.0},
      {"semigroup", 1e-10},
      {"monotone", 1e-12},
      {"normalization", 1e-12},
      {"logderiv_line", 1e-4},
      {"logderiv_circle", 1e-3},
      {"conjugation", 1e-4},
      {"pivot", 1e-4},
      {"smoothness_ratio", 0.1},
      // wpmap
      {"psi_endpoints", 1e-12},
      {"quotient", 1e-12},
      {"dpsi_linearity", 1e-12},
      {"richardson", 0.1},
      {"round_trip", 1e-6},
      {"intertwining", 1e-4},
      {"interpolation", 1e-10},
      {"pullback_affine", 1e-2},
      {"pullback_stability", 0.1},
      // reich
      {"dbar_identity", 1e-3},
      {"dbar_order", 0.5},
      {"exact_zero", 1e-10},
      {"energy_chain", 9.5},
      {"a3_representation", 2e-2},
      {"golden_A", 1e-6},
      {"boundary_rate", 0.25},
      {"dirichlet", 3e-2},
      {"dirichlet_ratio", 1.0},
      {"reproducing", 1e-2},
      {"transfer", 1e-3},
  };
  return t;
}

double ConfigSpec::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it != tolerances.end()) return it->second;
  const auto& d = default_tolerances();
  const auto jt = d.find(name);
  if (jt == d.end()) fail(ErrorKind::invalid_input, "unknown tolerance \"" + name + "\"");
  return jt->second;
}

LiteralOptions ConfigSpec::literal_options() const {
  LiteralOptions o;
  o.half_width = line_half_width;
  o.step = line_step;
  o.circle_samples = circle_samples;
  return o;
}

ConfigSpec default_config() {
  ConfigSpec c;
  c.tolerances = default_tolerances();
  return c;
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::parse, where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail(ErrorKind::parse, where + ": unknown key \"" + k + "\"");
  }
}

double positive(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(ErrorKind::parse, where + "." + key + ": expected a number");
  const double v = j.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::invalid_input, where + "." + key + " must be positive");
  return v;
}

std::size_t count(const json& j, const std::string& key, std::size_t fallback, const std::string& where) {
  const double v = positive(j, key, static_cast<double>(fallback), where);
  if (v != std::floor(v)) fail(ErrorKind::invalid_input, where + "." + key + " must be an integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

ConfigSpec config_from_json(const json& j, std::vector<std::string>* warnings) {
  ConfigSpec c = default_config();
  check_keys(j, {"line", "circle", "grid", "flow", "reich", "smallness_threshold", "suite", "workers", "tolerances"},
             "config");
  if (j.contains("line")) {
    const auto& l = j.at("line");
    check_keys(l, {"half_width", "step", "diag_cutoff"}, "config.line");
    c.line_half_width = positive(l, "half_width", c.line_half_width, "config.line");
    c.line_step = positive(l, "step", c.line_step, "config.line");
    c.diag_cutoff = positive(l, "diag_cutoff", c.line_step, "config.line");
  }
  if (j.contains("circle")) {
    const auto& l = j.at("circle");
    check_keys(l, {"samples", "bmo_depth"}, "config.circle");
    c.circle_samples = count(l, "samples", c.circle_samples, "config.circle");
    c.bmo_depth = static_cast<int>(count(l, "bmo_depth", static_cast<std::size_t>(c.bmo_depth), "config.circle"));
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    check_keys(g, {"half_width", "y_min", "y_max", "x_cells", "y_nodes"}, "config.grid");
    c.grid.half_width = positive(g, "half_width", c.grid.half_width, "config.grid");
    c.grid.y_min = positive(g, "y_min", c.grid.y_min, "config.grid");
    c.grid.y_max = positive(g, "y_max", c.grid.y_max, "config.grid");
    c.grid.x_cells = count(g, "x_cells", c.grid.x_cells, "config.grid");
    c.grid.y_nodes = count(g, "y_nodes", c.grid.y_nodes, "config.grid");
    if (!(c.grid.y_max > c.grid.y_min)) fail(ErrorKind::invalid_input, "config.grid: y_max must exceed y_min");
  }
  if (j.contains("flow")) {
    const auto& f = j.at("flow");
    check_keys(f, {"steps", "particles"}, "config.flow");
    c.flow_steps = count(f, "steps", c.flow_steps, "config.flow");
    c.flow_particles = count(f, "particles", c.flow_particles, "config.flow");
  }
  if (j.contains("reich")) {
    const auto& r = j.at("reich");
    check_keys(r, {"boundary_step"}, "config.reich");
    c.boundary_step = positive(r, "boundary_step", c.boundary_step, "config.reich");
  }
  c.smallness_threshold = positive(j, "smallness_threshold", c.smallness_threshold, "config");
  if (j.contains("suite")) {
    if (!j.at("suite").is_string()) fail(ErrorKind::parse, "config.suite: expected a string");
    c.suite = j.at("suite").get<std::string>();
  }
  if (j.contains("workers")) {
    if (!j.at("workers").is_number_unsigned()) fail(ErrorKind::parse, "config.workers: expected a non-negative integer");
    c.workers = j.at("workers").get<unsigned>();
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) fail(ErrorKind::parse, "config.tolerances: expected an object");
    for (const auto& [k, v] : t.items()) {
      if (!default_tolerances().count(k)) fail(ErrorKind::parse, "config.tolerances: unknown tolerance \"" + k + "\"");
      if (!v.is_number()) fail(ErrorKind::parse, "config.tolerances." + k + ": expected a number");
      const double d = v.get<double>();
      if (!(d >= 0.0) || !std::isfinite(d)) fail(ErrorKind::invalid_input, "config.tolerances." + k + " must be finite and >= 0");
      if (d < std::numeric_limits<double>::epsilon() && warnings) {
        warnings->push_back("tolerance " + k + " is below machine epsilon; its rows can only pass on exact results");
      }
      c.tolerances[k] = d;
    }
  }
  return c;
}

ConfigSpec load_config(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_input, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(parse_json_text(ss.str(), path), warnings);
}

json config_to_json(const ConfigSpec& c) {
  json j;
  j["line"] = {{"half_width", c.line_half_width}, {"step", c.line_step}, {"diag_cutoff", c.diag_cutoff}};
  j["circle"] = {{"samples", c.circle_samples}, {"bmo_depth", c.bmo_depth}};
  j["grid"] = {{"half_width", c.grid.half_width}, {"y_min", c.grid.y_min}, {"y_max", c.grid.y_max},
               {"x_cells", c.grid.x_cells}, {"y_nodes", c.grid.y_nodes}};
  j["flow"] = {{"steps", c.flow_steps}, {"particles", c.flow_particles}};
  j["reich"] = {{"boundary_step", c.boundary_step}};
  j["smallness_threshold"] = c.smallness_threshold;
  j["suite"] = c.suite;
  j["workers"] = c.workers;
  json t = json::object();
  for (const auto& [k, v] : default_tolerances()) t[k] = c.tolerance(k);
  j["tolerances"] = t;
  return j;
}

std::string config_hash(const ConfigSpec& c) {
  json j = config_to_json(c);
  // Worker count does not affect results.
  j.erase("workers");
  const std::string s = j.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace wpflow
