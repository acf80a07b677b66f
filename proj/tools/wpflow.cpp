// wpflow command-line driver.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wpflow/config.hpp"
#include "wpflow/flow.hpp"
#include "wpflow/literal.hpp"
#include "wpflow/manifest.hpp"
#include "wpflow/reich.hpp"
#include "wpflow/semmes.hpp"
#include "wpflow/verify.hpp"
#include "wpflow/wpmap.hpp"

using namespace wpflow;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir = "wpflow-out";
  std::string format = "json";
};

// A spec argument is a file path, "-" for stdin, or inline JSON.
json read_spec(const std::string& arg) {
  if (arg == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return parse_json_text(ss.str(), "<stdin>");
  }
  if (fs::exists(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), arg);
  }
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json_text(arg, "<inline>");
  fail(ErrorKind::invalid_input, "spec \"" + arg + "\" is neither a readable file nor inline JSON");
}

std::string label_of(const json& spec) {
  if (spec.is_object() && spec.value("type", "") == "builtin") return "builtin " + spec.value("name", "?");
  std::string s = spec.dump();
  if (s.size() > 80) s = s.substr(0, 77) + "...";
  return s;
}

ConfigSpec load(const Common& c, RunManifest* m) {
  std::vector<std::string> warnings;
  ConfigSpec cfg = c.config_path.empty() ? default_config() : load_config(c.config_path, &warnings);
  if (cfg.workers > 0) set_worker_count(cfg.workers);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  if (m) {
    *m = start_manifest(cfg);
    m->warnings = warnings;
  }
  return cfg;
}

void print_rows(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows) {
    std::printf("%-4s %-9s %-50s %-40s value=%-13.6g residual=%-11.3e tol=%.3e\n", r.pass ? "PASS" : "FAIL",
                r.suite.c_str(), r.operation.c_str(), r.input.c_str(), r.value, r.residual, r.tolerance);
  }
}

int finish(RunManifest& m, const Common& c) {
  const std::string path = write_manifest(m, c.out_dir, c.format);
  print_rows(m.rows);
  for (const auto& w : m.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "manifest: " << path << "\n";
  if (!m.all_pass()) {
    std::cout << "failing rows:\n";
    for (const auto& r : m.rows) {
      if (!r.pass) std::cout << "  " << r.suite << " / " << r.operation << " (" << r.input << "): residual " << r.residual
                             << " > tolerance " << r.tolerance << "\n";
    }
    return 1;
  }
  return 0;
}

std::ofstream open_out(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  std::ofstream out(fs::path(c.out_dir) / name);
  if (!out) fail(ErrorKind::invalid_input, "cannot write " + (fs::path(c.out_dir) / name).string());
  return out;
}

// ---------------------------------------------------------------------------

int cmd_norm(const Common& c, const std::string& spec_arg, const std::string& which) {
  RunManifest m;
  const ConfigSpec cfg = load(c, &m);
  const json spec = read_spec(spec_arg);
  const auto f = parse_function(spec, cfg.literal_options());
  SeminormReport r;
  if (which == "h12") {
    r = f.circle ? h12_circle(*f.circle) : h12_line(*f.line, cfg.diag_cutoff);
  } else if (which == "h32") {
    r = f.circle ? h32_norm(*f.circle) : h32_norm(*f.line);
  } else {
    r = f.circle ? bmo_norm(*f.circle, cfg.bmo_depth) : bmo_norm(*f.line, cfg.bmo_depth);
  }
  std::string op = which + " (" + to_string(r.method) + ")";
  for (const auto& [k, v] : r.metadata) {
    std::ostringstream os;
    os << " " << k << "=" << v;
    op += os.str();
  }
  m.rows.push_back(make_row("norm", op, label_of(spec), r.value, 0.0, 0.0));
  return finish(m, c);
}

int cmd_flow(const Common& c, const std::string& spec_arg, std::size_t knots, std::size_t steps) {
  RunManifest m;
  const ConfigSpec cfg = load(c, &m);
  const json spec = read_spec(spec_arg);
  const auto field = parse_field(spec, cfg.literal_options());
  const std::size_t n = steps ? steps : cfg.flow_steps;
  if (knots == 0 || n % knots != 0) {
    fail(ErrorKind::step_size, "steps (" + std::to_string(n) + ") must be a multiple of the knot count (" +
                                   std::to_string(knots) + ")");
  }
  std::vector<double> outs;
  for (std::size_t k = 1; k <= knots; ++k) outs.push_back(field.t_end() * static_cast<double>(k) / static_cast<double>(knots));
  const auto particles = default_particles(field.domain(), cfg.flow_particles);
  FlowCurve curve;
  try {
    curve = integrate_flow(field, n, particles, outs);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(e.what()) + " (try more steps, a shorter t_end or a smaller field)");
  }
  {
    auto out = open_out(c, "flow.csv");
    write_flow_csv(curve, out);
  }
  const std::string label = label_of(spec);
  if (curve.times.size() >= 3) {
    const auto r = check_logderiv_ode(curve, field);
    m.rows.push_back(make_row("flow", "d/dt log h' vs field derivative", label, r.mean, r.sup,
                              cfg.tolerance(field.domain() == Domain::line ? "logderiv_line" : "logderiv_circle")));
  }
  const json* inner = spec.contains("field") ? &spec.at("field") : nullptr;
  if (!inner && spec.contains("fields") && spec.at("fields").is_array() && !spec.at("fields").empty()) {
    inner = &spec.at("fields").front();
  }
  if (inner && inner->value("type", "") == "builtin" && inner->value("name", "") == "logistic" &&
      (!inner->contains("params") || inner->at("params").empty())) {
    bool same = true;
    if (spec.contains("fields")) {
      for (const auto& f : spec.at("fields")) same = same && f == *inner;
    }
    if (same) {
      const auto& snap = curve.snapshots.back();
      double err = 0.0;
      const double e = std::exp(curve.times.back());
      for (std::size_t i = 0; i < particles.size(); ++i) {
        const double x = particles[i];
        err = std::max(err, std::abs(snap.ys()[i] - x * e / (1.0 + x * (e - 1.0))));
      }
      m.rows.push_back(make_row("flow", "logistic closed form at t_end", label, err, err, cfg.tolerance("flow_closed_form")));
    }
  }
  std::cout << "flow csv: " << (fs::path(c.out_dir) / "flow.csv").string() << "\n";
  return finish(m, c);
}

int cmd_extend(const Common& c, const std::string& spec_arg) {
  RunManifest m;
  const ConfigSpec cfg = load(c, &m);
  const json spec = read_spec(spec_arg);
  const auto f = parse_function(spec, cfg.literal_options());
  if (!f.line) fail(ErrorKind::invalid_input, "extend needs a line function u (the boundary map is the primitive of e^u)");
  if (auto w = smallness_warning(*f.line, cfg.smallness_threshold)) m.warnings.push_back(*w);
  const HalfPlaneGrid grid(cfg.grid);
  const auto rho = rho_extension(*f.line, grid);
  const auto mu = beltrami(*f.line, grid);
  const auto e = wp_energy(mu, grid);
  {
    auto out = open_out(c, "rho.csv");
    write_field_csv(rho, grid, out);
  }
  {
    auto out = open_out(c, "mu.csv");
    write_field_csv(mu, grid, out);
  }
  {
    auto out = open_out(c, "mu.dat");
    write_field_matrix(mu, grid, out);
  }
  const std::string label = label_of(spec);
  m.rows.push_back(make_row("semmes", "wp_energy", label, e.value, 0.0, 0.0));
  m.rows.push_back(make_row("semmes", "sup |mu| < 1", label, e.sup_mu, e.sup_mu, cfg.tolerance("sup_mu")));
  return finish(m, c);
}

int cmd_dpsi(const Common& c, const std::string& spec_arg, const std::string& dir_arg) {
  RunManifest m;
  const ConfigSpec cfg = load(c, &m);
  const json us = read_spec(spec_arg);
  const json vs = read_spec(dir_arg);
  const auto uf = parse_function(us, cfg.literal_options());
  const auto vf = parse_function(vs, cfg.literal_options());
  if (!uf.line || !vf.line) fail(ErrorKind::invalid_input, "dpsi-check needs line functions");
  if (uf.line->xs() != vf.line->xs()) fail(ErrorKind::invalid_input, "u and v must share a grid");
  const auto u = SobolevClass::canonical(*uf.line);
  const auto v = SobolevClass::canonical(*vf.line);
  const auto h0 = psi(u);
  const auto dv = d_psi(u, v);
  const std::string label = "u=" + label_of(us) + ", v=" + label_of(vs);
  double errs[2];
  const double eps[2] = {0.05, 0.025};
  for (int k = 0; k < 2; ++k) {
    std::vector<double> vals(u.rep.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = u.rep.values()[i] + eps[k] * v.rep.values()[i];
    const auto pe = psi(SobolevClass{LineFunction(u.rep.xs(), vals), false});
    double mx = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) mx = std::max(mx, std::abs(pe.ys()[i] - h0.ys()[i] - eps[k] * dv.rep.values()[i]));
    errs[k] = mx;
  }
  const double p = std::log(errs[0] / errs[1]) / std::log(2.0);
  m.rows.push_back(make_row("wpmap", "d_psi Richardson exponent", label, p, std::abs(p - 2.0), cfg.tolerance("richardson")));
  const auto back = d_psi_inv(u, dv);
  double r = 0.0;
  for (std::size_t i = 0; i < back.rep.size(); ++i) r = std::max(r, std::abs(back.rep.values()[i] - v.rep.values()[i]));
  m.rows.push_back(make_row("wpmap", "d_psi_inv(d_psi(v)) = v", label, r, r, cfg.tolerance("round_trip")));
  {
    auto out = open_out(c, "dpsi.csv");
    out << "x,psi_u,d_psi_v\n";
    char buf[96];
    for (std::size_t i = 0; i < dv.rep.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", dv.rep.xs()[i], h0.ys()[i], dv.rep.values()[i]);
      out << buf;
    }
  }
  return finish(m, c);
}

int cmd_reich(const Common& c, const std::string& spec_arg) {
  RunManifest m;
  const ConfigSpec cfg = load(c, &m);
  const json spec = read_spec(spec_arg);
  LiteralOptions fine = cfg.literal_options();
  fine.step = cfg.boundary_step;
  const auto pf = parse_function(spec, fine);
  if (!pf.line) fail(ErrorKind::invalid_input, "reich-check needs a line function");
  const auto f = pf.line->meta().tail == Tail::zero ? BoundaryFunction(0.0, 0.0, *pf.line)
                                                    : BoundaryFunction::windowed(*pf.line, cfg.boundary_step);
  const HalfPlaneGrid grid(cfg.grid);
  const auto H = reich_H(f, grid);
  const auto A3 = reich_A3_field(f, grid);
  const auto r = check_dbar_identity(H, A3, grid);
  const double h = grid.hx();
  const std::string label = label_of(spec);
  m.rows.push_back(make_row("reich", "dbar Hf + y^2 conj(Af''')", label, r.mean, r.sup,
                            std::max(cfg.tolerance("dbar_identity"), 20.0 * h * h)));
  const double q = qd_energy(H, grid);
  const double a = a3_energy(A3, grid);
  m.rows.push_back(make_row("reich", "int |Af'''|^2 y^2 / qd energy", label, a, q > 0.0 ? a / q : 0.0,
                            cfg.tolerance("energy_chain")));
  {
    auto out = open_out(c, "reich_H.csv");
    write_field_csv(H.values, grid, out);
  }
  {
    auto out = open_out(c, "reich_dbar_H.dat");
    write_field_matrix(H.dbar, grid, out);
  }
  return finish(m, c);
}

int cmd_verify(const Common& c, std::string suite) {
  RunManifest m;
  const ConfigSpec cfg = load(c, &m);
  if (suite.empty()) suite = cfg.suite;
  auto r = run_suite(suite, cfg);
  m.rows = std::move(r.rows);
  m.warnings.insert(m.warnings.end(), r.warnings.begin(), r.warnings.end());
  return finish(m, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wpflow: Weil-Petersson flows, extensions and deformation operators"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON config file (defaults fill every missing key)");
    sub->add_option("--out", common.out_dir, "output directory for the manifest and data files")->capture_default_str();
    sub->add_option("--format", common.format, "manifest format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };

  std::string spec, which = "h12", direction, suite;
  std::size_t knots = 20, steps = 0;

  auto* norm = app.add_subcommand("norm", "seminorm of a function literal");
  add_common(norm);
  norm->add_option("--spec", spec, "function literal: file, '-' or inline JSON")->required();
  norm->add_option("--which", which, "h12, h32 or bmo")->check(CLI::IsMember({"h12", "h32", "bmo"}))->capture_default_str();

  auto* flow = app.add_subcommand("flow", "integrate a time-dependent field");
  add_common(flow);
  flow->add_option("--spec", spec, "field literal")->required();
  flow->add_option("--knots", knots, "number of equally spaced output times")->capture_default_str();
  flow->add_option("--steps", steps, "RK4 steps (default from config)");

  auto* extend = app.add_subcommand("extend", "extension, Beltrami field and energy for u");
  add_common(extend);
  extend->add_option("--spec", spec, "line function literal u")->required();

  auto* dpsi = app.add_subcommand("dpsi-check", "differential of Psi: Richardson exponent and round trip");
  add_common(dpsi);
  dpsi->add_option("--spec", spec, "line function literal u")->required();
  direction = R"({"type":"builtin","name":"sine_window"})";
  dpsi->add_option("--direction", direction, "line function literal v")->capture_default_str();

  auto* reich = app.add_subcommand("reich-check", "deformation operators for a boundary function");
  add_common(reich);
  reich->add_option("--spec", spec, "line function literal f")->required();

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--suite", suite, "functions, mollifier, semmes, flow, wpmap, reich or all (default from config)")
      ->check(CLI::IsMember({"functions", "mollifier", "semmes", "flow", "wpmap", "reich", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*norm) return cmd_norm(common, spec, which);
    if (*flow) return cmd_flow(common, spec, knots, steps);
    if (*extend) return cmd_extend(common, spec);
    if (*dpsi) return cmd_dpsi(common, spec, direction);
    if (*reich) return cmd_reich(common, spec);
    if (*verify) return cmd_verify(common, suite);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
