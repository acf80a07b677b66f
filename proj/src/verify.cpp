#include "wpflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wpflow/flow.hpp"
#include "wpflow/functions.hpp"
#include "wpflow/literal.hpp"
#include "wpflow/mollifier.hpp"
#include "wpflow/reich.hpp"
#include "wpflow/semmes.hpp"
#include "wpflow/wpmap.hpp"

namespace wpflow {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Suite {
  std::string name;
  const ConfigSpec& cfg;
  SuiteResult out;

  void row(const std::string& op, const std::string& input, double value, double residual,
           const std::string& tol, int criterion = 0) {
    out.rows.push_back(make_row(name, op, input, value, residual, cfg.tolerance(tol), criterion));
  }
  void row_tol(const std::string& op, const std::string& input, double value, double residual,
               double tol, int criterion = 0) {
    out.rows.push_back(make_row(name, op, input, value, residual, tol, criterion));
  }

  LineFunction line(const std::string& builtin, json params = json::object()) const {
    return *builtin_function(builtin, params, cfg.literal_options()).line;
  }
  LineFunction line_fn(const std::function<double(double)>& f, Tail tail = Tail::zero) const {
    LineMeta meta;
    meta.tail = tail;
    return LineFunction::sample(f, cfg.line_half_width, cfg.line_step, meta);
  }
  CircleFunction circle_fn(const std::function<double(double)>& f, std::size_t m) const {
    return CircleFunction::sample([&](double t) { return cplx(f(t), 0.0); }, m, true);
  }
};

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------

void functions_suite(Suite& s) {
  const auto& cfg = s.cfg;
  {
    const auto c = s.circle_fn([](double t) { return std::cos(t); }, cfg.circle_samples);
    const double f = h12_circle(c).value;
    const double g = h12_circle(c, SeminormMethod::gagliardo).value;
    s.row("h12_circle fourier", "builtin cos", f, std::abs(f - 0.5), "circle_fourier", 1);
    s.row("h12_circle gagliardo vs fourier", "builtin cos", g, rel(g, f), "circle_cross", 1);
  }
  {
    const auto c = s.circle_fn(
        [](double t) { return std::cos(t) + 0.5 * std::sin(2 * t) + 0.25 * std::cos(5 * t) + 0.1 * std::sin(8 * t); },
        512);
    const double f = h12_circle(c).value;
    const double g = h12_circle(c, SeminormMethod::gagliardo).value;
    s.row("h12_circle gagliardo vs fourier", "cos t + sin 2t/2 + cos 5t/4 + sin 8t/10, M=512", g, rel(g, f),
          "band_limited_cross");
  }
  const auto gauss = s.line("gauss_bump");
  const double hg = h12_line(gauss, cfg.diag_cutoff).value;
  s.row("h12_line closed form", "builtin gauss_bump", hg, rel(hg, 1.0 / (2.0 * kPi)), "line_closed_form");
  for (double lam : {0.5, 2.0}) {
    const auto d = s.line("gauss_bump", {{"width", 1.0 / lam}});
    const double hd = h12_line(d, cfg.diag_cutoff).value;
    s.row("h12_line dilation", "gauss_bump(lambda x), lambda=" + fmt(lam), hd, rel(hd, hg), "dilation");
  }
  {
    const double b = bmo_norm(gauss, cfg.bmo_depth).value;
    const double b3 = bmo_norm(gauss.scaled(3.0), cfg.bmo_depth).value;
    s.row("bmo_norm homogeneity", "3 * gauss_bump", b3, rel(b3, 3.0 * b), "bmo_homogeneity");
    double worst = 0.0, prev = 0.0;
    for (int d = 1; d <= cfg.bmo_depth; ++d) {
      const double v = bmo_norm(gauss, d).value;
      if (d > 1) worst = std::max(worst, prev - v);
      prev = v;
    }
    s.row("bmo_norm depth monotonicity", "gauss_bump, depth 1.." + std::to_string(cfg.bmo_depth), prev,
          std::max(0.0, worst), "bmo_monotone");
  }
  {
    std::vector<double> cs;
    for (double e : {0.0125, 0.025, 0.05, 0.1}) {
      cs.push_back(jn_moment(gauss.scaled(e), {-1.0, 1.0}, 1.0, MomentKind::exponential) / e);
    }
    const auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
    s.row("jn_moment exponential / eps stability", "eps*gauss_bump on [-1,1], eps=0.0125..0.1", *hi,
          *hi / *lo - 1.0, "jn_stability");
  }
  {
    const auto c = s.circle_fn([](double t) { return std::cos(t); }, cfg.circle_samples);
    const double v = h32_norm(c).value;
    s.row("h32_norm closed form", "builtin cos", v, std::abs(v - 0.5), "h32_closed_form");
  }
  {
    const auto g = s.circle_fn([](double t) { return 1.0 - std::cos(t) + 0.3 * std::sin(2 * t); }, cfg.circle_samples);
    const auto xs = uniform_nodes(-cfg.line_half_width, cfg.line_half_width,
                                  static_cast<std::size_t>(std::llround(2 * cfg.line_half_width / cfg.line_step)));
    const auto pulled = cayley_pull(g, PullMode::function, xs);
    const auto back = cayley_push(pulled, PullMode::function, g.size());
    double m = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k) {
      const double u = cayley_abscissa(g.angle(k));
      if (u < pulled.lo() || u > pulled.hi()) continue;
      m = std::max(m, std::abs(back.samples()[k] - g.samples()[k]));
    }
    s.row("cayley pull/push round trip", "1 - cos t + 0.3 sin 2t", m, m, "cayley_round_trip");
  }
}

// ---------------------------------------------------------------------------

void mollifier_suite(Suite& s) {
  const auto& cfg = s.cfg;
  const Mollifier phi = make_phi();
  const Mollifier psi = make_psi(phi);
  {
    const double r = std::max({std::abs(phi.moment(0) - 1.0), std::abs(phi.moment(1)), std::abs(psi.moment(0)),
                               std::abs(psi.moment(1) - 1.0)});
    s.row("kernel moments", "phi, psi", phi.moment(2).real(), r, "kernel_moments");
    const auto [alpha, beta] = derive_alpha_beta(phi, psi);
    const double rab = std::abs(alpha.moment(0)) + std::abs(beta.moment(0) - 1.0);
    s.row("alpha/beta masses", "alpha, beta", beta.moment(0).real(), rab, "kernel_moments");
  }
  const auto gauss = s.line("gauss_bump");
  {
    const double x = 0.3;
    std::vector<double> ys = {0.2, 0.1, 0.05}, errs;
    for (double y : ys) errs.push_back(std::abs(convolve_scaled(phi, y, gauss, x).real() - gauss(x)));
    const double p = loglog_slope(ys, errs);
    s.row("convolve_scaled convergence order", "gauss_bump at x=0.3, y=0.2,0.1,0.05", p, std::abs(p - 2.0),
          "mollifier_rate");
  }
  std::vector<double> xs, ys;
  for (int i = 0; i < 64; ++i) xs.push_back(-4.0 + 8.0 * i / 63.0);
  ys = log_nodes(cfg.grid.y_min, cfg.grid.y_max, 32);
  {
    const double b = bmo_norm(gauss, cfg.bmo_depth).value;
    const double eps = 0.1 / b;
    const auto u = gauss.scaled(eps);
    LineMeta meta;
    meta.tail = Tail::none;
    const auto eu = LineFunction::sample([&](double x) { return std::exp(u(x)); }, cfg.line_half_width, cfg.line_step, meta);
    double worst = 1.0;
    for (double y : ys) {
      const auto a = convolve_scaled(phi, y, eu, xs);
      const auto c = convolve_scaled(phi, y, u, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = std::abs(a[i]) / std::exp(c[i].real());
        worst = std::max({worst, r, 1.0 / r});
      }
    }
    s.row("comparability |phi_y*e^u| / e^(phi_y*u)", "eps*gauss_bump with bmo=0.1, 64x32 nodes", worst, worst,
          "comparability", 2);
  }
  for (const std::string name : {"gauss_bump", "sine_window", "triangle"}) {
    const auto u = s.line(name);
    const double b = bmo_norm(u, cfg.bmo_depth).value;
    double worst = 0.0;
    for (double y : ys) {
      const auto c = convolve_scaled(phi, y, u, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double m = interval_mean(u, {xs[i] - y, xs[i] + y});
        worst = std::max(worst, std::abs(c[i].real() - m) / b);
      }
    }
    s.row("|phi_y*u - u_I| / bmo", "builtin " + name + ", 64x32 nodes", worst, worst, "oscillation_constant");
  }
}

// ---------------------------------------------------------------------------

void semmes_suite(Suite& s) {
  const auto& cfg = s.cfg;
  const HalfPlaneGrid grid(cfg.grid);
  {
    const auto zero = s.line("zero");
    const auto rho = rho_extension(zero, grid);
    double m = 0.0;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      for (std::size_t i = 0; i < grid.nx(); ++i) m = std::max(m, std::abs(rho.at(i, j) - cplx(grid.x(i), grid.y(j))));
    }
    s.row("rho_extension identity", "builtin zero", m, m, "rho_identity");
  }
  const auto gauss = s.line("gauss_bump");
  {
    const auto u = gauss.scaled(0.1);
    if (auto w = smallness_warning(u, cfg.smallness_threshold)) s.out.warnings.push_back(*w);
    const auto wk = wirtinger(u, grid, WirtingerMethod::kernels);
    const auto wf = wirtinger(u, grid, WirtingerMethod::finite_difference);
    const double r = std::max(interior_sup_difference(wk.dbar, wf.dbar, grid), interior_sup_difference(wk.d, wf.d, grid));
    const double h = grid.hx();
    s.row_tol("wirtinger kernels vs finite differences", "0.1*gauss_bump", wk.dbar.sup_abs(), r,
              std::max(cfg.tolerance("kernel_fd"), 10.0 * h * h), 3);
  }
  const std::vector<double> eps = {0.025, 0.05, 0.1, 0.2};
  std::vector<double> energies;
  std::vector<ComplexGridField> mus;
  for (double e : eps) {
    const auto u = gauss.scaled(e);
    if (auto w = smallness_warning(u, cfg.smallness_threshold)) s.out.warnings.push_back(*w);
    auto mu = beltrami(u, grid);
    const auto rep = wp_energy(mu, grid);
    energies.push_back(rep.value);
    s.row("sup |mu|", fmt(e) + "*gauss_bump", rep.value, rep.sup_mu, "sup_mu", 4);
    mus.push_back(std::move(mu));
  }
  {
    const double p = loglog_slope(eps, energies);
    s.row("wp_energy exponent", "eps*gauss_bump, eps=0.025..0.2", p, std::abs(p - 2.0), "energy_exponent", 4);
  }
  {
    // measured constant in |mu|^2 <= C (1/y) int |u(x+t) - u(x)|^2 dt
    std::vector<double> cs;
    for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
      const auto u = gauss.scaled(eps[k]);
      double c = 0.0;
      for (std::size_t j = 0; j < grid.ny(); j += 4) {
        const double y = grid.y(j);
        if (y < 1.0 / 32.0 || y > 1.0) continue;
        for (std::size_t i = 0; i < grid.nx(); i += 4) {
          const double x = grid.x(i);
          if (std::abs(x) > 2.0) continue;
          const double osc = local_oscillation(u, x, y);
          if (osc < 1e-14) continue;
          c = std::max(c, std::norm(mus[k].at(i, j)) / osc);
        }
      }
      cs.push_back(c);
    }
    s.row("pointwise mu bound constant stability", "eps*gauss_bump, eps=0.05 vs 0.1", cs[0],
          std::abs(cs[0] / cs[1] - 1.0), "pointwise_stability");
  }
  for (const std::string name : {"gauss_bump", "sine_window"}) {
    const auto f = fubini_check(s.line(name), grid);
    s.row("fubini identity", "builtin " + name, f.lhs, rel(f.lhs, f.rhs), "fubini", 5);
  }
}

// ---------------------------------------------------------------------------

double logistic_exact(double x, double t) {
  const double e = std::exp(t);
  return x * e / (1.0 + x * (e - 1.0));
}

void flow_suite(Suite& s) {
  const auto& cfg = s.cfg;
  const auto omega = s.line("logistic");
  const auto field = TimeDependentField::autonomous(omega, 1.0);
  const auto particles = default_particles(Domain::line, cfg.flow_particles);
  auto closed_error = [&](std::size_t n) {
    const auto c = integrate_flow(field, n, particles, {1.0});
    double m = 0.0;
    for (std::size_t i = 0; i < particles.size(); ++i) {
      m = std::max(m, std::abs(c.snapshots.back().ys()[i] - logistic_exact(particles[i], 1.0)));
    }
    return m;
  };
  {
    const double e = closed_error(cfg.flow_steps);
    s.row("logistic flow vs closed form", "builtin logistic, t=1, steps=" + std::to_string(cfg.flow_steps), e, e,
          "flow_closed_form", 6);
    const double f = closed_error(10) / closed_error(20);
    s.row("self-convergence factor", "builtin logistic, steps 10 vs 20", f, std::abs(f - 16.0), "self_convergence", 6);
  }
  std::vector<double> outs;
  for (int k = 1; k <= 20; ++k) outs.push_back(0.05 * k);
  const auto curve = integrate_flow(field, cfg.flow_steps, particles, outs);
  {
    const auto half = integrate_flow(field, cfg.flow_steps / 2, particles, {0.5});
    const auto second = integrate_flow(field, cfg.flow_steps / 2, half.snapshots.back().ys(), {0.5});
    const double d = sup_diff(second.snapshots.back().ys(), curve.snapshots.back().ys());
    s.row("semigroup [0,1/2]+[1/2,1] vs [0,1]", "builtin logistic", d, d, "semigroup");
  }
  {
    double worst = -1.0, norm = 0.0;
    for (const auto& snap : curve.snapshots) {
      for (std::size_t i = 0; i + 1 < snap.ys().size(); ++i) worst = std::max(worst, snap.ys()[i] - snap.ys()[i + 1]);
      norm = std::max({norm, std::abs(snap.ys().front()), std::abs(snap.ys().back() - 1.0)});
    }
    s.row("snapshots strictly increasing", "builtin logistic", worst, worst < 0.0 ? 0.0 : 1.0, "monotone");
    s.row("h(t,0)=0 and h(t,1)=1", "builtin logistic", norm, norm, "normalization");
  }
  {
    const auto r = check_logderiv_ode(curve, field);
    s.row("d/dt log h' vs omega'(t,h)", "builtin logistic", r.mean, r.sup, "logderiv_line", 7);
  }
  const std::size_t m = 512;
  const auto circle_particles = default_particles(Domain::circle, cfg.flow_particles);
  {
    const auto a = s.circle_fn([](double t) { return std::sin(t); }, m);
    const auto cf = TimeDependentField::autonomous(a, 1.0);
    const auto cc = integrate_flow(cf, cfg.flow_steps, circle_particles, outs);
    const auto r = check_logderiv_ode(cc, cf);
    s.row("d/dt log g' vs a'(t,g) on the circle", "builtin sin", r.mean, r.sup, "logderiv_circle", 7);
    double inc = 0.0, worst = -1.0;
    for (const auto& snap : cc.snapshots) {
      inc = std::max(inc, std::abs(snap.ys().back() - snap.ys().front() - 2.0 * kPi));
      for (std::size_t i = 0; i + 1 < snap.ys().size(); ++i) worst = std::max(worst, snap.ys()[i] - snap.ys()[i + 1]);
    }
    s.row("circle snapshots: increasing, increment 2 pi", "builtin sin", inc, std::max(inc, worst < 0.0 ? 0.0 : 1.0),
          "monotone");
  }
  {
    const auto a = *builtin_function("normalized_sine", {{"epsilon", 0.5}, {"samples", m}}).circle;
    const auto nf = TimeDependentField::autonomous(a, 1.0, true);
    const auto lf = conjugate_circle_to_line(nf, cfg.line_half_width, cfg.line_step);
    const auto lc = integrate_flow(lf, cfg.flow_steps, particles, outs);
    const auto r = check_logderiv_ode(lc, lf);
    s.row("d/dt log h' vs omega'(t,h), conjugated circle field", "normalized_sine eps=0.5", r.mean, r.sup,
          "logderiv_circle", 7);
    const auto nc = integrate_flow(nf, cfg.flow_steps, circle_particles, outs);
    const auto hx = conjugate_snapshot(nc.snapshots.back(), particles);
    const double d = sup_diff(hx, lc.snapshots.back().ys());
    s.row("conjugated circle flow vs line flow", "normalized_sine eps=0.5, t=1", d, d, "conjugation");
  }
  {
    const auto logs = flow_log_derivative(curve);
    double worst = 0.0;
    int knots = 0;
    for (std::size_t k = 0; k < curve.times.size(); ++k) {
      const double t = curve.times[k];
      if (std::abs(t / 0.2 - std::round(t / 0.2)) > 1e-9 || t == 0.0) continue;
      const auto h = psi(SobolevClass{logs[k], false});
      worst = std::max(worst, sup_diff(h.ys(), curve.snapshots[k].ys()));
      ++knots;
    }
    s.row("h(t) = Psi(log h'(t))", "builtin logistic, " + std::to_string(knots) + " knots", worst, worst, "pivot", 8);
  }
  {
    const auto p = smoothness_probe(curve);
    double worst = 0.0;
    for (double r : p.ratios) worst = std::max(worst, std::abs(r - 1.0));
    s.row("smoothness probe quotient ratios", "builtin logistic", p.quotients.back(), worst, "smoothness_ratio");
  }
}

// ---------------------------------------------------------------------------

void wpmap_suite(Suite& s) {
  const auto& cfg = s.cfg;
  const auto u = SobolevClass::canonical(s.line("gauss_bump", {{"amplitude", 0.5}}));
  const auto v = SobolevClass::canonical(s.line("sine_window"));
  const auto h0 = psi(u);
  {
    double worst = std::max(std::abs(h0(0.0)), std::abs(h0(1.0) - 1.0));
    double mono = -1.0;
    for (std::size_t i = 0; i + 1 < h0.ys().size(); ++i) mono = std::max(mono, h0.ys()[i] - h0.ys()[i + 1]);
    s.row("Psi fixes 0 and 1", "0.5*gauss_bump", worst, worst, "psi_endpoints");
    s.row("Psi strictly increasing", "0.5*gauss_bump", mono, mono < 0.0 ? 0.0 : 1.0, "psi_endpoints");
  }
  {
    double worst = 0.0;
    for (double c : {-5.0, 2.5, 5.0}) {
      const auto hc = psi(SobolevClass{u.rep.plus_constant(c), false});
      worst = std::max(worst, sup_diff(hc.ys(), h0.ys()));
    }
    s.row("Psi(u + c) = Psi(u)", "0.5*gauss_bump, c=-5,2.5,5", worst, worst, "quotient");
  }
  const auto dv = d_psi(u, v);
  {
    const auto w = SobolevClass::canonical(s.line("triangle"));
    const double a = 0.7, b = -1.3;
    std::vector<double> comb(v.rep.size());
    for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = a * v.rep.values()[i] + b * w.rep.values()[i];
    const auto lhs = d_psi(u, SobolevClass{LineFunction(v.rep.xs(), comb), false});
    const auto dw = d_psi(u, w);
    double m = 0.0;
    for (std::size_t i = 0; i < comb.size(); ++i) {
      m = std::max(m, std::abs(lhs.rep.values()[i] - a * dv.rep.values()[i] - b * dw.rep.values()[i]));
    }
    s.row("d_psi linearity", "u=0.5*gauss_bump, v=sine_window, w=triangle", m, m, "dpsi_linearity");
  }
  {
    double errs[2];
    const double eps[2] = {0.05, 0.025};
    for (int k = 0; k < 2; ++k) {
      std::vector<double> vals(u.rep.size());
      for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = u.rep.values()[i] + eps[k] * v.rep.values()[i];
      const auto pe = psi(SobolevClass{LineFunction(u.rep.xs(), vals), false});
      double m = 0.0;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        m = std::max(m, std::abs(pe.ys()[i] - h0.ys()[i] - eps[k] * dv.rep.values()[i]));
      }
      errs[k] = m;
    }
    const double p = std::log(errs[0] / errs[1]) / std::log(2.0);
    s.row("d_psi Richardson exponent", "u=0.5*gauss_bump, v=sine_window, eps=0.05,0.025", p, std::abs(p - 2.0),
          "richardson", 9);
  }
  {
    const auto back = d_psi_inv(u, dv);
    const double r = sup_diff(back.rep.values(), v.rep.values());
    s.row("d_psi_inv(d_psi(v)) = v", "u=0.5*gauss_bump, v=sine_window", r, r, "round_trip", 9);
    LineMeta meta;
    meta.tail = Tail::none;
    const TangentVectorWP w{
        LineFunction::sample([](double x) { return x * (1.0 - x) * std::exp(-x * x); }, cfg.line_half_width,
                             cfg.line_step, meta,
                             [](double x) { return (1.0 - 2.0 * x - 2.0 * x * x * (1.0 - x)) * std::exp(-x * x); }),
        true};
    const auto w2 = d_psi(u, d_psi_inv(u, w));
    const double r2 = sup_diff(w2.rep.values(), w.rep.values());
    s.row("d_psi(d_psi_inv(w)) = w", "u=0.5*gauss_bump, w=x(1-x)exp(-x^2)", r2, r2, "round_trip", 9);
  }
  {
    const auto ir = translations(h0, v);
    s.row("R o Psi = Psi o L", "u0=0.5*gauss_bump, u=sine_window", ir.residual, ir.residual, "intertwining", 10);
  }
  {
    const auto h1 = interpolation_family(h0, 1.0);
    const double d1 = sup_diff(h1.ys(), h0.ys());
    LineMeta meta;
    meta.tail = Tail::none;
    auto logd = [&](const IncreasingMap& h) {
      std::vector<double> l;
      for (double d : h.dys()) l.push_back(std::log(d));
      return LineFunction(h.xs(), l, meta);
    };
    const double full = h12_line(logd(h0), cfg.diag_cutoff).seminorm();
    double worst = d1;
    for (double t : {0.25, 0.5}) {
      const double part = h12_line(logd(interpolation_family(h0, t)), cfg.diag_cutoff).seminorm();
      worst = std::max(worst, std::abs(part - t * full) / full);
    }
    s.row("interpolation family seminorm linearity", "h=Psi(0.5*gauss_bump), t=0.25,0.5,1", full, worst,
          "interpolation");
  }
  {
    std::vector<double> ys = h0.xs();
    for (double& y : ys) y = 2.0 * y + 0.3;
    const IncreasingMap aff(Domain::line, h0.xs(), ys, std::vector<double>(ys.size(), 2.0));
    const auto pa = pullback_probe(aff, {v, u});
    double worst = 0.0;
    for (double r : pa.ratios) worst = std::max(worst, std::abs(r - 1.0));
    s.row("pullback ratio, affine map", "x -> 2x + 0.3", pa.max_ratio, worst, "pullback_affine");
    const auto p2 = pullback_probe(h0, {v, u});
    const auto p3 = pullback_probe(h0, {v, u, SobolevClass::canonical(s.line("triangle"))});
    s.row("pullback max ratio under family enlargement", "h=Psi(0.5*gauss_bump)", p3.max_ratio,
          std::abs(p3.max_ratio / p2.max_ratio - 1.0), "pullback_stability");
  }
}

// ---------------------------------------------------------------------------

void reich_suite(Suite& s) {
  const auto& cfg = s.cfg;
  const HalfPlaneGrid grid(cfg.grid);
  LiteralOptions fine = cfg.literal_options();
  fine.step = cfg.boundary_step;
  const std::vector<std::pair<std::string, json>> family = {
      {"gauss_bump", json::object()},
      {"sine_window", json::object()},
      {"gauss_bump", {{"center", 1.0}, {"width", 0.5}}},
  };
  const double h = grid.hx();
  for (std::size_t n = 0; n < family.size(); ++n) {
    const auto& [name, params] = family[n];
    const std::string input = "builtin " + name + (params.empty() ? "" : " " + params.dump());
    const BoundaryFunction f(0.0, 0.0, *builtin_function(name, params, fine).line);
    const auto H = reich_H(f, grid);
    const auto A3 = reich_A3_field(f, grid);
    const auto r = check_dbar_identity(H, A3, grid);
    s.row_tol("dbar Hf + y^2 conj(Af''')", input, r.mean, r.sup, std::max(cfg.tolerance("dbar_identity"), 20.0 * h * h),
              n == 0 ? 11 : 0);
    const double q = qd_energy(H, grid);
    const double a = a3_energy(A3, grid);
    s.row("int |Af'''|^2 y^2 / qd energy", input, a, a / q, "energy_chain", 13);
    if (n == 0) {
      const auto p = check_a3_representation(f, H, cplx(0.0, 1.0), grid);
      s.row("Af''' area representation at z=i", input, std::abs(p.lhs), std::abs(p.lhs - p.rhs) / std::abs(p.lhs),
            "a3_representation");
      std::vector<double> ys = {0.1, 0.05, 0.025}, errs;
      for (double y : ys) errs.push_back(std::abs(reich_A(f, cplx(0.3, y)).real() - f(0.3)));
      const double p1 = loglog_slope(ys, errs);
      s.row("Re Af boundary recovery order", input + " at x=0.3", p1, std::abs(p1 - 1.0), "boundary_rate");
    }
  }
  {
    const BoundaryFunction f(0.0, 0.0, *builtin_function("gauss_bump", json::object(), fine).line);
    GridSpec coarse{4.0, 0.125, 4.0, 32, 16};
    GridSpec finer{4.0, 0.125, 4.0, 64, 31};
    const double r1 = check_dbar_identity(f, HalfPlaneGrid(coarse)).sup;
    const double r2 = check_dbar_identity(f, HalfPlaneGrid(finer)).sup;
    const double p = std::log(r1 / r2) / std::log(2.0);
    s.row("(dbar H) identity refinement order", "builtin gauss_bump", p, std::abs(p - 2.0), "dbar_order");
  }
  {
    const auto rc = check_dbar_identity(BoundaryFunction::affine(2.0, 0.0), grid);
    const auto rl = check_dbar_identity(BoundaryFunction::affine(0.0, 1.0), grid);
    s.row("dbar Hf + y^2 conj(Af''') exact zero", "f = 2", rc.mean, rc.sup, "exact_zero", 11);
    s.row("dbar Hf + y^2 conj(Af''') exact zero", "f = t", rl.mean, rl.sup, "exact_zero", 11);
  }
  {
    LiteralOptions wide = fine;
    wide.half_width = 64.0;
    LineMeta meta;
    const auto g = LineFunction::sample([](double t) { return 1.0 / (1.0 + t * t); }, wide.half_width, wide.step, meta);
    const BoundaryFunction f(0.0, 0.0, g);
    const cplx z(0.0, 0.5), I(0.0, 1.0);
    const cplx closed = 2.0 * (z * z + 1.0) *
                        (1.0 / ((z * z + 1.0) * (z * z + 1.0)) + 1.0 / (4.0 * (I - z) * (I - z)) + 1.0 / (4.0 * I * (I - z)));
    const cplx a = reich_A(f, z);
    s.row("A(1/(1+t^2)) at i/2 vs closed form", "1/(1+t^2) on [-64,64]", a.real(), std::abs(a - closed) / std::abs(closed),
          "golden_A");
  }
  {
    const HalfPlaneGrid ag(analytic_family_grid());
    double spread = 0.0;
    for (int k = 2; k <= 4; ++k) {
      const auto d = dirichlet_equiv(k, ag);
      spread = std::max(spread, std::abs(std::log10(d.lhs.real() / d.rhs.real())));
      const auto c = dirichlet_closed_form(k);
      const std::string input = "psi_" + std::to_string(k) + " = (z+i)^-" + std::to_string(k);
      s.row("int int |psi|^2 vs closed form", input, d.lhs.real(), rel(d.lhs.real(), c.lhs.real()), "dirichlet",
            k == 2 ? 12 : 0);
      s.row("int int |psi'|^2 y^2 vs closed form", input, d.rhs.real(), rel(d.rhs.real(), c.rhs.real()), "dirichlet",
            k == 2 ? 12 : 0);
    }
    s.row("|log10(lhs/rhs)| over k=2,3,4", "psi_k = (z+i)^-k", spread, spread, "dirichlet_ratio");
    const auto rp = reproducing_check(2, cplx(0.0, 2.0), ag);
    s.row("reproducing formula at z=2i", "psi_2 = (z+i)^-2", rp.rhs.real(), std::abs(rp.rhs - rp.lhs) / std::abs(rp.lhs),
          "reproducing", 12);
  }
  {
    const auto a = *builtin_function("tangential", {{"samples", 256}}).circle;
    const auto tr = cayley_transfer_check(a);
    s.row("disk to half-plane dbar transfer", "builtin tangential", tr.modulus_residual, tr.residual, "transfer");
    s.row("disk to half-plane |dbar| transfer", "builtin tangential", tr.modulus_residual, tr.modulus_residual,
          "transfer");
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"functions", "mollifier", "semmes", "flow", "wpmap", "reich"};
  return names;
}

SuiteResult run_suite(const std::string& name, const ConfigSpec& config) {
  if (name == "all") {
    SuiteResult all;
    for (const auto& n : suite_names()) {
      auto r = run_suite(n, config);
      all.rows.insert(all.rows.end(), r.rows.begin(), r.rows.end());
      all.warnings.insert(all.warnings.end(), r.warnings.begin(), r.warnings.end());
    }
    return all;
  }
  Suite s{name, config, {}};
  if (name == "functions") {
    functions_suite(s);
  } else if (name == "mollifier") {
    mollifier_suite(s);
  } else if (name == "semmes") {
    semmes_suite(s);
  } else if (name == "flow") {
    flow_suite(s);
  } else if (name == "wpmap") {
    wpmap_suite(s);
  } else if (name == "reich") {
    reich_suite(s);
  } else {
    fail(ErrorKind::invalid_input, "unknown suite \"" + name + "\" (expected functions, mollifier, semmes, flow, wpmap, reich or all)");
  }
  return std::move(s.out);
}

}  // namespace wpflow
