#include "wpflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace wpflow {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void check_knots(const std::vector<double>& knots, std::size_t fields) {
  if (knots.size() < 2 || knots.size() != fields) fail(ErrorKind::invalid_input, "need >= 2 time knots with one field each");
  if (knots.front() != 0.0) fail(ErrorKind::invalid_input, "first time knot must be 0");
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    if (!(knots[k + 1] > knots[k])) fail(ErrorKind::invalid_input, "time knots must be strictly increasing");
  }
}

}  // namespace

TimeDependentField TimeDependentField::line(std::vector<double> knots, std::vector<LineFunction> fields,
                                            TimeInterp interp, bool require_normalized) {
  check_knots(knots, fields.size());
  if (require_normalized) {
    for (const auto& f : fields) {
      double scale = 1.0;
      for (double v : f.values()) scale = std::max(scale, std::abs(v));
      if (std::abs(f(0.0)) > 1e-8 * scale || std::abs(f(1.0)) > 1e-8 * scale) {
        fail(ErrorKind::invalid_input, "line field must vanish at 0 and 1");
      }
    }
  }
  TimeDependentField out;
  out.domain_ = Domain::line;
  out.interp_ = interp;
  out.knots_ = std::move(knots);
  out.line_ = std::move(fields);
  return out;
}

TimeDependentField TimeDependentField::circle(std::vector<double> knots, std::vector<CircleFunction> fields,
                                              TimeInterp interp, bool three_point) {
  check_knots(knots, fields.size());
  for (const auto& f : fields) {
    if (!f.is_real()) fail(ErrorKind::invalid_input, "circle field must be a real angular speed");
  }
  if (three_point) {
    for (const auto& f : fields) {
      double scale = 1.0;
      for (const auto& s : f.samples()) scale = std::max(scale, std::abs(s));
      for (double th : {0.0, kPi, 1.5 * kPi}) {
        if (std::abs(f.value(th)) > 1e-8 * scale) {
          fail(ErrorKind::invalid_input, "circle field must vanish at 1, -1 and -i");
        }
      }
    }
  }
  TimeDependentField out;
  out.domain_ = Domain::circle;
  out.interp_ = interp;
  out.knots_ = std::move(knots);
  out.circle_ = std::move(fields);
  out.three_point_ = three_point;
  return out;
}

TimeDependentField TimeDependentField::autonomous(const LineFunction& f, double t_end, bool require_normalized) {
  return line({0.0, t_end}, {f, f}, TimeInterp::linear, require_normalized);
}

TimeDependentField TimeDependentField::autonomous(const CircleFunction& a, double t_end, bool three_point) {
  return circle({0.0, t_end}, {a, a}, TimeInterp::linear, three_point);
}

TimeDependentField::Blend TimeDependentField::blend(double t) const {
  const std::size_t K = knots_.size();
  const double tc = std::clamp(t, knots_.front(), knots_.back());
  std::size_t k = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), tc) - knots_.begin());
  k = k == 0 ? 0 : k - 1;
  if (k + 1 >= K) k = K - 2;
  const double dt = knots_[k + 1] - knots_[k];
  const double s = (tc - knots_[k]) / dt;
  Blend b{};
  if (interp_ == TimeInterp::linear || K < 3) {
    b.count = 2;
    b.idx[0] = k;
    b.idx[1] = k + 1;
    b.w[0] = 1.0 - s;
    b.w[1] = s;
    return b;
  }
  // Cubic Hermite in time with slopes from neighbouring knots.
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const std::size_t km = k == 0 ? 0 : k - 1;
  const std::size_t kp = std::min(K - 1, k + 2);
  b.count = 4;
  b.idx[0] = km;
  b.idx[1] = k;
  b.idx[2] = k + 1;
  b.idx[3] = kp;
  for (double& w : b.w) w = 0.0;
  // Slope at k: (f[k+1] - f[km]) / (t[k+1] - t[km]); at k+1: (f[kp] - f[k]) / (t[kp] - t[k]).
  const double a0 = h10 * dt / (knots_[k + 1] - knots_[km]);
  const double a1 = h11 * dt / (knots_[kp] - knots_[k]);
  b.w[1] += h00;
  b.w[2] += h01;
  b.w[2] += a0;
  b.w[0] -= a0;
  b.w[3] += a1;
  b.w[1] -= a1;
  return b;
}

double TimeDependentField::knot_value(std::size_t k, double x) const {
  if (domain_ == Domain::line) {
    const auto& f = line_[k];
    if (!f.contains(x)) {
      std::ostringstream os;
      os << "particle at x=" << x << " left the field window [" << f.lo() << ", " << f.hi() << "]";
      fail(ErrorKind::out_of_domain, os.str());
    }
    return f(x);
  }
  return circle_[k].value(x);
}

double TimeDependentField::knot_derivative(std::size_t k, double x) const {
  if (domain_ == Domain::line) {
    const auto& f = line_[k];
    if (!f.contains(x)) fail(ErrorKind::out_of_domain, "derivative requested outside the field window");
    return f.derivative(x);
  }
  return circle_[k].derivative(x);
}

double TimeDependentField::value(double t, double x) const {
  const Blend b = blend(t);
  double v = 0.0;
  for (int q = 0; q < b.count; ++q) {
    if (b.w[q] != 0.0) v += b.w[q] * knot_value(b.idx[q], x);
  }
  return v;
}

double TimeDependentField::derivative(double t, double x) const {
  const Blend b = blend(t);
  double v = 0.0;
  for (int q = 0; q < b.count; ++q) {
    if (b.w[q] != 0.0) v += b.w[q] * knot_derivative(b.idx[q], x);
  }
  return v;
}

std::vector<double> default_particles(Domain domain, std::size_t count, double lo, double hi) {
  if (domain == Domain::circle) return uniform_nodes(0.0, kTwoPi, count);
  return uniform_nodes(lo, hi, count);
}

namespace {

// Fourth-order periodic derivative of samples over one turn (last sample
// duplicates the first shifted by 2 pi).
std::vector<double> periodic_lift_derivative(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t m = xs.size() - 1;
  const double h = kTwoPi / static_cast<double>(m);
  std::vector<double> p(m);
  for (std::size_t k = 0; k < m; ++k) p[k] = ys[k] - xs[k];
  std::vector<double> d(m + 1);
  for (std::size_t k = 0; k < m; ++k) {
    auto at = [&](long off) { return p[static_cast<std::size_t>((static_cast<long>(k) + off + static_cast<long>(m)) % static_cast<long>(m))]; };
    d[k] = 1.0 + (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * h);
  }
  d[m] = d[0];
  return d;
}

IncreasingMap make_snapshot(Domain domain, const std::vector<double>& xs, std::vector<double> ys, double t) {
  std::vector<double> dys;
  if (domain == Domain::circle) {
    ys.back() = ys.front() + kTwoPi;
    dys = periodic_lift_derivative(xs, ys);
  } else {
    dys = differentiate(xs, ys);
  }
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    if (!(ys[i + 1] > ys[i])) {
      std::ostringstream os;
      os << "snapshot at t=" << t << " lost monotonicity near x=" << xs[i] << "; refine the step";
      fail(ErrorKind::step_size, os.str());
    }
  }
  for (double d : dys) {
    if (!(d > 0.0)) {
      std::ostringstream os;
      os << "snapshot at t=" << t << " has a nonpositive derivative; refine the step or the particle grid";
      fail(ErrorKind::step_size, os.str());
    }
  }
  return IncreasingMap(domain, xs, std::move(ys), std::move(dys));
}

}  // namespace

FlowCurve integrate_flow(const TimeDependentField& field, std::size_t n_steps,
                         const std::vector<double>& particles, const std::vector<double>& outputs) {
  if (n_steps < 1) fail(ErrorKind::invalid_input, "n_steps must be >= 1");
  if (particles.size() < 5) fail(ErrorKind::invalid_input, "need >= 5 particles");
  const Domain domain = field.domain();
  if (domain == Domain::circle && std::abs(particles.back() - particles.front() - kTwoPi) > 1e-12) {
    fail(ErrorKind::invalid_input, "circle particles must span one full turn");
  }
  const double T = field.t_end();
  const double dt = T / static_cast<double>(n_steps);

  std::vector<std::size_t> marks{0};
  for (double t : outputs) {
    if (t < 0.0 || t > T * (1.0 + 1e-12)) fail(ErrorKind::invalid_input, "output time outside [0, t_end]");
    const double m = std::round(t / dt);
    if (std::abs(m * dt - t) > 1e-9 * (1.0 + t)) fail(ErrorKind::step_size, "output times must be multiples of the step");
    marks.push_back(static_cast<std::size_t>(m));
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  const std::size_t np = particles.size();
  // traj[q][p]: position of particle p at mark q.
  std::vector<std::vector<double>> traj(marks.size(), std::vector<double>(np));
  parallel_for(np, [&](std::size_t p) {
    double x = particles[p];
    std::size_t q = 0;
    if (marks[0] == 0) traj[q++][p] = x;
    for (std::size_t s = 1; s <= marks.back(); ++s) {
      const double t = dt * static_cast<double>(s - 1);
      const double k1 = field.value(t, x);
      const double k2 = field.value(t + 0.5 * dt, x + 0.5 * dt * k1);
      const double k3 = field.value(t + 0.5 * dt, x + 0.5 * dt * k2);
      const double k4 = field.value(t + dt, x + dt * k3);
      x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!std::isfinite(x)) fail(ErrorKind::divergence, "particle position is no longer finite");
      if (q < marks.size() && marks[q] == s) traj[q++][p] = x;
    }
  });

  FlowCurve curve;
  curve.domain = domain;
  curve.step = dt;
  curve.n_steps = n_steps;
  for (std::size_t q = 0; q < marks.size(); ++q) {
    const double t = dt * static_cast<double>(marks[q]);
    curve.times.push_back(t);
    curve.snapshots.push_back(make_snapshot(domain, particles, std::move(traj[q]), t));
  }
  return curve;
}

std::vector<LineFunction> flow_log_derivative(const FlowCurve& curve) {
  std::vector<LineFunction> out;
  LineMeta meta;
  meta.tail = Tail::none;
  for (const auto& snap : curve.snapshots) {
    std::vector<double> v(snap.dys().size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(snap.dys()[i] > 0.0)) fail(ErrorKind::monotonicity, "nonpositive derivative in snapshot");
      v[i] = std::log(snap.dys()[i]);
    }
    out.emplace_back(snap.xs(), std::move(v), meta);
  }
  return out;
}

ResidualReport check_logderiv_ode(const FlowCurve& curve, const TimeDependentField& field) {
  const std::size_t K = curve.times.size();
  ResidualReport r;
  if (K < 3) return r;
  const double dt = curve.times[1] - curve.times[0];
  for (std::size_t k = 0; k + 1 < K; ++k) {
    if (std::abs(curve.times[k + 1] - curve.times[k] - dt) > 1e-9 * (1.0 + dt)) {
      fail(ErrorKind::invalid_input, "check_logderiv_ode needs equally spaced knots");
    }
  }
  const auto logs = flow_log_derivative(curve);
  CompensatedSum total;
  for (std::size_t k = 1; k + 1 < K; ++k) {
    const auto& snap = curve.snapshots[k];
    for (std::size_t i = 0; i < snap.xs().size(); ++i) {
      auto L = [&](std::size_t q) { return logs[q].values()[i]; };
      double dl;
      if (k >= 2 && k + 2 < K) {
        dl = (L(k - 2) - 8.0 * L(k - 1) + 8.0 * L(k + 1) - L(k + 2)) / (12.0 * dt);
      } else if (K >= 5 && k == 1) {
        dl = (-3.0 * L(0) - 10.0 * L(1) + 18.0 * L(2) - 6.0 * L(3) + L(4)) / (12.0 * dt);
      } else if (K >= 5 && k + 2 == K) {
        dl = (3.0 * L(k + 1) + 10.0 * L(k) - 18.0 * L(k - 1) + 6.0 * L(k - 2) - L(k - 3)) / (12.0 * dt);
      } else {
        dl = (L(k + 1) - L(k - 1)) / (2.0 * dt);
      }
      const double expected = field.derivative(curve.times[k], snap.ys()[i]);
      const double e = std::abs(dl - expected);
      r.sup = std::max(r.sup, e);
      total.add(e);
      ++r.count;
    }
  }
  r.mean = r.count ? total.value() / static_cast<double>(r.count) : 0.0;
  return r;
}

TimeDependentField conjugate_circle_to_line(const TimeDependentField& field, double half_width, double step) {
  if (field.domain() != Domain::circle) fail(ErrorKind::invalid_input, "conjugation needs a circle field");
  // Re-validate the normalization whatever the flag says.
  for (const auto& a : field.circle_fields()) {
    double scale = 1.0;
    for (const auto& s : a.samples()) scale = std::max(scale, std::abs(s));
    for (double th : {0.0, kPi, 1.5 * kPi}) {
      if (std::abs(a.value(th)) > 1e-8 * scale) {
        fail(ErrorKind::invalid_input, "circle field must vanish at 1, -1 and -i before conjugation");
      }
    }
  }
  std::vector<LineFunction> lines;
  LineMeta meta;
  meta.tail = Tail::none;
  meta.decay_exponent = 1.0;
  for (const auto& a : field.circle_fields()) {
    const double cells = std::round(2.0 * half_width / step);
    auto xs = uniform_nodes(-half_width, half_width, static_cast<std::size_t>(cells));
    std::vector<double> v(xs.size()), d(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double u = xs[i];
      const double th = cayley_angle(u);
      const double av = a.value(th);
      v[i] = av * (1.0 + u * u) / 2.0;
      d[i] = a.derivative(th) + av * u;
    }
    lines.emplace_back(std::move(xs), std::move(v), meta, std::move(d));
  }
  return TimeDependentField::line(field.knots(), std::move(lines), field.interp(), true);
}

std::vector<double> conjugate_snapshot(const IncreasingMap& circle_map, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = cayley_abscissa(circle_map(cayley_angle(xs[i])));
  return out;
}

SmoothnessReport smoothness_probe(const FlowCurve& curve) {
  const std::size_t K = curve.times.size();
  if (K < 3) fail(ErrorKind::invalid_input, "smoothness_probe needs >= 3 knots");
  const auto logs = flow_log_derivative(curve);
  SmoothnessReport r;
  for (const auto& l : logs) r.seminorms.push_back(h12_line(l).seminorm());
  for (std::size_t k = 0; k + 1 < K; ++k) r.max_jump = std::max(r.max_jump, std::abs(r.seminorms[k + 1] - r.seminorms[k]));
  for (std::size_t span : {std::size_t{4}, std::size_t{2}, std::size_t{1}}) {
    if (span >= K) continue;
    const double delta = curve.times[span] - curve.times[0];
    std::vector<double> diff(logs[0].size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = logs[span].values()[i] - logs[0].values()[i];
    LineMeta meta;
    meta.tail = Tail::none;
    const LineFunction dq(logs[0].xs(), std::move(diff), meta);
    r.deltas.push_back(delta);
    r.quotients.push_back(h12_line(dq).seminorm() / delta);
  }
  for (std::size_t q = 0; q + 1 < r.quotients.size(); ++q) r.ratios.push_back(r.quotients[q] / r.quotients[q + 1]);
  return r;
}

void write_flow_csv(const FlowCurve& curve, std::ostream& os) {
  os << "t,x,h,dh,log_dh\n";
  os.precision(17);
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    const auto& s = curve.snapshots[k];
    for (std::size_t i = 0; i < s.xs().size(); ++i) {
      os << curve.times[k] << ',' << s.xs()[i] << ',' << s.ys()[i] << ',' << s.dys()[i] << ','
         << std::log(s.dys()[i]) << '\n';
    }
  }
}

}  // namespace wpflow
