#include "wpflow/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wpflow {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double smooth_step(double t) {
  // 0 at t <= 0, 1 at t >= 1, all derivatives vanish at both ends.
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Exact integral over one cell of |v| for v linear from a to b.
double abs_linear_cell(double a, double b, double h) {
  if ((a >= 0.0 && b >= 0.0) || (a <= 0.0 && b <= 0.0)) return 0.5 * h * (std::abs(a) + std::abs(b));
  return 0.5 * h * (a * a + b * b) / (std::abs(a) + std::abs(b));
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Window

double Window::operator()(double x) const {
  if (!active()) return 1.0;
  const double a = std::abs(x);
  if (a <= plateau) return 1.0;
  if (a >= edge) return 0.0;
  return smooth_step((edge - a) / (edge - plateau));
}

// ---------------------------------------------------------------------------
// LineFunction

LineFunction::LineFunction(std::vector<double> xs, std::vector<double> values,
                           LineMeta meta, std::vector<double> derivatives)
    : meta_(meta) {
  if (xs.size() < 5 || values.size() != xs.size()) {
    fail(ErrorKind::invalid_input, "line function needs >= 5 grid points with matching values");
  }
  if (!all_finite(values) || !all_finite(xs)) fail(ErrorKind::invalid_input, "line function values must be finite");
  if (derivatives.empty()) derivatives = differentiate(xs, values);
  if (derivatives.size() != xs.size()) fail(ErrorKind::invalid_input, "derivative samples do not match the grid");
  re_ = Hermite(std::move(xs), std::move(values), std::move(derivatives));
  step_ = uniform_step(re_.xs());
}

LineFunction LineFunction::complex(std::vector<double> xs, std::vector<double> re,
                                   std::vector<double> im, LineMeta meta) {
  LineFunction f(xs, std::move(re), meta);
  if (!im.empty()) {
    if (im.size() != xs.size() || !all_finite(im)) fail(ErrorKind::invalid_input, "imaginary samples do not match the grid");
    auto dim = differentiate(xs, im);
    f.im_ = Hermite(std::move(xs), std::move(im), std::move(dim));
  }
  return f;
}

LineFunction LineFunction::sample(const std::function<double(double)>& f,
                                  double half_width, double step, LineMeta meta,
                                  const std::function<double(double)>& df) {
  if (!(half_width > 0.0) || !(step > 0.0)) fail(ErrorKind::invalid_input, "sample needs positive half width and step");
  const double cells = std::round(2.0 * half_width / step);
  if (std::abs(cells * step - 2.0 * half_width) > 1e-9 * half_width) {
    fail(ErrorKind::invalid_input, "grid step must divide the window");
  }
  return sample_on(f, uniform_nodes(-half_width, half_width, static_cast<std::size_t>(cells)), meta, df);
}

LineFunction LineFunction::sample_on(const std::function<double(double)>& f,
                                     std::vector<double> xs, LineMeta meta,
                                     const std::function<double(double)>& df) {
  std::vector<double> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = f(xs[i]);
  std::vector<double> d;
  if (df) {
    d.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) d[i] = df(xs[i]);
  }
  return LineFunction(std::move(xs), std::move(v), meta, std::move(d));
}

double LineFunction::operator()(double x) const {
  if (re_.contains(x)) return re_.value(x);
  if (meta_.tail == Tail::zero) return 0.0;
  std::ostringstream os;
  os << "line function evaluated at " << x << " outside [" << lo() << ", " << hi() << "]";
  fail(ErrorKind::out_of_domain, os.str());
}

cplx LineFunction::complex_at(double x) const {
  const double re = (*this)(x);
  if (im_.empty() || !im_.contains(x)) return {re, 0.0};
  return {re, im_.value(x)};
}

double LineFunction::derivative(double x) const {
  if (re_.contains(x)) return re_.derivative(x);
  if (meta_.tail == Tail::zero) return 0.0;
  fail(ErrorKind::out_of_domain, "derivative requested outside the grid");
}

LineFunction LineFunction::derivative_function() const {
  LineFunction d(xs(), derivatives(), meta_);
  if (!im_.empty()) {
    d.im_ = Hermite(xs(), im_.ds(), differentiate(xs(), im_.ds()));
  }
  d.meta_.decay_exponent = meta_.decay_exponent - 1.0;
  return d;
}

LineFunction LineFunction::scaled(double factor) const {
  LineFunction out = *this;
  auto scale = [factor](const Hermite& h) {
    std::vector<double> y = h.ys(), d = h.ds();
    for (auto& v : y) v *= factor;
    for (auto& v : d) v *= factor;
    return Hermite(h.xs(), std::move(y), std::move(d));
  };
  out.re_ = scale(re_);
  if (!im_.empty()) out.im_ = scale(im_);
  return out;
}

LineFunction LineFunction::plus_constant(double c) const {
  LineFunction out = *this;
  std::vector<double> y = re_.ys();
  for (auto& v : y) v += c;
  out.re_ = Hermite(re_.xs(), std::move(y), re_.ds());
  return out;
}

LineFunction LineFunction::with_meta(LineMeta meta) const {
  LineFunction out = *this;
  out.meta_ = meta;
  return out;
}

double LineFunction::mean() const {
  return trapezoid(xs(), values()) / (hi() - lo());
}

// ---------------------------------------------------------------------------
// CircleFunction

namespace {

std::vector<cplx> roots_of_unity(std::size_t m) {
  std::vector<cplx> r(m);
  for (std::size_t k = 0; k < m; ++k) r[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(m));
  return r;
}

// Evaluates sum_n c_n e^{i n theta_k} at every sample angle; mult supplies an
// extra factor per mode (used for spectral derivatives).
std::vector<cplx> synthesize(const std::vector<cplx>& coeffs, int n_max, std::size_t m,
                             const std::function<cplx(int)>& mult) {
  const auto roots = roots_of_unity(m);
  std::vector<cplx> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    CompensatedComplexSum s;
    for (int n = -n_max; n <= n_max; ++n) {
      const long long idx = (static_cast<long long>(n) * static_cast<long long>(k)) % static_cast<long long>(m);
      const std::size_t j = static_cast<std::size_t>(idx < 0 ? idx + static_cast<long long>(m) : idx);
      s.add(coeffs[static_cast<std::size_t>(n + n_max)] * mult(n) * roots[j]);
    }
    out[k] = s.value();
  }
  return out;
}

}  // namespace

CircleFunction CircleFunction::from_coeffs(std::vector<cplx> coeffs, std::size_t samples,
                                           bool real) {
  if (coeffs.size() % 2 != 1) fail(ErrorKind::invalid_input, "Fourier coefficients must be indexed -N..N");
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(ErrorKind::invalid_input, "non-finite Fourier coefficient");
  }
  const int n_max = static_cast<int>(coeffs.size() / 2);
  if (samples < static_cast<std::size_t>(2 * n_max + 2) || samples < 8) {
    fail(ErrorKind::invalid_input, "too few samples for the requested bandwidth");
  }
  CircleFunction f;
  f.real_ = real;
  f.bandwidth_ = n_max;
  if (real) {
    for (int n = 1; n <= n_max; ++n) {
      const cplx avg = 0.5 * (coeffs[static_cast<std::size_t>(n_max + n)] + std::conj(coeffs[static_cast<std::size_t>(n_max - n)]));
      coeffs[static_cast<std::size_t>(n_max + n)] = avg;
      coeffs[static_cast<std::size_t>(n_max - n)] = std::conj(avg);
    }
    coeffs[static_cast<std::size_t>(n_max)] = coeffs[static_cast<std::size_t>(n_max)].real();
  }
  f.coeffs_ = std::move(coeffs);
  f.samples_ = synthesize(f.coeffs_, n_max, samples, [](int) { return cplx(1.0); });
  if (real) {
    for (auto& s : f.samples_) s = s.real();
  }
  f.build_interpolants();
  return f;
}

CircleFunction CircleFunction::from_samples(std::vector<cplx> samples, bool real,
                                            int bandwidth) {
  const std::size_t m = samples.size();
  if (m < 8) fail(ErrorKind::invalid_input, "circle function needs >= 8 samples");
  for (const auto& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) fail(ErrorKind::invalid_input, "non-finite circle sample");
  }
  const int n_max = bandwidth < 0 ? static_cast<int>(m / 2) - 1 : bandwidth;
  if (static_cast<std::size_t>(2 * n_max + 2) > m) fail(ErrorKind::invalid_input, "bandwidth too large for sample count");
  const auto roots = roots_of_unity(m);
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n) {
    CompensatedComplexSum s;
    for (std::size_t k = 0; k < m; ++k) {
      const long long idx = (-static_cast<long long>(n) * static_cast<long long>(k)) % static_cast<long long>(m);
      const std::size_t j = static_cast<std::size_t>(idx < 0 ? idx + static_cast<long long>(m) : idx);
      s.add(samples[k] * roots[j]);
    }
    coeffs[static_cast<std::size_t>(n + n_max)] = s.value() / static_cast<double>(m);
  }
  return from_coeffs(std::move(coeffs), m, real);
}

CircleFunction CircleFunction::sample(const std::function<cplx(double)>& f,
                                      std::size_t samples, bool real, int bandwidth) {
  std::vector<cplx> s(samples);
  for (std::size_t k = 0; k < samples; ++k) s[k] = f(kTwoPi * static_cast<double>(k) / static_cast<double>(samples));
  return from_samples(std::move(s), real, bandwidth);
}

void CircleFunction::build_interpolants() {
  slopes_ = synthesize(coeffs_, bandwidth_, samples_.size(), [](int n) { return cplx(0.0, n); });
  if (real_) {
    for (auto& s : slopes_) s = s.real();
  }
}

cplx CircleFunction::coeff(int n) const {
  if (n < -bandwidth_ || n > bandwidth_) return {0.0, 0.0};
  return coeffs_[static_cast<std::size_t>(n + bandwidth_)];
}

double CircleFunction::angle(std::size_t k) const {
  return kTwoPi * static_cast<double>(k) / static_cast<double>(samples_.size());
}

cplx CircleFunction::at(double theta) const {
  const std::size_t m = samples_.size();
  const double h = kTwoPi / static_cast<double>(m);
  const double t_abs = wrap_angle(theta) / h;
  std::size_t i = static_cast<std::size_t>(std::floor(t_abs));
  if (i >= m) i = m - 1;
  const std::size_t j = (i + 1) % m;
  const double t = t_abs - static_cast<double>(i);
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * samples_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
         (-2 * t3 + 3 * t2) * samples_[j] + (t3 - t2) * h * slopes_[j];
}

cplx CircleFunction::derivative_at(double theta) const {
  const std::size_t m = samples_.size();
  const double h = kTwoPi / static_cast<double>(m);
  const double t_abs = wrap_angle(theta) / h;
  std::size_t i = static_cast<std::size_t>(std::floor(t_abs));
  if (i >= m) i = m - 1;
  const std::size_t j = (i + 1) % m;
  const double t = t_abs - static_cast<double>(i);
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) / h) * samples_[i] + (3 * t2 - 4 * t + 1) * slopes_[i] +
         ((-6 * t2 + 6 * t) / h) * samples_[j] + (3 * t2 - 2 * t) * slopes_[j];
}

cplx CircleFunction::spectral(double theta) const {
  CompensatedComplexSum s;
  for (int n = -bandwidth_; n <= bandwidth_; ++n) s.add(coeff(n) * std::polar(1.0, n * theta));
  return real_ ? cplx(s.value().real(), 0.0) : s.value();
}

CircleFunction CircleFunction::derivative_function() const {
  std::vector<cplx> c(coeffs_.size());
  for (int n = -bandwidth_; n <= bandwidth_; ++n) c[static_cast<std::size_t>(n + bandwidth_)] = cplx(0.0, n) * coeff(n);
  return from_coeffs(std::move(c), samples_.size(), real_);
}

CircleFunction CircleFunction::scaled(double factor) const {
  std::vector<cplx> c = coeffs_;
  for (auto& v : c) v *= factor;
  return from_coeffs(std::move(c), samples_.size(), real_);
}

// ---------------------------------------------------------------------------
// IncreasingMap

IncreasingMap::IncreasingMap(Domain domain, std::vector<double> xs, std::vector<double> ys,
                             std::vector<double> dys)
    : domain_(domain) {
  if (xs.size() < 5 || ys.size() != xs.size()) fail(ErrorKind::invalid_input, "increasing map needs >= 5 paired samples");
  if (!all_finite(ys)) fail(ErrorKind::invalid_input, "increasing map samples must be finite");
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    if (!(ys[i + 1] > ys[i])) {
      std::ostringstream os;
      os << "map not strictly increasing near x=" << xs[i];
      fail(ErrorKind::monotonicity, os.str());
    }
  }
  if (domain == Domain::circle) {
    if (std::abs((xs.back() - xs.front()) - kTwoPi) > 1e-9 ||
        std::abs((ys.back() - ys.front()) - kTwoPi) > 1e-9) {
      fail(ErrorKind::invalid_input, "circle map must span one turn with total increment 2 pi");
    }
  }
  has_derivative_ = !dys.empty();
  if (has_derivative_) {
    if (dys.size() != xs.size()) fail(ErrorKind::invalid_input, "derivative samples do not match the grid");
    for (double d : dys) {
      if (!(d > 0.0) || !std::isfinite(d)) fail(ErrorKind::monotonicity, "derivative samples must be positive");
    }
  } else {
    dys = differentiate(xs, ys);
    for (auto& d : dys) d = std::max(d, 1e-300);
  }
  std::vector<double> inv_d(dys.size());
  for (std::size_t i = 0; i < dys.size(); ++i) inv_d[i] = 1.0 / dys[i];
  backward_ = Hermite(ys, xs, std::move(inv_d));
  forward_ = Hermite(std::move(xs), std::move(ys), std::move(dys));
}

IncreasingMap IncreasingMap::identity(Domain domain, std::vector<double> xs) {
  std::vector<double> ones(xs.size(), 1.0);
  std::vector<double> ys = xs;
  return IncreasingMap(domain, std::move(xs), std::move(ys), std::move(ones));
}

double IncreasingMap::operator()(double x) const {
  if (domain_ == Domain::circle) {
    const double turns = std::floor((x - lo()) / kTwoPi);
    double r = x - turns * kTwoPi;
    if (r > hi()) r = hi();
    return forward_.value(r) + turns * kTwoPi;
  }
  return forward_.value(x);
}

double IncreasingMap::derivative(double x) const {
  if (domain_ == Domain::circle) {
    const double turns = std::floor((x - lo()) / kTwoPi);
    double r = x - turns * kTwoPi;
    if (r > hi()) r = hi();
    return forward_.derivative(r);
  }
  return forward_.derivative(x);
}

double IncreasingMap::inverse(double y) const {
  if (domain_ == Domain::circle) {
    const double y0 = backward_.lo();
    const double turns = std::floor((y - y0) / kTwoPi);
    double r = y - turns * kTwoPi;
    if (r > backward_.hi()) r = backward_.hi();
    return backward_.value(r) + turns * kTwoPi;
  }
  return backward_.value(y);
}

// ---------------------------------------------------------------------------
// Seminorms

const char* to_string(SeminormMethod method) {
  switch (method) {
    case SeminormMethod::fourier: return "fourier";
    case SeminormMethod::gagliardo: return "gagliardo";
    case SeminormMethod::dyadic: return "dyadic";
  }
  return "unknown";
}

double SeminormReport::seminorm() const {
  return method == SeminormMethod::dyadic ? value : std::sqrt(std::max(0.0, value));
}

double SeminormReport::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

SeminormReport h12_circle(const CircleFunction& u, SeminormMethod method) {
  for (const auto& c : u.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(ErrorKind::invalid_input, "non-finite coefficient");
  }
  SeminormReport r;
  r.method = method;
  const std::size_t m = u.size();
  if (method == SeminormMethod::fourier) {
    CompensatedSum s;
    for (int n = -u.bandwidth(); n <= u.bandwidth(); ++n) s.add(std::abs(n) * std::norm(u.coeff(n)));
    r.value = s.value();
    r.metadata = {{"bandwidth", u.bandwidth()}, {"samples", static_cast<double>(m)}};
    return r;
  }
  if (method != SeminormMethod::gagliardo) fail(ErrorKind::invalid_input, "h12_circle supports fourier or gagliardo");
  // Periodic trapezoid on the M x M sample lattice. The integrand extends
  // smoothly to the diagonal with value |u'(theta)|^2.
  const auto& s = u.samples();
  const auto slopes = u.derivative_function().samples();
  std::vector<double> inv_chord2(m, 0.0);
  for (std::size_t d = 1; d < m; ++d) {
    const double half = 0.5 * kTwoPi * static_cast<double>(d) / static_cast<double>(m);
    inv_chord2[d] = 1.0 / (4.0 * std::sin(half) * std::sin(half));
  }
  std::vector<double> rows(m);
  parallel_for(m, [&](std::size_t j) {
    CompensatedSum row;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) {
        row.add(std::norm(slopes[j]));
      } else {
        const std::size_t d = k > j ? k - j : j - k;
        row.add(std::norm(s[j] - s[k]) * inv_chord2[d]);
      }
    }
    rows[j] = row.value();
  });
  const double w = kTwoPi / static_cast<double>(m);
  r.value = compensated_sum(rows) * w * w / (4.0 * kPi * kPi);
  r.metadata = {{"samples", static_cast<double>(m)}};
  return r;
}

SeminormReport h12_line(const LineFunction& u, std::optional<double> diag_cutoff) {
  const auto& xs = u.xs();
  const std::size_t n = xs.size();
  const double h = u.step();
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) min_gap = std::min(min_gap, xs[i + 1] - xs[i]);
  const double c = diag_cutoff.value_or(h > 0.0 ? h : min_gap);
  const double lo = u.lo(), hi = u.hi();
  if (!(c > 0.0) || c >= 0.5 * (hi - lo)) {
    fail(ErrorKind::invalid_input, "diag_cutoff must be positive and below the domain half-width");
  }

  std::vector<cplx> vals(n), ders(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = {u.values()[i], u.is_real() ? 0.0 : u.imag_values()[i]};
  }
  {
    const auto& dr = u.derivatives();
    std::vector<double> di;
    if (!u.is_real()) di = differentiate(xs, u.imag_values());
    for (std::size_t i = 0; i < n; ++i) ders[i] = {dr[i], di.empty() ? 0.0 : di[i]};
  }

  const double ratio = h > 0.0 ? c / h : 0.0;
  const bool aligned = h > 0.0 && std::abs(ratio - std::round(ratio)) < 1e-9 && std::round(ratio) >= 1.0;
  const auto m0 = aligned ? static_cast<std::size_t>(std::llround(ratio)) : 0;
  const double sstep = h > 0.0 ? h : min_gap;

  std::vector<double> near(n), far(n);
  parallel_for(n, [&](std::size_t i) {
    const double x = xs[i];
    const cplx ux = vals[i];
    double near_i = 0.0;
    CompensatedSum far_i;
    for (int dir : {+1, -1}) {
      const double reach = dir > 0 ? hi - x : x - lo;
      if (reach < c) continue;
      near_i += c * std::norm(ders[i]);
      if (aligned) {
        // Node-aligned s-grid: s = (m0 + k) h, trapezoid on [c, reach].
        const std::size_t kmax = dir > 0 ? n - 1 - i : i;
        for (std::size_t k = m0; k <= kmax; ++k) {
          const std::size_t j = dir > 0 ? i + k : i - k;
          const double s = static_cast<double>(k) * h;
          const double wgt = (k == m0 || k == kmax) ? 0.5 * h : h;
          far_i.add(wgt * std::norm(vals[j] - ux) / (s * s));
        }
      } else {
        double s_prev = c;
        double f_prev = std::norm(u.complex_at(x + dir * c) - ux) / (c * c);
        while (s_prev < reach) {
          const double s = std::min(reach, s_prev + sstep);
          const double f = std::norm(u.complex_at(x + dir * s) - ux) / (s * s);
          far_i.add(0.5 * (s - s_prev) * (f + f_prev));
          s_prev = s;
          f_prev = f;
        }
      }
    }
    near[i] = near_i;
    far[i] = far_i.value();
  });

  const auto w = trapezoid_weights(xs);
  CompensatedSum near_sum, far_sum, ext_sum;
  for (std::size_t i = 0; i < n; ++i) {
    near_sum.add(w[i] * near[i]);
    far_sum.add(w[i] * far[i]);
  }
  if (u.meta().tail == Tail::zero) {
    // Pairs with exactly one point outside the grid, where u vanishes:
    // 2 int_grid |u(x)|^2 (1/(x - lo) + 1/(hi - x)) dx. Endpoint nodes carry
    // the limit value 0 of a windowed function.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      ext_sum.add(2.0 * w[i] * std::norm(vals[i]) * (1.0 / (xs[i] - lo) + 1.0 / (hi - xs[i])));
    }
  }
  const double norm = 1.0 / (4.0 * kPi * kPi);
  SeminormReport r;
  r.method = SeminormMethod::gagliardo;
  r.value = norm * (near_sum.value() + far_sum.value() + ext_sum.value());
  r.metadata = {{"points", static_cast<double>(n)},
                {"lo", lo},
                {"hi", hi},
                {"diag_cutoff", c},
                {"near_part", norm * near_sum.value()},
                {"far_part", norm * far_sum.value()},
                {"exterior_part", norm * ext_sum.value()},
                {"tail_zero", u.meta().tail == Tail::zero ? 1.0 : 0.0}};
  return r;
}

namespace {

struct OscillationScan {
  double best = 0.0;
  double best_lo = 0.0;
  double best_hi = 0.0;
  std::size_t intervals = 0;
};

// Mean oscillation of the piecewise-linear interpolant of v over cells
// [s, s + m) of a uniform grid with step h; prefix holds trapezoid sums.
double oscillation(const std::vector<double>& v, const std::vector<double>& prefix,
                   std::size_t s, std::size_t m, double h) {
  const double len = static_cast<double>(m) * h;
  const double mean = (prefix[s + m] - prefix[s]) / len;
  CompensatedSum acc;
  for (std::size_t k = s; k < s + m; ++k) acc.add(abs_linear_cell(v[k] - mean, v[k + 1] - mean, h));
  return acc.value() / len;
}

std::vector<double> prefix_trapezoid(const std::vector<double>& v, double h) {
  std::vector<double> p(v.size(), 0.0);
  CompensatedSum acc;
  for (std::size_t k = 1; k < v.size(); ++k) {
    acc.add(0.5 * h * (v[k] + v[k - 1]));
    p[k] = acc.value();
  }
  return p;
}

std::size_t bmo_resolution(int max_depth) {
  if (max_depth < 1) fail(ErrorKind::invalid_input, "bmo max_depth must be >= 1");
  if (max_depth > 24) fail(ErrorKind::invalid_input, "bmo max_depth above 24 is not supported");
  return std::size_t{1} << std::max(15, max_depth + 2);
}

SeminormReport bmo_report(const OscillationScan& scan, int max_depth, std::size_t resolution) {
  SeminormReport r;
  r.method = SeminormMethod::dyadic;
  r.value = scan.best;
  r.metadata = {{"max_depth", static_cast<double>(max_depth)},
                {"resolution", static_cast<double>(resolution)},
                {"intervals", static_cast<double>(scan.intervals)},
                {"argmax_lo", scan.best_lo},
                {"argmax_hi", scan.best_hi}};
  return r;
}

}  // namespace

SeminormReport bmo_norm(const LineFunction& u, int max_depth) {
  const std::size_t res = bmo_resolution(max_depth);
  const double lo = u.lo(), hi = u.hi();
  const double h = (hi - lo) / static_cast<double>(res);
  std::vector<double> v(res + 1);
  for (std::size_t k = 0; k <= res; ++k) v[k] = u(std::min(hi, lo + h * static_cast<double>(k)));
  const auto prefix = prefix_trapezoid(v, h);
  OscillationScan scan;
  for (int d = 0; d <= max_depth; ++d) {
    const std::size_t count = std::size_t{1} << d;
    const std::size_t m = res / count;
    auto visit = [&](std::size_t s) {
      const double osc = oscillation(v, prefix, s, m, h);
      ++scan.intervals;
      if (osc > scan.best) {
        scan.best = osc;
        scan.best_lo = lo + h * static_cast<double>(s);
        scan.best_hi = lo + h * static_cast<double>(s + m);
      }
    };
    for (std::size_t k = 0; k < count; ++k) visit(k * m);
    for (std::size_t k = 0; k + 1 < count; ++k) visit(k * m + m / 2);
  }
  return bmo_report(scan, max_depth, res);
}

SeminormReport bmo_norm(const CircleFunction& u, int max_depth) {
  const std::size_t res = bmo_resolution(max_depth);
  const double h = kTwoPi / static_cast<double>(res);
  // Two turns so that wrapped intervals are contiguous.
  std::vector<double> v(2 * res + 1);
  for (std::size_t k = 0; k < res; ++k) v[k] = u.value(h * static_cast<double>(k));
  for (std::size_t k = res; k <= 2 * res; ++k) v[k] = v[k - res];
  const auto prefix = prefix_trapezoid(v, h);
  OscillationScan scan;
  for (int d = 0; d <= max_depth; ++d) {
    const std::size_t count = std::size_t{1} << d;
    const std::size_t m = res / count;
    auto visit = [&](std::size_t s) {
      const double osc = oscillation(v, prefix, s, m, h);
      ++scan.intervals;
      if (osc > scan.best) {
        scan.best = osc;
        scan.best_lo = h * static_cast<double>(s);
        scan.best_hi = h * static_cast<double>(s + m);
      }
    };
    for (std::size_t k = 0; k < count; ++k) visit(k * m);
    if (d > 0) {
      for (std::size_t k = 0; k < count; ++k) visit(k * m + m / 2);
    }
  }
  return bmo_report(scan, max_depth, res);
}

namespace {

constexpr std::size_t kMomentCells = std::size_t{1} << 14;

double moment_from_samples(const std::vector<double>& v, double len, double p, MomentKind kind) {
  const double h = len / static_cast<double>(v.size() - 1);
  const double mean = prefix_trapezoid(v, h).back() / len;
  CompensatedSum acc;
  if (kind == MomentKind::power && p == 1.0) {
    for (std::size_t k = 0; k + 1 < v.size(); ++k) acc.add(abs_linear_cell(v[k] - mean, v[k + 1] - mean, h));
    return acc.value() / len;
  }
  std::vector<double> g(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double a = std::abs(v[k] - mean);
    g[k] = kind == MomentKind::power ? std::pow(a, p) : std::expm1(a);
  }
  for (std::size_t k = 0; k + 1 < g.size(); ++k) acc.add(0.5 * h * (g[k] + g[k + 1]));
  return acc.value() / len;
}

void check_moment_args(Interval I, double p, MomentKind kind) {
  if (!(I.length() > 0.0) || !std::isfinite(I.lo) || !std::isfinite(I.hi)) {
    fail(ErrorKind::invalid_input, "degenerate interval");
  }
  if (kind == MomentKind::power && !(p >= 1.0)) fail(ErrorKind::invalid_input, "moment exponent must be >= 1");
}

}  // namespace

double jn_moment(const LineFunction& u, Interval I, double p, MomentKind kind) {
  check_moment_args(I, p, kind);
  if (I.lo < u.lo() - 1e-12 || I.hi > u.hi() + 1e-12) fail(ErrorKind::out_of_domain, "interval leaves the grid");
  std::vector<double> v(kMomentCells + 1);
  const double h = I.length() / static_cast<double>(kMomentCells);
  for (std::size_t k = 0; k <= kMomentCells; ++k) {
    v[k] = u(std::clamp(I.lo + h * static_cast<double>(k), u.lo(), u.hi()));
  }
  return moment_from_samples(v, I.length(), p, kind);
}

double jn_moment(const CircleFunction& u, Interval I, double p, MomentKind kind) {
  check_moment_args(I, p, kind);
  std::vector<double> v(kMomentCells + 1);
  const double h = I.length() / static_cast<double>(kMomentCells);
  for (std::size_t k = 0; k <= kMomentCells; ++k) v[k] = u.value(I.lo + h * static_cast<double>(k));
  return moment_from_samples(v, I.length(), p, kind);
}

double interval_mean(const LineFunction& u, Interval I) {
  if (!(I.length() > 0.0)) fail(ErrorKind::invalid_input, "degenerate interval");
  const std::size_t cells = 1024;
  const double h = I.length() / static_cast<double>(cells);
  CompensatedSum acc;
  for (std::size_t k = 0; k <= cells; ++k) {
    const double w = (k == 0 || k == cells) ? 0.5 * h : h;
    acc.add(w * u(I.lo + h * static_cast<double>(k)));
  }
  return acc.value() / I.length();
}

SeminormReport h32_norm(const CircleFunction& field) {
  return h12_circle(field.derivative_function());
}

SeminormReport h32_norm(const LineFunction& field) {
  return h12_line(field.derivative_function());
}

// ---------------------------------------------------------------------------
// Cayley transform

cplx cayley(cplx z) { return (z - cplx(0, 1)) / (z + cplx(0, 1)); }

cplx cayley_derivative(cplx z) {
  const cplx d = z + cplx(0, 1);
  return cplx(0, 2) / (d * d);
}

cplx cayley_inverse(cplx w) { return cplx(0, 1) * (1.0 + w) / (1.0 - w); }

double cayley_angle(double u) { return 2.0 * std::atan2(1.0, -u); }

double cayley_abscissa(double theta) {
  const double t = wrap_angle(theta);
  return -std::cos(0.5 * t) / std::sin(0.5 * t);
}

LineFunction cayley_pull(const CircleFunction& g, PullMode mode, std::vector<double> xs) {
  const std::size_t n = xs.size();
  if (mode == PullMode::vector_field) {
    double scale = 1.0;
    for (const auto& s : g.samples()) scale = std::max(scale, std::abs(s));
    for (std::size_t k = 0; k < g.size(); ++k) {
      const cplx w = std::polar(1.0, g.angle(k));
      if (std::abs((std::conj(w) * g.samples()[k]).real()) > 1e-9 * scale) {
        fail(ErrorKind::invalid_input, "vector-field pull needs a tangential field (Re conj(w) g(w) = 0)");
      }
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = (g.at(cayley_angle(xs[i])) / cayley_derivative(xs[i])).real();
    }
    LineMeta meta;
    meta.tail = Tail::none;
    meta.decay_exponent = std::abs(g.at(0.0)) > 1e-9 * scale ? 2.0 : 1.0;
    return LineFunction(std::move(xs), std::move(v), meta);
  }
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx val = g.at(cayley_angle(xs[i]));
    re[i] = val.real();
    im[i] = val.imag();
  }
  LineMeta meta;
  meta.tail = Tail::none;
  return LineFunction::complex(std::move(xs), std::move(re), g.is_real() ? std::vector<double>{} : std::move(im), meta);
}

CircleFunction cayley_push(const LineFunction& f, PullMode mode, std::size_t samples) {
  auto value_at = [&](double u) -> cplx {
    const cplx v = f.complex_at(std::clamp(u, f.lo(), f.hi()));
    return mode == PullMode::vector_field ? v * cayley_derivative(u) : v;
  };
  std::vector<cplx> s(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(samples);
    const double u = k == 0 ? 0.0 : cayley_abscissa(theta);
    if (k == 0 || u < f.lo() || u > f.hi()) {
      // The point at infinity and angles whose abscissa leaves the grid take
      // the limit value read off the grid ends.
      if (f.meta().tail == Tail::zero) {
        s[k] = 0.0;
      } else {
        const double end = k == 0 ? f.hi() : (u < f.lo() ? f.lo() : f.hi());
        s[k] = k == 0 ? 0.5 * (value_at(f.lo()) + value_at(f.hi())) : value_at(end);
      }
    } else {
      s[k] = value_at(u);
    }
  }
  return CircleFunction::from_samples(std::move(s), mode == PullMode::function && f.is_real());
}

}  // namespace wpflow
