#include "wpflow/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace wpflow {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::out_of_domain: return "out-of-domain";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::monotonicity: return "monotonicity";
    case ErrorKind::step_size: return "step-size";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

double compensated_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

namespace {
std::atomic<unsigned> configured_workers{0};
}

void set_worker_count(unsigned n) { configured_workers = n; }

unsigned worker_count() {
  if (const unsigned n = configured_workers.load()) return n;
  if (const char* env = std::getenv("WPFLOW_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> uniform_nodes(double lo, double hi, std::size_t cells) {
  if (cells == 0 || !(hi > lo)) fail(ErrorKind::invalid_input, "uniform_nodes needs hi > lo and cells > 0");
  std::vector<double> xs(cells + 1);
  const double h = (hi - lo) / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) xs[i] = lo + h * static_cast<double>(i);
  xs.back() = hi;
  return xs;
}

std::vector<double> log_nodes(double lo, double hi, std::size_t count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) fail(ErrorKind::invalid_input, "log_nodes needs 0 < lo < hi and count >= 2");
  std::vector<double> ys(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t j = 0; j < count; ++j) {
    ys[j] = std::exp(a + (b - a) * static_cast<double>(j) / static_cast<double>(count - 1));
  }
  ys.front() = lo;
  ys.back() = hi;
  return ys;
}

std::vector<double> trapezoid_weights(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = xs[i + 1] - xs[i];
    w[i] += 0.5 * h;
    w[i + 1] += 0.5 * h;
  }
  return w;
}

double uniform_step(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (std::abs((xs[i + 1] - xs[i]) - h) > 1e-12 * std::abs(h) + 1e-14) return 0.0;
  }
  return h;
}

std::vector<double> differentiate(std::span<const double> xs,
                                  std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) fail(ErrorKind::invalid_input, "differentiate needs matching samples (n >= 2)");
  std::vector<double> d(n);
  const double h = uniform_step(xs);
  if (h > 0.0 && n >= 5) {
    const double c = 1.0 / (12.0 * h);
    d[0] = c * (-25 * ys[0] + 48 * ys[1] - 36 * ys[2] + 16 * ys[3] - 3 * ys[4]);
    d[1] = c * (-3 * ys[0] - 10 * ys[1] + 18 * ys[2] - 6 * ys[3] + ys[4]);
    for (std::size_t i = 2; i + 2 < n; ++i) {
      d[i] = c * (ys[i - 2] - 8 * ys[i - 1] + 8 * ys[i + 1] - ys[i + 2]);
    }
    const std::size_t m = n - 1;
    d[m] = c * (25 * ys[m] - 48 * ys[m - 1] + 36 * ys[m - 2] - 16 * ys[m - 3] + 3 * ys[m - 4]);
    d[m - 1] = c * (3 * ys[m] + 10 * ys[m - 1] - 18 * ys[m - 2] + 6 * ys[m - 3] - ys[m - 4]);
    return d;
  }
  if (n == 2) {
    d[0] = d[1] = (ys[1] - ys[0]) / (xs[1] - xs[0]);
    return d;
  }
  // Three-point Lagrange derivatives on a nonuniform grid.
  auto lagrange = [&](std::size_t i0, double x) {
    const double x0 = xs[i0], x1 = xs[i0 + 1], x2 = xs[i0 + 2];
    return ys[i0] * ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2)) +
           ys[i0 + 1] * ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2)) +
           ys[i0 + 2] * ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
  };
  d[0] = lagrange(0, xs[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = lagrange(i - 1, xs[i]);
  d[n - 1] = lagrange(n - 3, xs[n - 1]);
  return d;
}

std::vector<double> cumulative_integral(std::span<const double> xs,
                                        std::span<const double> fs,
                                        std::span<const double> dfs) {
  const std::size_t n = xs.size();
  if (n != fs.size() || n < 2) fail(ErrorKind::invalid_input, "cumulative_integral needs matching samples");
  std::vector<double> out(n, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 1; i < n; ++i) {
    acc.add(0.5 * (xs[i] - xs[i - 1]) * (fs[i] + fs[i - 1]));
    out[i] = acc.value();
  }
  const double h = uniform_step(xs);
  if (h > 0.0 && dfs.size() == n) {
    const double c = h * h / 12.0;
    for (std::size_t i = 1; i < n; ++i) out[i] -= c * (dfs[i] - dfs[0]);
  }
  return out;
}

Hermite::Hermite(std::vector<double> xs, std::vector<double> ys,
                 std::vector<double> ds)
    : xs_(std::move(xs)), ys_(std::move(ys)), ds_(std::move(ds)) {
  if (xs_.size() < 2 || ys_.size() != xs_.size() || ds_.size() != xs_.size()) {
    fail(ErrorKind::invalid_input, "Hermite needs >= 2 nodes with values and slopes");
  }
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    if (!(xs_[i + 1] > xs_[i])) fail(ErrorKind::invalid_input, "Hermite nodes must be strictly increasing");
  }
  step_ = uniform_step(xs_);
}

std::size_t Hermite::cell(double x) const {
  if (!(x >= xs_.front() - 1e-12 * (1.0 + std::abs(xs_.front())) &&
        x <= xs_.back() + 1e-12 * (1.0 + std::abs(xs_.back())))) {
    std::ostringstream os;
    os << "x=" << x << " outside [" << xs_.front() << ", " << xs_.back() << "]";
    fail(ErrorKind::out_of_domain, os.str());
  }
  const std::size_t last = xs_.size() - 2;
  if (step_ > 0.0) {
    const double k = std::floor((x - xs_.front()) / step_);
    if (k <= 0.0) return 0;
    const auto i = static_cast<std::size_t>(k);
    return std::min(i, last);
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  return std::min(i, last);
}

double Hermite::value(double x) const {
  const std::size_t i = cell(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * ys_[i] + h10 * h * ds_[i] + h01 * ys_[i + 1] + h11 * h * ds_[i + 1];
}

double Hermite::derivative(double x) const {
  const std::size_t i = cell(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t;
  const double d00 = (6 * t2 - 6 * t) / h;
  const double d10 = 3 * t2 - 4 * t + 1;
  const double d01 = (-6 * t2 + 6 * t) / h;
  const double d11 = 3 * t2 - 2 * t;
  return d00 * ys_[i] + d10 * ds_[i] + d01 * ys_[i + 1] + d11 * ds_[i + 1];
}

double trapezoid(std::span<const double> xs, std::span<const double> fs) {
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    s.add(0.5 * (xs[i + 1] - xs[i]) * (fs[i] + fs[i + 1]));
  }
  return s.value();
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) fail(ErrorKind::invalid_input, "loglog_slope needs >= 2 pairs");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) fail(ErrorKind::invalid_input, "loglog_slope needs positive data");
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace wpflow
