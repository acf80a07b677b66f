#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpflow {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

enum class ErrorKind {
  invalid_input,
  out_of_domain,
  overflow,
  resolution,
  monotonicity,
  step_size,
  degeneracy,
  divergence,
  parse,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// CLI) can map it to a diagnostic without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Neumaier-compensated accumulator. Summation order is the caller's order,
// so results are reproducible bit for bit.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(cplx v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

double compensated_sum(std::span<const double> values);

/// Worker count: the configured override if nonzero, else WPFLOW_WORKERS if
/// set and positive, else hardware threads.
unsigned worker_count();
void set_worker_count(unsigned n);

/// Runs body(i) for i in [0, n) on a bounded pool of contiguous chunks.
/// Bodies must write only to slot i; no reduction happens here.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// ---------------------------------------------------------------------------
// Grids and interpolation

std::vector<double> uniform_nodes(double lo, double hi, std::size_t cells);
std::vector<double> log_nodes(double lo, double hi, std::size_t count);

/// Trapezoid weights for an arbitrary strictly increasing node set.
std::vector<double> trapezoid_weights(std::span<const double> xs);

/// Returns the common step when xs is uniform to 1e-12 relative, else 0.
double uniform_step(std::span<const double> xs);

/// d/dx of samples. Uniform grids use five-point fourth-order stencils
/// (one-sided at the ends); other grids use three-point second-order ones.
std::vector<double> differentiate(std::span<const double> xs,
                                  std::span<const double> ys);

/// Primitive F(x_i) = int_{x_0}^{x_i} f with F(x_0) = 0. Uniform grids add
/// the Euler-Maclaurin endpoint correction using the supplied derivative
/// samples, which lifts the trapezoid rule to fourth order.
std::vector<double> cumulative_integral(std::span<const double> xs,
                                        std::span<const double> fs,
                                        std::span<const double> dfs);

/// Piecewise cubic Hermite interpolant through (x_i, y_i, y'_i).
class Hermite {
 public:
  Hermite() = default;
  Hermite(std::vector<double> xs, std::vector<double> ys,
          std::vector<double> ds);

  double lo() const { return xs_.front(); }
  double hi() const { return xs_.back(); }
  bool contains(double x) const { return x >= lo() && x <= hi(); }
  bool empty() const { return xs_.empty(); }

  /// Value at x; x must lie within [lo, hi].
  double value(double x) const;
  double derivative(double x) const;

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  const std::vector<double>& ds() const { return ds_; }

 private:
  std::size_t cell(double x) const;

  std::vector<double> xs_, ys_, ds_;
  double step_ = 0.0;
};

/// Compensated trapezoid rule on an arbitrary grid.
double trapezoid(std::span<const double> xs, std::span<const double> fs);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace wpflow
