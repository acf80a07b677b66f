#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wpflow/numerics.hpp"

namespace wpflow {

// ---------------------------------------------------------------------------
// Line functions

/// Smooth cutoff: 1 on |x| <= plateau, 0 on |x| >= edge, C-infinity between.
/// An edge of 0 means "no taper".
struct Window {
  double plateau = 0.0;
  double edge = 0.0;

  bool active() const { return edge > 0.0; }
  double operator()(double x) const;
};

/// How a line function continues past its grid. `zero` means the function
/// is windowed and vanishes identically outside; `none` means the function
/// is only known on the grid and integrals stop there.
enum class Tail { zero, none };

struct LineMeta {
  Tail tail = Tail::zero;
  /// Declared alpha with f(t) = O(|t|^alpha) at infinity.
  double decay_exponent = 0.0;
  Window window{};
};

class LineFunction {
 public:
  LineFunction() = default;

  /// Real samples. Missing derivative samples are filled by finite differences.
  LineFunction(std::vector<double> xs, std::vector<double> values,
               LineMeta meta = {}, std::vector<double> derivatives = {});

  /// Complex samples (imag may be empty for a real function).
  static LineFunction complex(std::vector<double> xs, std::vector<double> re,
                              std::vector<double> im, LineMeta meta = {});

  /// Samples f on the uniform grid [-half_width, half_width] with the given step.
  static LineFunction sample(const std::function<double(double)>& f,
                             double half_width, double step, LineMeta meta = {},
                             const std::function<double(double)>& df = {});

  static LineFunction sample_on(const std::function<double(double)>& f,
                                std::vector<double> xs, LineMeta meta = {},
                                const std::function<double(double)>& df = {});

  const std::vector<double>& xs() const { return re_.xs(); }
  const std::vector<double>& values() const { return re_.ys(); }
  const std::vector<double>& derivatives() const { return re_.ds(); }
  const std::vector<double>& imag_values() const { return im_.ys(); }
  bool is_real() const { return im_.empty(); }
  const LineMeta& meta() const { return meta_; }
  std::size_t size() const { return re_.xs().size(); }

  double lo() const { return re_.lo(); }
  double hi() const { return re_.hi(); }
  /// Uniform grid step, or 0 for a nonuniform grid.
  double step() const { return step_; }
  bool contains(double x) const { return re_.contains(x); }

  /// Real part at x. Outside the grid: 0 for Tail::zero, an out-of-domain
  /// error for Tail::none.
  double operator()(double x) const;
  cplx complex_at(double x) const;
  double derivative(double x) const;

  /// u' as a line function on the same grid.
  LineFunction derivative_function() const;

  LineFunction scaled(double factor) const;
  LineFunction plus_constant(double c) const;
  LineFunction with_meta(LineMeta meta) const;

  /// Trapezoid mean over the grid.
  double mean() const;

 private:
  Hermite re_;
  Hermite im_;
  LineMeta meta_;
  double step_ = 0.0;
};

// ---------------------------------------------------------------------------
// Circle functions

/// Periodic function carried both as M uniform samples theta_k = 2 pi k / M and
/// as Fourier coefficients c_{-N..N}; the two agree under the discrete
/// Fourier relation.
class CircleFunction {
 public:
  CircleFunction() = default;

  static CircleFunction from_coeffs(std::vector<cplx> coeffs, std::size_t samples,
                                    bool real);
  /// N defaults to M/2 - 1 (the Nyquist mode is dropped).
  static CircleFunction from_samples(std::vector<cplx> samples, bool real,
                                     int bandwidth = -1);
  static CircleFunction sample(const std::function<cplx(double)>& f,
                               std::size_t samples, bool real, int bandwidth = -1);

  std::size_t size() const { return samples_.size(); }
  int bandwidth() const { return bandwidth_; }
  bool is_real() const { return real_; }
  const std::vector<cplx>& samples() const { return samples_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int n) const;
  double angle(std::size_t k) const;

  /// Cubic Hermite interpolation of the samples with spectral slopes.
  cplx at(double theta) const;
  cplx derivative_at(double theta) const;
  double value(double theta) const { return at(theta).real(); }
  double derivative(double theta) const { return derivative_at(theta).real(); }

  /// Exact trigonometric polynomial evaluation.
  cplx spectral(double theta) const;

  CircleFunction derivative_function() const;
  CircleFunction scaled(double factor) const;

 private:
  void build_interpolants();

  std::vector<cplx> samples_;
  std::vector<cplx> coeffs_;
  std::vector<cplx> slopes_;
  int bandwidth_ = 0;
  bool real_ = true;
};

// ---------------------------------------------------------------------------
// Increasing maps

enum class Domain { line, circle };

/// Strictly increasing sampled homeomorphism of R (or lifted map of S^1).
/// Derivative samples are optional; without them interpolation uses finite
/// differences and has_derivative() is false.
class IncreasingMap {
 public:
  IncreasingMap() = default;
  IncreasingMap(Domain domain, std::vector<double> xs, std::vector<double> ys,
                std::vector<double> dys = {});

  static IncreasingMap identity(Domain domain, std::vector<double> xs);

  Domain domain() const { return domain_; }
  const std::vector<double>& xs() const { return forward_.xs(); }
  const std::vector<double>& ys() const { return forward_.ys(); }
  const std::vector<double>& dys() const { return forward_.ds(); }
  bool has_derivative() const { return has_derivative_; }

  double operator()(double x) const;
  double derivative(double x) const;
  /// Monotone cubic inverse, built from the same samples with slopes 1/h'.
  double inverse(double y) const;

  double lo() const { return forward_.lo(); }
  double hi() const { return forward_.hi(); }

 private:
  Domain domain_ = Domain::line;
  Hermite forward_;
  Hermite backward_;
  bool has_derivative_ = false;
};

// ---------------------------------------------------------------------------
// Seminorm engines

enum class SeminormMethod { fourier, gagliardo, dyadic };
const char* to_string(SeminormMethod method);

/// For the H^1/2 and H^3/2 engines `value` is the squared seminorm; for BMO it
/// is the norm itself. `metadata` records every truncation parameter.
struct SeminormReport {
  double value = 0.0;
  SeminormMethod method = SeminormMethod::fourier;
  std::vector<std::pair<std::string, double>> metadata;

  double seminorm() const;
  double meta(std::string_view key) const;
};

/// Squared H^1/2 seminorm on the circle, normalized by 1/(4 pi^2). The
/// Fourier route returns sum |n| |c_n|^2; the Gagliardo route is the direct
/// double integral (an independent oracle).
SeminormReport h12_circle(const CircleFunction& u,
                          SeminormMethod method = SeminormMethod::fourier);

/// Squared H^1/2 seminorm on the line, (1/4 pi^2) int int |u(x)-u(y)|^2/(x-y)^2.
/// The band |x-y| < cutoff is replaced by 2 cutoff int u'^2; for Tail::zero
/// the exterior of the grid is added in closed form. Default cutoff is the
/// grid step.
SeminormReport h12_line(const LineFunction& u,
                        std::optional<double> diag_cutoff = std::nullopt);

inline constexpr int kDefaultBmoDepth = 10;

/// Supremum of the mean oscillation over dyadic subintervals of the domain to
/// depth max_depth, together with their translates by half a length.
SeminormReport bmo_norm(const LineFunction& u, int max_depth = kDefaultBmoDepth);
SeminormReport bmo_norm(const CircleFunction& u, int max_depth = kDefaultBmoDepth);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

enum class MomentKind { power, exponential };

/// (1/|I|) int_I |u - u_I|^p, or (1/|I|) int_I (e^{|u-u_I|} - 1) for the
/// exponential kind (p ignored).
double jn_moment(const LineFunction& u, Interval interval, double p,
                 MomentKind kind = MomentKind::power);
double jn_moment(const CircleFunction& u, Interval interval, double p,
                 MomentKind kind = MomentKind::power);

/// Average of u over I (trapezoid on a refined sub-grid).
double interval_mean(const LineFunction& u, Interval interval);

/// H^1/2 seminorm of the derivative.
SeminormReport h32_norm(const CircleFunction& field);
SeminormReport h32_norm(const LineFunction& field);

// ---------------------------------------------------------------------------
// Cayley transform gamma(z) = (z - i)/(z + i)

cplx cayley(cplx z);
cplx cayley_derivative(cplx z);
cplx cayley_inverse(cplx w);
/// Angle in (0, 2 pi) of gamma(u) for real u; gamma(0) = -1 sits at pi.
double cayley_angle(double u);
/// Real u with gamma(u) = e^{i theta}, i.e. -cot(theta/2).
double cayley_abscissa(double theta);

enum class PullMode { function, vector_field };

/// Composes a circle function with the Cayley transform. In vector-field mode
/// the result is divided by gamma' and must be real, which requires g to be
/// tangential (Re conj(w) g(w) = 0).
LineFunction cayley_pull(const CircleFunction& g, PullMode mode,
                         std::vector<double> xs);
/// Inverse of cayley_pull onto M uniform angles.
CircleFunction cayley_push(const LineFunction& f, PullMode mode,
                           std::size_t samples);

}  // namespace wpflow
