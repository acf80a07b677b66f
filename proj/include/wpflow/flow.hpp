#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "wpflow/functions.hpp"

namespace wpflow {

enum class TimeInterp { linear, cubic };

/// Velocity field sampled at time knots. Line fields give dx/dt = omega(t, x);
/// circle fields give the angular speed d theta/dt = a(t, theta).
class TimeDependentField {
 public:
  TimeDependentField() = default;

  static TimeDependentField line(std::vector<double> knots, std::vector<LineFunction> fields,
                                 TimeInterp interp = TimeInterp::linear,
                                 bool require_normalized = true);
  static TimeDependentField circle(std::vector<double> knots, std::vector<CircleFunction> fields,
                                   TimeInterp interp = TimeInterp::linear,
                                   bool three_point = false);
  static TimeDependentField autonomous(const LineFunction& f, double t_end,
                                       bool require_normalized = true);
  static TimeDependentField autonomous(const CircleFunction& a, double t_end,
                                       bool three_point = false);

  Domain domain() const { return domain_; }
  TimeInterp interp() const { return interp_; }
  const std::vector<double>& knots() const { return knots_; }
  double t_end() const { return knots_.back(); }
  bool three_point() const { return three_point_; }
  const std::vector<LineFunction>& line_fields() const { return line_; }
  const std::vector<CircleFunction>& circle_fields() const { return circle_; }

  double value(double t, double x) const;
  /// Spatial derivative of the velocity.
  double derivative(double t, double x) const;

 private:
  // Knot indices and weights for time t.
  struct Blend {
    std::size_t idx[4];
    double w[4];
    int count;
  };
  Blend blend(double t) const;
  double knot_value(std::size_t k, double x) const;
  double knot_derivative(std::size_t k, double x) const;

  Domain domain_ = Domain::line;
  TimeInterp interp_ = TimeInterp::linear;
  std::vector<double> knots_;
  std::vector<LineFunction> line_;
  std::vector<CircleFunction> circle_;
  bool three_point_ = false;
};

struct FlowCurve {
  Domain domain = Domain::line;
  std::vector<double> times;
  std::vector<IncreasingMap> snapshots;
  double step = 0.0;
  std::size_t n_steps = 0;
  int order = 4;
};

/// Uniform particles: line [lo, hi] with `count` cells; circle [0, 2 pi].
std::vector<double> default_particles(Domain domain, std::size_t count = 512,
                                      double lo = 0.0, double hi = 1.0);

/// Classical RK4 for each particle over [0, t_end] with n_steps equal steps.
/// Snapshots are taken at `outputs` (multiples of the step); 0 is always
/// included. Circle particles must span [theta_0, theta_0 + 2 pi].
FlowCurve integrate_flow(const TimeDependentField& field, std::size_t n_steps,
                         const std::vector<double>& particles,
                         const std::vector<double>& outputs);

/// log h'(t, .) per snapshot on the particle grid.
std::vector<LineFunction> flow_log_derivative(const FlowCurve& curve);

struct ResidualReport {
  double sup = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

/// Time difference of log h' against omega'(t, h(t, .)) at interior knots.
/// Knots must be equally spaced; differences are fourth order when five or
/// more knots are available.
ResidualReport check_logderiv_ode(const FlowCurve& curve, const TimeDependentField& field);

/// omega(t, u) = lambda(t, gamma(u)) / gamma'(u) for a circle angular speed,
/// i.e. a(theta(u)) (1 + u^2) / 2, sampled on [-X, X].
TimeDependentField conjugate_circle_to_line(const TimeDependentField& field,
                                            double half_width = 16.0,
                                            double step = 1.0 / 64.0);

/// gamma^-1 o g o gamma for a circle snapshot, evaluated at line points.
std::vector<double> conjugate_snapshot(const IncreasingMap& circle_map,
                                       const std::vector<double>& xs);

struct SmoothnessReport {
  std::vector<double> seminorms;     // H^1/2 seminorm of log h'(t_k, .)
  double max_jump = 0.0;             // largest change between neighbouring knots
  std::vector<double> deltas;        // difference-quotient spacings, coarse to fine
  std::vector<double> quotients;     // ||log h'(t+D) - log h'(t)|| / D
  std::vector<double> ratios;        // successive quotient ratios
};

/// Difference quotients are taken at the first knot with deltas of 4, 2 and 1
/// knot spacings.
SmoothnessReport smoothness_probe(const FlowCurve& curve);

/// Per snapshot: t, x, h, h', log h'.
void write_flow_csv(const FlowCurve& curve, std::ostream& os);

}  // namespace wpflow
