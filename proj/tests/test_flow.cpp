#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "wpflow/flow.hpp"

using namespace wpflow;

namespace {

const Window win{2.0, 4.0};

LineFunction logistic() {
  return LineFunction::sample([](double u) { return u * (1 - u) * win(u - 0.5); }, 16.0, 1.0 / 64.0);
}

double exact(double x, double t) {
  const double e = std::exp(t);
  return x * e / (1 + x * (e - 1));
}

std::vector<double> knots(int n, double t_end = 1.0) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(t_end * k / n);
  return out;
}

CircleFunction circ(const std::function<double(double)>& f) {
  return CircleFunction::sample([&](double t) { return cplx(f(t), 0.0); }, 512, true);
}

}  // namespace

TEST_CASE("zero field gives the identity") {
  const auto zero = LineFunction::sample([](double) { return 0.0; }, 16.0, 1.0 / 64.0);
  const auto f = TimeDependentField::autonomous(zero, 1.0);
  const auto P = default_particles(Domain::line, 64);
  const auto c = integrate_flow(f, 100, P, knots(5));
  for (const auto& s : c.snapshots) {
    for (std::size_t i = 0; i < P.size(); ++i) CHECK(s.ys()[i] == P[i]);
  }
  for (const auto& l : flow_log_derivative(c)) CHECK(std::abs(l.values()[7]) < 1e-14);
  CHECK(check_logderiv_ode(c, f).sup < 1e-14);
  for (double s : smoothness_probe(c).seminorms) CHECK(s == doctest::Approx(0.0));
}

TEST_CASE("rigid rotation") {
  const auto f = TimeDependentField::autonomous(circ([](double) { return 1.0; }), 2.0);
  const auto P = default_particles(Domain::circle, 128);
  const auto c = integrate_flow(f, 200, P, knots(4, 2.0));
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    for (std::size_t i = 0; i < P.size(); ++i) CHECK(c.snapshots[k].ys()[i] == doctest::Approx(P[i] + c.times[k]));
  }
  for (const auto& l : flow_log_derivative(c)) CHECK(std::abs(l.values()[3]) < 1e-12);
}

TEST_CASE("logistic closed form") {
  const auto f = TimeDependentField::autonomous(logistic(), 1.0);
  const auto P = default_particles(Domain::line, 512);
  const auto c = integrate_flow(f, 1000, P, knots(20));
  double err = 0.0, lerr = 0.0;
  const auto logs = flow_log_derivative(c);
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    const double t = c.times[k];
    for (std::size_t i = 0; i < P.size(); ++i) {
      err = std::max(err, std::abs(c.snapshots[k].ys()[i] - exact(P[i], t)));
      lerr = std::max(lerr, std::abs(logs[k].values()[i] - (t - 2 * std::log(1 + P[i] * (std::exp(t) - 1)))));
    }
  }
  CHECK(err < 1e-6);
  CHECK(lerr < 1e-5);
  CHECK(check_logderiv_ode(c, f).sup < 1e-4);
  for (const auto& s : c.snapshots) {
    CHECK(std::abs(s.ys().front()) < 1e-12);
    CHECK(std::abs(s.ys().back() - 1.0) < 1e-12);
  }
}

TEST_CASE("fourth-order self-convergence") {
  const auto f = TimeDependentField::autonomous(logistic(), 1.0);
  const auto P = default_particles(Domain::line, 128);
  auto err = [&](std::size_t n) {
    const auto c = integrate_flow(f, n, P, {1.0});
    double m = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) m = std::max(m, std::abs(c.snapshots.back().ys()[i] - exact(P[i], 1.0)));
    return m;
  };
  const double q = err(10) / err(20);
  CHECK(q >= 12.0);
  CHECK(q <= 20.0);
}

TEST_CASE("semigroup property") {
  const auto f = TimeDependentField::autonomous(logistic(), 1.0);
  const auto P = default_particles(Domain::line, 128);
  const auto whole = integrate_flow(f, 400, P, {1.0});
  const auto a = integrate_flow(f, 100, P, {0.25});
  const auto b = integrate_flow(f, 300, a.snapshots.back().ys(), {0.75});
  for (std::size_t i = 0; i < P.size(); ++i) {
    CHECK(std::abs(b.snapshots.back().ys()[i] - whole.snapshots.back().ys()[i]) < 1e-10);
  }
}

TEST_CASE("circle snapshots") {
  const auto f = TimeDependentField::autonomous(circ([](double t) { return std::sin(t); }), 1.0);
  const auto P = default_particles(Domain::circle, 512);
  const auto c = integrate_flow(f, 1000, P, knots(20));
  for (const auto& s : c.snapshots) {
    CHECK(s.ys().back() - s.ys().front() == doctest::Approx(2 * kPi).epsilon(1e-15));
    for (std::size_t i = 0; i + 1 < s.ys().size(); ++i) CHECK(s.ys()[i + 1] > s.ys()[i]);
  }
  CHECK(check_logderiv_ode(c, f).sup < 1e-3);
}

TEST_CASE("circle to line conjugation") {
  const auto a = circ([](double t) { return 0.5 * std::sin(t) * (1 + std::sin(t)); });
  const auto nf = TimeDependentField::autonomous(a, 1.0, true);
  const auto lf = conjugate_circle_to_line(nf);
  CHECK(lf.value(0.3, 0.0) == doctest::Approx(0.0));
  CHECK(lf.value(0.3, 1.0) == doctest::Approx(0.0));
  const double u = 2.5;
  CHECK(lf.value(0.0, u) == doctest::Approx(a.value(cayley_angle(u)) * (1 + u * u) / 2).epsilon(1e-8));
  const auto P = default_particles(Domain::line, 256);
  const auto lc = integrate_flow(lf, 1000, P, knots(20));
  CHECK(check_logderiv_ode(lc, lf).sup < 1e-3);
  const auto nc = integrate_flow(nf, 1000, default_particles(Domain::circle, 512), knots(20));
  const auto hx = conjugate_snapshot(nc.snapshots.back(), P);
  for (std::size_t i = 0; i < P.size(); ++i) CHECK(std::abs(hx[i] - lc.snapshots.back().ys()[i]) < 1e-4);
  const auto zf = conjugate_circle_to_line(TimeDependentField::autonomous(circ([](double) { return 0.0; }), 1.0));
  CHECK(zf.value(0.5, 3.0) == 0.0);
  CHECK_THROWS_AS(TimeDependentField::autonomous(circ([](double t) { return std::cos(t); }), 1.0, true), Error);
}

TEST_CASE("smoothness probe") {
  const auto f = TimeDependentField::autonomous(logistic(), 1.0);
  const auto P = default_particles(Domain::line, 512);
  const auto coarse = smoothness_probe(integrate_flow(f, 1000, P, knots(10)));
  const auto fine = smoothness_probe(integrate_flow(f, 1000, P, knots(20)));
  CHECK(fine.max_jump < coarse.max_jump);
  for (double r : fine.ratios) {
    CHECK(r >= 0.9);
    CHECK(r <= 1.1);
  }
}

TEST_CASE("integrator errors") {
  const auto f = TimeDependentField::autonomous(logistic(), 1.0);
  const auto P = default_particles(Domain::line, 16);
  CHECK_THROWS_AS(integrate_flow(f, 10, P, {0.33}), Error);
  const auto fast = LineFunction::sample([](double) { return 100.0; }, 16.0, 1.0 / 64.0);
  try {
    integrate_flow(TimeDependentField::autonomous(fast, 1.0, false), 100, P, {1.0});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::out_of_domain);
  }
  CHECK_THROWS_AS(TimeDependentField::autonomous(fast, 1.0, true), Error);
}

TEST_CASE("flow csv") {
  const auto f = TimeDependentField::autonomous(logistic(), 1.0);
  const auto c = integrate_flow(f, 10, default_particles(Domain::line, 4), {1.0});
  std::ostringstream os;
  write_flow_csv(c, os);
  CHECK(os.str().rfind("t,x,h,dh,log_dh\n", 0) == 0);
}
