#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "wpflow/numerics.hpp"

using namespace wpflow;

TEST_CASE("compensated sum recovers small terms") {
  std::vector<double> v = {1e16, 1.0, -1e16, 1.0};
  CHECK(compensated_sum(v) == 2.0);
}

TEST_CASE("errors carry their kind") {
  try {
    fail(ErrorKind::overflow, "too big");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::overflow);
    CHECK(std::string(e.what()) == "overflow: too big");
  }
}

TEST_CASE("grids") {
  const auto xs = uniform_nodes(-1.0, 1.0, 8);
  REQUIRE(xs.size() == 9);
  CHECK(xs.front() == -1.0);
  CHECK(xs.back() == 1.0);
  CHECK(uniform_step(xs) == doctest::Approx(0.25));
  const auto ys = log_nodes(0.01, 1.0, 3);
  CHECK(ys[1] == doctest::Approx(0.1));
  CHECK(uniform_step(ys) == 0.0);
  CHECK_THROWS_AS(uniform_nodes(1.0, 0.0, 4), Error);
  CHECK_THROWS_AS(log_nodes(0.0, 1.0, 4), Error);
}

TEST_CASE("five-point differences are exact on quartics") {
  const auto xs = uniform_nodes(-1.0, 2.0, 30);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(x * x * x * x - 2 * x);
  const auto d = differentiate(xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(d[i] == doctest::Approx(4 * std::pow(xs[i], 3) - 2).epsilon(1e-10));
}

TEST_CASE("nonuniform differences are exact on quadratics") {
  std::vector<double> xs = {0.0, 0.1, 0.35, 0.4, 1.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3 * x * x + x);
  const auto d = differentiate(xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(d[i] == doctest::Approx(6 * xs[i] + 1));
}

TEST_CASE("corrected cumulative integral is exact on cubics") {
  const auto xs = uniform_nodes(0.0, 2.0, 16);
  std::vector<double> f, df;
  for (double x : xs) {
    f.push_back(x * x * x);
    df.push_back(3 * x * x);
  }
  const auto F = cumulative_integral(xs, f, df);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(F[i] == doctest::Approx(std::pow(xs[i], 4) / 4).epsilon(1e-12));
}

TEST_CASE("hermite reproduces cubics and rejects outside points") {
  const auto xs = uniform_nodes(0.0, 1.0, 5);
  std::vector<double> y, d;
  for (double x : xs) {
    y.push_back(x * x * x - x);
    d.push_back(3 * x * x - 1);
  }
  const Hermite h(xs, y, d);
  CHECK(h.value(0.37) == doctest::Approx(0.37 * 0.37 * 0.37 - 0.37));
  CHECK(h.derivative(0.61) == doctest::Approx(3 * 0.61 * 0.61 - 1));
  CHECK_THROWS_AS(h.value(1.5), Error);
}

TEST_CASE("trapezoid and log-log slope") {
  const auto xs = uniform_nodes(0.0, 1.0, 4);
  std::vector<double> f(xs.size(), 2.0);
  CHECK(trapezoid(xs, f) == doctest::Approx(2.0));
  std::vector<double> a = {1, 2, 4}, b = {3, 12, 48};
  CHECK(loglog_slope(a, b) == doctest::Approx(2.0));
}

TEST_CASE("parallel_for touches every slot once") {
  set_worker_count(3);
  std::vector<int> v(1001, 0);
  parallel_for(v.size(), [&](std::size_t i) { v[i] += static_cast<int>(i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i));
  CHECK(worker_count() == 3);
  set_worker_count(0);
}

TEST_CASE("parallel_for rethrows") {
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) fail(ErrorKind::divergence, "x");
                  }),
                  Error);
}
