#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wpflow/reich.hpp"

using namespace wpflow;

namespace {

BoundaryFunction gauss_boundary(double step = 1.0 / 512.0) {
  return BoundaryFunction(0.0, 0.0, LineFunction::sample([](double x) { return std::exp(-x * x); }, 16.0, step));
}

const GridSpec small{4.0, 1.0 / 16.0, 2.0, 64, 32};

}  // namespace

TEST_CASE("A on affine and zero data") {
  const cplx z(0.3, 0.7);
  CHECK(std::abs(reich_A(BoundaryFunction::affine(0.0, 0.0), z)) == 0.0);
  CHECK(std::abs(reich_A3(BoundaryFunction::affine(2.0, 0.0), z)) < 1e-14);
  CHECK(std::abs(reich_A3(BoundaryFunction::affine(0.0, 1.0), z)) < 1e-14);
  CHECK(std::abs(reich_H_at(BoundaryFunction::affine(2.0, 0.0), z) - 2.0) < 1e-12);
  CHECK(std::abs(reich_H_at(BoundaryFunction::affine(0.0, 1.0), z) - z) < 1e-12);
}

TEST_CASE("A golden at i/2") {
  const auto g = LineFunction::sample([](double t) { return 1.0 / (1.0 + t * t); }, 64.0, 1.0 / 512.0);
  const cplx a = reich_A(BoundaryFunction(0.0, 0.0, g), cplx(0.0, 0.5));
  CHECK(a.real() == doctest::Approx(5.0 / 12.0).epsilon(1e-8));
  CHECK(std::abs(a.imag()) < 1e-8);
}

TEST_CASE("boundary recovery at rate O(y)") {
  const auto f = gauss_boundary();
  std::vector<double> ys = {0.1, 0.05, 0.025}, errs;
  for (double y : ys) errs.push_back(std::abs(reich_A(f, cplx(0.3, y)).real() - f(0.3)));
  CHECK(errs[2] < errs[1]);
  CHECK(loglog_slope(ys, errs) == doctest::Approx(1.0).epsilon(0.25));
  try {
    reich_A(f, cplx(0.0, 1e-3));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resolution);
  }
}

TEST_CASE("H reproduces constants and the identity") {
  const HalfPlaneGrid grid(small);
  const auto c = reich_H(BoundaryFunction::affine(3.0, 0.0), grid);
  const auto t = reich_H(BoundaryFunction::affine(0.0, 1.0), grid);
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      CHECK(std::abs(c.values.at(i, j) - 3.0) < 1e-10);
      CHECK(std::abs(t.values.at(i, j) - cplx(grid.x(i), grid.y(j))) < 1e-10);
    }
  }
  CHECK(qd_energy(c, grid) < 1e-16);
  CHECK(qd_energy(t, grid) < 1e-16);
}

TEST_CASE("dbar H identity") {
  const HalfPlaneGrid grid(small);
  CHECK(check_dbar_identity(BoundaryFunction::affine(2.0, 0.0), grid).sup < 1e-10);
  CHECK(check_dbar_identity(BoundaryFunction::affine(0.0, 1.0), grid).sup < 1e-10);
  const double h = grid.hx();
  CHECK(check_dbar_identity(gauss_boundary(), grid).sup <= std::max(1e-3, 20 * h * h));
}

TEST_CASE("qd energy under refinement") {
  const auto f = gauss_boundary();
  const HalfPlaneGrid a(GridSpec{4.0, 1.0 / 16.0, 2.0, 64, 32});
  const HalfPlaneGrid b(GridSpec{4.0, 1.0 / 16.0, 2.0, 128, 63});
  const double qa = qd_energy(reich_H(f, a), a);
  const double qb = qd_energy(reich_H(f, b), b);
  CHECK(qa > 0.0);
  CHECK(qb == doctest::Approx(qa).epsilon(2e-2));
}

TEST_CASE("analytic family") {
  const HalfPlaneGrid g(analytic_family_grid());
  const auto c2 = dirichlet_closed_form(2);
  CHECK(c2.lhs.real() == doctest::Approx(kPi / 4));
  CHECK(c2.rhs.real() == doctest::Approx(kPi / 8));
  const auto d2 = dirichlet_equiv(2, g);
  CHECK(d2.lhs.real() == doctest::Approx(kPi / 4).epsilon(3e-2));
  CHECK(d2.rhs.real() == doctest::Approx(kPi / 8).epsilon(3e-2));
  const auto s = dirichlet_equiv(2, g, 3.0);
  CHECK(s.lhs.real() == doctest::Approx(9 * d2.lhs.real()));
  CHECK((s.lhs / s.rhs).real() == doctest::Approx((d2.lhs / d2.rhs).real()));
  for (int k = 2; k <= 4; ++k) {
    const auto d = dirichlet_equiv(k, g);
    const double r = d.lhs.real() / d.rhs.real();
    CHECK(r > 0.1);
    CHECK(r < 10.0);
  }
  CHECK_THROWS_AS(dirichlet_closed_form(1), Error);
  CHECK_THROWS_AS(dirichlet_equiv(1, g), Error);
}

TEST_CASE("reproducing formula") {
  const HalfPlaneGrid g(GridSpec{64.0, 1.0 / 1024.0, 64.0, 512, 256});
  const auto r = reproducing_check(2, cplx(0.0, 2.0), g);
  CHECK(std::abs(r.lhs - cplx(-1.0 / 9.0, 0.0)) < 1e-14);
  CHECK(std::abs(r.rhs - r.lhs) / std::abs(r.lhs) < 1e-2);
  const HalfPlaneGrid half(GridSpec{32.0, 1.0 / 1024.0, 32.0, 256, 240});
  const auto q = reproducing_check(2, cplx(0.0, 2.0), half);
  CHECK(std::abs(q.rhs - q.lhs) > std::abs(r.rhs - r.lhs));
}

TEST_CASE("area representation of A'''") {
  const HalfPlaneGrid grid(small);
  const auto c = BoundaryFunction::affine(1.0, 0.0);
  const auto p = check_a3_representation(c, reich_H(c, grid), cplx(0.0, 1.0), grid);
  CHECK(std::abs(p.lhs) < 1e-12);
  CHECK(std::abs(p.rhs) < 1e-12);
}

TEST_CASE("cayley transfer") {
  const auto zero = CircleFunction::sample([](double) { return cplx(0, 0); }, 64, true);
  CHECK(cayley_transfer_check(zero).residual == 0.0);
  const auto a = CircleFunction::sample(
      [](double t) { return cplx(0.3 * std::sin(t) + 0.2 * (1 - std::cos(t)) + 0.1 * std::sin(2 * t), 0.0); }, 256, true);
  const auto r = cayley_transfer_check(a);
  CHECK(r.residual < 1e-3);
  CHECK(r.samples > 0);
  const auto bad = CircleFunction::sample([](double) { return cplx(1, 0); }, 64, true);
  CHECK_THROWS_AS(cayley_transfer_check(bad), Error);
}
