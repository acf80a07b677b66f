#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "wpflow/semmes.hpp"

using namespace wpflow;

namespace {

LineFunction on_line(const std::function<double(double)>& f, Tail tail = Tail::zero) {
  LineMeta meta;
  meta.tail = tail;
  return LineFunction::sample(f, 16.0, 1.0 / 64.0, meta);
}

LineFunction gauss(double eps) {
  return on_line([eps](double x) { return eps * std::exp(-x * x); });
}

const GridSpec small{4.0, 1.0 / 32.0, 2.0, 64, 32};

}  // namespace

TEST_CASE("gamma_u goldens") {
  const auto id = gamma_u(on_line([](double) { return 0.0; }, Tail::none));
  CHECK(id(0.3) == doctest::Approx(0.3));
  CHECK(id(-5.0) == doctest::Approx(-5.0));
  const auto ex = gamma_u(on_line([](double x) { return x; }, Tail::none));
  for (double x : {-2.0, 0.0, 0.5, 1.0, 3.0}) {
    CHECK(ex(x) == doctest::Approx((std::exp(x) - 1.0) / (std::exp(1.0) - 1.0)).epsilon(1e-9));
  }
  const auto g = gamma_u(gauss(0.4));
  CHECK(g(0.0) == doctest::Approx(0.0));
  CHECK(g(1.0) == doctest::Approx(1.0));
  for (std::size_t i = 0; i + 1 < g.ys().size(); ++i) CHECK(g.ys()[i + 1] > g.ys()[i]);
  CHECK_THROWS_AS(gamma_u(on_line([](double) { return 800.0; }, Tail::none)), Error);
}

TEST_CASE("rho fixes the identity") {
  const HalfPlaneGrid grid(small);
  for (double c : {0.0, 1.7}) {
    const auto rho = rho_extension(on_line([c](double) { return c; }, Tail::none), grid);
    double m = 0.0;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      for (std::size_t i = 0; i < grid.nx(); ++i) m = std::max(m, std::abs(rho.at(i, j) - cplx(grid.x(i), grid.y(j))));
    }
    CHECK(m < 1e-8);
  }
}

TEST_CASE("rho approaches gamma_u at the boundary") {
  const auto u = gauss(0.5);
  const auto g = gamma_u(u);
  std::vector<double> errs;
  for (double y0 : {1.0 / 32.0, 1.0 / 64.0}) {
    const HalfPlaneGrid grid(GridSpec{2.0, y0, 1.0, 32, 8});
    const auto rho = rho_extension(u, grid);
    double m = 0.0;
    for (std::size_t i = 0; i < grid.nx(); ++i) m = std::max(m, std::abs(rho.at(i, 0) - cplx(g(grid.x(i)), 0.0)));
    errs.push_back(m);
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[0] / errs[1] == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("wirtinger derivatives") {
  const HalfPlaneGrid grid(small);
  const auto w0 = wirtinger(on_line([](double) { return 0.0; }, Tail::none), grid, WirtingerMethod::kernels);
  for (const auto& v : w0.dbar.values) CHECK(std::abs(v) < 1e-8);
  for (const auto& v : w0.d.values) CHECK(std::abs(v - 1.0) < 1e-8);
  const auto u = gauss(0.1);
  const auto wk = wirtinger(u, grid, WirtingerMethod::kernels);
  const auto wf = wirtinger(u, grid, WirtingerMethod::finite_difference);
  const double h = grid.hx();
  CHECK(interior_sup_difference(wk.dbar, wf.dbar, grid) <= std::max(1e-4, 10 * h * h));
  CHECK(interior_sup_difference(wk.d, wf.d, grid) <= std::max(1e-4, 10 * h * h));
  // first variation: dbar scales linearly in eps
  const auto w2 = wirtinger(gauss(0.05), grid, WirtingerMethod::kernels);
  CHECK(wk.dbar.sup_abs() / w2.dbar.sup_abs() == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("beltrami and energy") {
  const HalfPlaneGrid grid(small);
  const auto mu0 = beltrami(on_line([](double) { return 0.0; }, Tail::none), grid);
  CHECK(mu0.sup_abs() < 1e-8);
  CHECK(wp_energy(mu0, grid).value < 1e-14);
  std::vector<double> eps = {0.05, 0.1, 0.2}, e, sup;
  for (double s : eps) {
    const auto r = wp_energy(beltrami(gauss(s), grid), grid);
    e.push_back(r.value);
    sup.push_back(r.sup_mu);
    CHECK(r.sup_mu < 1.0);
  }
  CHECK(loglog_slope(eps, e) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(loglog_slope(eps, sup) == doctest::Approx(1.0).epsilon(0.1));
  CHECK_THROWS_AS(wp_energy(make_field(FieldTag::rho, grid), grid), Error);
}

TEST_CASE("smallness warning") {
  CHECK_FALSE(smallness_warning(gauss(0.1), 0.3));
  CHECK(smallness_warning(gauss(2.0), 0.3));
}

TEST_CASE("fubini") {
  const HalfPlaneGrid grid;
  const auto z = fubini_check(on_line([](double) { return 0.0; }), grid);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  const auto f = fubini_check(gauss(1.0), grid);
  CHECK(f.lhs == doctest::Approx(f.rhs).epsilon(1e-2));
  // right side equals 2 pi^2 times the squared H^1/2 seminorm
  CHECK(f.rhs == doctest::Approx(2 * kPi * kPi / (2 * kPi)).epsilon(1e-4));
}

TEST_CASE("field output") {
  const HalfPlaneGrid grid(GridSpec{1.0, 0.5, 1.0, 4, 4});
  auto f = make_field(FieldTag::generic, grid);
  f.values[4] = cplx(1, -2);
  std::ostringstream csv, mat;
  write_field_csv(f, grid, csv);
  write_field_matrix(f, grid, mat);
  CHECK(csv.str().rfind("x,y,re,im\n", 0) == 0);
  CHECK(csv.str().find("1,-2") != std::string::npos);
  CHECK(mat.str().find("\n\n") != std::string::npos);
}
