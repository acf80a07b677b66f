#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wpflow/wpmap.hpp"

using namespace wpflow;

namespace {

LineFunction on_line(const std::function<double(double)>& f, Tail tail = Tail::zero) {
  LineMeta meta;
  meta.tail = tail;
  return LineFunction::sample(f, 16.0, 1.0 / 64.0, meta);
}

const Window win{2.0, 4.0};

SobolevClass U() { return SobolevClass::canonical(on_line([](double x) { return 0.5 * std::exp(-x * x); })); }
SobolevClass V() { return SobolevClass::canonical(on_line([](double x) { return std::sin(kPi * x) * win(x); })); }

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("psi goldens") {
  const auto id = psi(SobolevClass::canonical(on_line([](double) { return 0.0; })));
  CHECK(id(0.7) == doctest::Approx(0.7));
  const auto ex = psi(SobolevClass{on_line([](double x) { return x; }, Tail::none), false});
  CHECK(ex(0.5) == doctest::Approx((std::exp(0.5) - 1) / (std::exp(1.0) - 1)).epsilon(1e-10));
  const auto h = psi(U());
  CHECK(h(0.0) == doctest::Approx(0.0));
  CHECK(h(1.0) == doctest::Approx(1.0));
  for (double c : {-5.0, 5.0}) {
    const auto hc = psi(SobolevClass{U().rep.plus_constant(c), false});
    CHECK(sup_diff(hc.ys(), h.ys()) < 1e-12);
  }
}

TEST_CASE("d_psi") {
  const auto u0 = SobolevClass::canonical(on_line([](double) { return 0.0; }));
  const auto v = V();
  // u = 0: v -> int_0^x v - x int_0^1 v
  const auto d0 = d_psi(u0, v);
  const double I1 = [&] {
    double s = 0.0;
    const int n = 4096;
    for (int k = 0; k <= n; ++k) s += (k == 0 || k == n ? 0.5 : 1.0) * v.rep(static_cast<double>(k) / n) / n;
    return s;
  }();
  const double x = 0.5;
  const double Ix = [&] {
    double s = 0.0;
    const int n = 4096;
    for (int k = 0; k <= n; ++k) s += (k == 0 || k == n ? 0.5 : 1.0) * v.rep(x * k / n) * x / n;
    return s;
  }();
  CHECK(d0.rep(x) == doctest::Approx(Ix - x * I1).epsilon(1e-7));
  const auto zero = SobolevClass{on_line([](double) { return 0.0; }), false};
  const auto dz = d_psi(U(), zero);
  for (double w : dz.rep.values()) CHECK(w == 0.0);
  const auto dv = d_psi(U(), v);
  CHECK(std::abs(dv.rep(0.0)) < 1e-12);
  CHECK(std::abs(dv.rep(1.0)) < 1e-12);
}

TEST_CASE("d_psi Richardson exponent") {
  const auto u = U(), v = V();
  const auto h0 = psi(u);
  const auto dv = d_psi(u, v);
  double errs[2];
  const double eps[2] = {0.05, 0.025};
  for (int k = 0; k < 2; ++k) {
    std::vector<double> vals(u.rep.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = u.rep.values()[i] + eps[k] * v.rep.values()[i];
    const auto pe = psi(SobolevClass{LineFunction(u.rep.xs(), vals), false});
    double m = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) m = std::max(m, std::abs(pe.ys()[i] - h0.ys()[i] - eps[k] * dv.rep.values()[i]));
    errs[k] = m;
  }
  const double p = std::log2(errs[0] / errs[1]);
  CHECK(p >= 1.9);
  CHECK(p <= 2.1);
}

TEST_CASE("d_psi_inv") {
  const auto u = U(), v = V();
  const auto back = d_psi_inv(u, d_psi(u, v));
  CHECK(sup_diff(back.rep.values(), v.rep.values()) < 1e-6);
  LineMeta meta;
  meta.tail = Tail::none;
  const TangentVectorWP w{LineFunction::sample([](double x) { return x * (1 - x) * std::exp(-x * x); }, 16.0, 1.0 / 64.0,
                                               meta,
                                               [](double x) { return (1 - 2 * x - 2 * x * x * (1 - x)) * std::exp(-x * x); }),
                          true};
  CHECK(sup_diff(d_psi(u, d_psi_inv(u, w)).rep.values(), w.rep.values()) < 1e-6);
  // u = 0: w' made mean-zero
  const auto u0 = SobolevClass::canonical(on_line([](double) { return 0.0; }));
  const auto d = d_psi_inv(u0, w);
  const double m = w.rep.derivatives()[1024] - d.rep.values()[1024];
  CHECK(w.rep.derivatives()[1500] - d.rep.values()[1500] == doctest::Approx(m));
  const TangentVectorWP bad{on_line([](double x) { return std::exp(-x * x); }), true};
  CHECK_THROWS_AS(d_psi_inv(u, bad), Error);
}

TEST_CASE("pull-back ratios") {
  const auto u = U(), v = V();
  const auto xs = u.rep.xs();
  const auto id = pullback_probe(IncreasingMap::identity(Domain::line, xs), {u, v});
  for (double r : id.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> ys = xs;
  for (double& y : ys) y = 2 * y + 0.3;
  const auto aff = pullback_probe(IncreasingMap(Domain::line, xs, ys, std::vector<double>(xs.size(), 2.0)), {u, v});
  for (double r : aff.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-2));
  const auto h = psi(u);
  const auto a = pullback_probe(h, {u, v});
  const auto b = pullback_probe(h, {u, v, SobolevClass::canonical(on_line([](double x) { return std::max(0.0, 1 - std::abs(x)); }))});
  CHECK(std::isfinite(a.max_ratio));
  CHECK(b.max_ratio == doctest::Approx(a.max_ratio).epsilon(0.1));
}

TEST_CASE("translations") {
  const auto u = U(), v = V();
  const auto xs = u.rep.xs();
  CHECK(translations(IncreasingMap::identity(Domain::line, xs), v).residual < 1e-12);
  const auto h0 = psi(u);
  CHECK(translations(h0, u).residual < 1e-6);
  CHECK(translations(h0, v).residual < 1e-4);
}

TEST_CASE("interpolation family") {
  const auto h = psi(U());
  const auto h0 = interpolation_family(h, 0.0);
  for (std::size_t i = 0; i < h0.xs().size(); ++i) CHECK(h0.ys()[i] == doctest::Approx(h0.xs()[i]));
  CHECK(sup_diff(interpolation_family(h, 1.0).ys(), h.ys()) < 1e-10);
  LineMeta meta;
  meta.tail = Tail::none;
  auto logd = [&](const IncreasingMap& m) {
    std::vector<double> l;
    for (double d : m.dys()) l.push_back(std::log(d));
    return LineFunction(m.xs(), l, meta);
  };
  const double full = h12_line(logd(h)).seminorm();
  CHECK(h12_line(logd(interpolation_family(h, 0.3))).seminorm() == doctest::Approx(0.3 * full).epsilon(1e-10));
}
