#include "wpflow/wpmap.hpp"

#include <algorithm>
#include <cmath>

#include "wpflow/semmes.hpp"

namespace wpflow {

SobolevClass SobolevClass::canonical(const LineFunction& u) {
  if (!u.is_real()) fail(ErrorKind::invalid_input, "Sobolev class representative must be real");
  return {u.plus_constant(-u.mean()), true};
}

IncreasingMap psi(const SobolevClass& u) { return gamma_u(u.rep); }

namespace {

struct Primitives {
  std::vector<double> e;      // e^u at nodes
  std::vector<double> E;      // int_0^x e^u
  double c = 0.0;             // int_0^1 e^u
};

Primitives primitives(const LineFunction& u) {
  const auto& xs = u.xs();
  Primitives p;
  p.e.resize(xs.size());
  std::vector<double> de(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    p.e[i] = std::exp(u.values()[i]);
    de[i] = u.derivatives()[i] * p.e[i];
  }
  auto cum = cumulative_integral(xs, p.e, de);
  const Hermite H(xs, cum, p.e);
  const double at0 = H.value(0.0);
  p.c = H.value(1.0) - at0;
  for (auto& v : cum) v -= at0;
  p.E = std::move(cum);
  return p;
}

// int_0^x f for samples f with derivative samples df.
std::vector<double> primitive_from_zero(const std::vector<double>& xs, const std::vector<double>& f,
                                        const std::vector<double>& df) {
  auto cum = cumulative_integral(xs, f, df);
  const Hermite H(xs, cum, f);
  const double at0 = H.value(0.0);
  for (auto& v : cum) v -= at0;
  return cum;
}

void require_unit_interval(const LineFunction& u) {
  if (!u.contains(0.0) || !u.contains(1.0)) fail(ErrorKind::out_of_domain, "grid must contain 0 and 1");
}

}  // namespace

TangentVectorWP d_psi(const SobolevClass& u, const SobolevClass& v) {
  require_unit_interval(u.rep);
  if (u.rep.xs() != v.rep.xs()) fail(ErrorKind::invalid_input, "u and v must share a grid");
  const auto& xs = u.rep.xs();
  const auto P = primitives(u.rep);
  const std::size_t n = xs.size();
  std::vector<double> ev(n), dev(n);
  for (std::size_t i = 0; i < n; ++i) {
    ev[i] = P.e[i] * v.rep.values()[i];
    dev[i] = P.e[i] * (u.rep.derivatives()[i] * v.rep.values()[i] + v.rep.derivatives()[i]);
  }
  const auto V = primitive_from_zero(xs, ev, dev);
  const double cv = Hermite(xs, V, ev).value(1.0);
  const double c2 = P.c * P.c;
  std::vector<double> w(n), dw(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = (P.c * V[i] - cv * P.E[i]) / c2;
    dw[i] = (P.c * ev[i] - cv * P.e[i]) / c2;
  }
  LineMeta meta;
  meta.tail = Tail::none;
  return {LineFunction(xs, std::move(w), meta, std::move(dw)), true};
}

SobolevClass d_psi_inv(const SobolevClass& u, const TangentVectorWP& w) {
  require_unit_interval(u.rep);
  if (std::abs(w.rep(0.0)) > 1e-8 || std::abs(w.rep(1.0)) > 1e-8) {
    fail(ErrorKind::invalid_input, "tangent vector must vanish at 0 and 1");
  }
  const auto& xs = u.rep.xs();
  if (w.rep.xs() != xs) fail(ErrorKind::invalid_input, "u and w must share a grid");
  const auto P = primitives(u.rep);
  std::vector<double> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = P.c * w.rep.derivatives()[i] / P.e[i];
  LineMeta meta = u.rep.meta();
  meta.tail = Tail::none;
  return SobolevClass::canonical(LineFunction(xs, std::move(v), meta));
}

PullbackReport pullback_probe(const IncreasingMap& h, const std::vector<SobolevClass>& family) {
  PullbackReport r;
  r.ratios.resize(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& u = family[k].rep;
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u(h(u.xs()[i]));
    const LineFunction pulled(u.xs(), std::move(v), u.meta());
    const double base = h12_line(u).value;
    if (!(base > 0.0)) fail(ErrorKind::invalid_input, "pull-back family member has zero seminorm");
    r.ratios[k] = h12_line(pulled).value / base;
    r.max_ratio = std::max(r.max_ratio, r.ratios[k]);
  }
  return r;
}

LineFunction left_translate(const IncreasingMap& h0, const LineFunction& u) {
  if (!h0.has_derivative()) fail(ErrorKind::invalid_input, "h0 needs derivative samples");
  const double a = h0(h0.lo()), b = h0(h0.hi());
  const auto ys = uniform_nodes(a, b, u.size() - 1);
  std::vector<double> v(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double x = std::clamp(h0.inverse(ys[i]), h0.lo(), h0.hi());
    v[i] = u(x) - std::log(h0.derivative(x));
  }
  LineMeta meta = u.meta();
  meta.tail = Tail::none;
  return LineFunction(ys, std::move(v), meta);
}

IntertwiningReport translations(const IncreasingMap& h0, const SobolevClass& u) {
  const LineFunction lu = left_translate(h0, u.rep);
  const IncreasingMap right = gamma_u(lu);
  const IncreasingMap left = psi(u);
  IntertwiningReport r;
  for (double y : lu.xs()) {
    const double x = std::clamp(h0.inverse(y), left.lo(), left.hi());
    r.residual = std::max(r.residual, std::abs(left(x) - right(y)));
    ++r.samples;
  }
  return r;
}

IncreasingMap interpolation_family(const IncreasingMap& h, double t) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::invalid_input, "t must lie in [0, 1]");
  const auto& xs = h.xs();
  const std::size_t n = xs.size();
  const auto logd = [&] {
    std::vector<double> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = std::log(h.dys()[i]);
    return l;
  }();
  const auto dlogd = differentiate(xs, logd);
  std::vector<double> f(n), df(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = std::exp(t * logd[i]);
    df[i] = t * dlogd[i] * f[i];
  }
  if (!(xs.front() <= 0.0 && xs.back() >= 0.0)) fail(ErrorKind::out_of_domain, "map grid must contain 0");
  auto ys = primitive_from_zero(xs, f, df);
  return IncreasingMap(h.domain(), xs, std::move(ys), std::move(f));
}

}  // namespace wpflow
