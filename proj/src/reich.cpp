#include "wpflow/reich.hpp"

#include <algorithm>
#include <cmath>

namespace wpflow {

namespace {

const cplx kI(0.0, 1.0);

}  // namespace

BoundaryFunction::BoundaryFunction(double a, double b, std::optional<LineFunction> remainder)
    : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) fail(ErrorKind::invalid_input, "affine coefficients must be finite");
  if (!remainder) return;
  const LineFunction& r = *remainder;
  if (!r.is_real()) fail(ErrorKind::invalid_input, "boundary function must be real-valued");
  if (r.meta().tail != Tail::zero) fail(ErrorKind::invalid_input, "boundary remainder must be windowed");
  if (!(r.step() > 0.0)) fail(ErrorKind::invalid_input, "boundary remainder needs a uniform grid");
  if (r.meta().decay_exponent >= 2.0) fail(ErrorKind::invalid_input, "decay exponent must be below 2");
  // Drop the negligible ends so that quadrature only visits the support.
  const auto& v = r.values();
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return;
  std::size_t first = 0, last = v.size() - 1;
  while (first < v.size() && std::abs(v[first]) <= 1e-17 * peak) ++first;
  while (last > first && std::abs(v[last]) <= 1e-17 * peak) --last;
  first = first >= 8 ? first - 8 : 0;
  last = std::min(v.size() - 1, last + 8);
  if (last - first + 1 < 5) {
    first = first >= 4 ? first - 4 : 0;
    last = std::min(v.size() - 1, first + 8);
  }
  std::vector<double> xs(r.xs().begin() + static_cast<long>(first), r.xs().begin() + static_cast<long>(last) + 1);
  std::vector<double> vs(v.begin() + static_cast<long>(first), v.begin() + static_cast<long>(last) + 1);
  std::vector<double> ds(r.derivatives().begin() + static_cast<long>(first),
                         r.derivatives().begin() + static_cast<long>(last) + 1);
  remainder_ = LineFunction(std::move(xs), std::move(vs), r.meta(), std::move(ds));
}

BoundaryFunction BoundaryFunction::windowed(const LineFunction& f, double step) {
  if (!(step > 0.0)) fail(ErrorKind::invalid_input, "step must be positive");
  const double cells = std::ceil((f.hi() - f.lo()) / step - 1e-9);
  auto xs = uniform_nodes(f.lo(), f.hi(), static_cast<std::size_t>(cells));
  std::vector<double> v(xs.size()), d(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    v[i] = f(xs[i]);
    d[i] = f.derivative(xs[i]);
  }
  LineMeta meta = f.meta();
  meta.tail = Tail::zero;
  return BoundaryFunction(0.0, 0.0, LineFunction(std::move(xs), std::move(v), meta, std::move(d)));
}

double BoundaryFunction::decay_exponent() const {
  if (b_ != 0.0) return 1.0;
  if (a_ != 0.0) return 0.0;
  return remainder_ ? remainder_->meta().decay_exponent : 0.0;
}

double BoundaryFunction::operator()(double t) const {
  return a_ + b_ * t + (remainder_ ? (*remainder_)(t) : 0.0);
}

namespace {

void check_resolution(const BoundaryFunction& f, cplx z) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::invalid_input, "evaluation point must lie in the upper half plane");
  if (f.has_remainder() && z.imag() < 4.0 * f.step()) {
    fail(ErrorKind::resolution, "Im z is below 4 quadrature steps of the boundary grid");
  }
}

// sum_k w_k r_k K(p_k) with p_k = 1 / (t_k - z); weights are the trapezoid
// step (the trimmed remainder vanishes at both ends).
template <typename Kernel>
cplx remainder_sum(const BoundaryFunction& f, cplx z, Kernel kernel) {
  if (!f.has_remainder()) return 0.0;
  const auto& r = f.remainder();
  const auto& xs = r.xs();
  const auto& vs = r.values();
  CompensatedComplexSum s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (vs[k] == 0.0) continue;
    const double w = (k == 0 || k + 1 == xs.size()) ? 0.5 : 1.0;
    const cplx p = 1.0 / (xs[k] - z);
    s.add(w * vs[k] * kernel(p, xs[k]));
  }
  return s.value() * r.step();
}

}  // namespace

cplx reich_A(const BoundaryFunction& f, cplx z) {
  check_resolution(f, z);
  const cplx affine = f.a() * (1.0 + kI * z) + f.b() * (z - kI);
  const cplx s = remainder_sum(f, z, [](cplx p, double t) { return p / (t * t + 1.0); });
  return affine + (z * z + 1.0) / (kI * kPi) * s;
}

cplx reich_A3(const BoundaryFunction& f, cplx z) {
  check_resolution(f, z);
  const cplx s = remainder_sum(f, z, [](cplx p, double) {
    const cplx p2 = p * p;
    return p2 * p2;
  });
  return 6.0 / (kI * kPi) * s;
}

cplx reich_H_at(const BoundaryFunction& f, cplx z) {
  check_resolution(f, z);
  const cplx affine = f.a() + f.b() * z;
  // For real t, 1/(t - conj z) = conj(1/(t - z)).
  const cplx s = remainder_sum(f, z, [](cplx p, double) {
    const cplx q = std::conj(p);
    return p * q * q * q;
  });
  const cplx d = z - std::conj(z);
  return affine + d * d * d / (2.0 * kI * kPi) * s;
}

DeformationField reich_H(const BoundaryFunction& f, const HalfPlaneGrid& grid) {
  DeformationField out;
  out.values = make_field(FieldTag::reich_H, grid);
  parallel_for(grid.size(), [&](std::size_t q) {
    const std::size_t i = q % grid.nx(), j = q / grid.nx();
    out.values.values[q] = reich_H_at(f, cplx(grid.x(i), grid.y(j)));
  });
  out.dbar = finite_difference_wirtinger(out.values, grid).dbar;
  out.dbar.tag = FieldTag::reich_dbar_H;
  return out;
}

ComplexGridField reich_A3_field(const BoundaryFunction& f, const HalfPlaneGrid& grid) {
  auto out = make_field(FieldTag::reich_A3, grid);
  parallel_for(grid.size(), [&](std::size_t q) {
    const std::size_t i = q % grid.nx(), j = q / grid.nx();
    out.values[q] = reich_A3(f, cplx(grid.x(i), grid.y(j)));
  });
  return out;
}

ResidualReport check_dbar_identity(const DeformationField& field, const ComplexGridField& a3, const HalfPlaneGrid& grid) {
  ResidualReport r;
  CompensatedSum total;
  for (std::size_t j = 1; j + 1 < grid.ny(); ++j) {
    const double y = grid.y(j);
    for (std::size_t i = 1; i + 1 < grid.nx(); ++i) {
      const double e = std::abs(field.dbar.at(i, j) + y * y * std::conj(a3.at(i, j)));
      r.sup = std::max(r.sup, e);
      total.add(e);
      ++r.count;
    }
  }
  r.mean = r.count ? total.value() / static_cast<double>(r.count) : 0.0;
  return r;
}

ResidualReport check_dbar_identity(const BoundaryFunction& f, const HalfPlaneGrid& grid) {
  return check_dbar_identity(reich_H(f, grid), reich_A3_field(f, grid), grid);
}

double qd_energy(const DeformationField& field, const HalfPlaneGrid& grid) {
  CompensatedSum s;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double y = grid.y(j);
    for (std::size_t i = 0; i < grid.nx(); ++i) s.add(grid.weight(i, j) * std::norm(field.dbar.at(i, j)) / (y * y));
  }
  return s.value();
}

double a3_energy(const ComplexGridField& a3, const HalfPlaneGrid& grid) {
  CompensatedSum s;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double y = grid.y(j);
    for (std::size_t i = 0; i < grid.nx(); ++i) s.add(grid.weight(i, j) * std::norm(a3.at(i, j)) * y * y);
  }
  return s.value();
}

GridSpec analytic_family_grid() {
  GridSpec g;
  g.half_width = 64.0;
  g.y_min = 1.0 / 1024.0;
  g.y_max = 64.0;
  g.x_cells = 1024;
  g.y_nodes = 256;
  return g;
}

namespace {

void check_family_index(int k) {
  if (k < 2) fail(ErrorKind::divergence, "(z + i)^-k needs k >= 2 for finite integrals");
}

}  // namespace

SidePair dirichlet_equiv(int k, const HalfPlaneGrid& grid, double scale) {
  check_family_index(k);
  std::vector<double> l(grid.size()), r(grid.size());
  parallel_for(grid.size(), [&](std::size_t q) {
    const std::size_t i = q % grid.nx(), j = q / grid.nx();
    const cplx z(grid.x(i), grid.y(j));
    const cplx w = z + kI;
    const cplx p = scale * std::pow(w, -k);
    const cplx dp = -static_cast<double>(k) * scale * std::pow(w, -k - 1);
    const double y = grid.y(j);
    l[q] = grid.weight(i, j) * std::norm(p);
    r[q] = grid.weight(i, j) * std::norm(dp) * y * y;
  });
  return {compensated_sum(l), compensated_sum(r)};
}

SidePair dirichlet_closed_form(int k) {
  check_family_index(k);
  const double kk = k;
  // int dx / (x^2 + a^2)^k = sqrt(pi) Gamma(k - 1/2) / Gamma(k) a^(1 - 2k).
  const double lhs = std::sqrt(kPi) * std::tgamma(kk - 0.5) / std::tgamma(kk) / (2.0 * kk - 2.0);
  // int_0^inf y^2 (1 + y)^(-2k-1) dy = B(3, 2k - 2).
  const double beta = std::tgamma(3.0) * std::tgamma(2.0 * kk - 2.0) / std::tgamma(2.0 * kk + 1.0);
  const double rhs = kk * kk * std::sqrt(kPi) * std::tgamma(kk + 0.5) / std::tgamma(kk + 1.0) * beta;
  return {lhs, rhs};
}

SidePair reproducing_check(int k, cplx z, const HalfPlaneGrid& grid) {
  check_family_index(k);
  std::vector<cplx> terms(grid.size());
  parallel_for(grid.size(), [&](std::size_t q) {
    const std::size_t i = q % grid.nx(), j = q / grid.nx();
    const cplx w(grid.x(i), grid.y(j));
    const double v = grid.y(j);
    const cplx dp = -static_cast<double>(k) * std::pow(w + kI, -k - 1);
    const cplx den = std::conj(w) - z;
    terms[q] = grid.weight(i, j) * v * v * dp / (den * den * den);
  });
  CompensatedComplexSum s;
  for (const auto& t : terms) s.add(t);
  return {std::pow(z + kI, -k), 4.0 / kPi * s.value()};
}

SidePair check_a3_representation(const BoundaryFunction& f, const DeformationField& field, cplx z, const HalfPlaneGrid& grid) {
  const cplx zb = std::conj(z);
  CompensatedComplexSum s;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const cplx d = cplx(grid.x(i), grid.y(j)) - zb;
      const cplx d2 = d * d;
      s.add(grid.weight(i, j) * field.dbar.at(i, j) / (d2 * d2));
    }
  }
  return {std::conj(reich_A3(f, z)), -12.0 / kPi * s.value()};
}

CircleFunction tangential_field(const CircleFunction& a) {
  if (!a.is_real()) fail(ErrorKind::invalid_input, "angular speed must be real");
  std::vector<cplx> s(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) s[k] = kI * std::polar(1.0, a.angle(k)) * a.samples()[k].real();
  return CircleFunction::from_samples(std::move(s), false);
}

TransferReport cayley_transfer_check(const CircleFunction& a) {
  double scale = 1.0;
  for (const auto& v : a.samples()) scale = std::max(scale, std::abs(v));
  if (std::abs(a.value(0.0)) > 1e-8 * scale) fail(ErrorKind::invalid_input, "g(1) must vanish (a(0) = 0)");
  const CircleFunction g = tangential_field(a);
  const int N = g.bandwidth();
  auto ext = [&](cplx w) {
    cplx s = 0.0, wp = 1.0, wb = 1.0;
    const cplx wc = std::conj(w);
    for (int n = 0; n <= N; ++n) {
      s += g.coeff(n) * wp;
      if (n > 0) s += g.coeff(-n) * wb;
      wp *= w;
      wb *= wc;
    }
    return s;
  };
  auto ext_dbar = [&](cplx w) {
    cplx s = 0.0, wb = 1.0;
    const cplx wc = std::conj(w);
    for (int n = 1; n <= N; ++n) {
      s += g.coeff(-n) * static_cast<double>(n) * wb;
      wb *= wc;
    }
    return s;
  };
  auto ftilde = [&](cplx z) { return ext(cayley(z)) / cayley_derivative(z); };
  TransferReport r;
  constexpr double delta = 1e-4;
  for (double y : {0.25, 0.5, 1.0, 2.0}) {
    for (int ix = -4; ix <= 4; ++ix) {
      const cplx z(0.5 * ix, y);
      const cplx fx = (ftilde(z + delta) - ftilde(z - delta)) / (2.0 * delta);
      const cplx fy = (ftilde(z + kI * delta) - ftilde(z - kI * delta)) / (2.0 * delta);
      const cplx fd = 0.5 * (fx + kI * fy);
      const cplx gp = cayley_derivative(z);
      const cplx inner = ext_dbar(cayley(z));
      const cplx expected = inner * std::conj(gp) / gp;
      r.residual = std::max(r.residual, std::abs(fd - expected));
      r.modulus_residual = std::max(r.modulus_residual, std::abs(std::abs(fd) - std::abs(inner)));
      ++r.samples;
    }
  }
  return r;
}

}  // namespace wpflow
