#include "wpflow/semmes.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace wpflow {

HalfPlaneGrid::HalfPlaneGrid(const GridSpec& spec) : spec_(spec) {
  if (!(spec.half_width > 0.0) || !(spec.y_min > 0.0) || !(spec.y_max > spec.y_min)) {
    fail(ErrorKind::invalid_input, "grid needs X > 0 and 0 < y_min < Y");
  }
  if (spec.x_cells < 4 || spec.y_nodes < 4) fail(ErrorKind::resolution, "grid needs at least 4 cells per direction");
  xs_ = uniform_nodes(-spec.half_width, spec.half_width, spec.x_cells);
  ys_ = log_nodes(spec.y_min, spec.y_max, spec.y_nodes);
  wx_ = trapezoid_weights(xs_);
  wy_ = trapezoid_weights(ys_);
}

const char* to_string(FieldTag tag) {
  switch (tag) {
    case FieldTag::rho: return "rho";
    case FieldTag::dbar: return "dbar";
    case FieldTag::d: return "d";
    case FieldTag::mu: return "mu";
    case FieldTag::reich_H: return "reich_H";
    case FieldTag::reich_dbar_H: return "reich_dbar_H";
    case FieldTag::reich_A3: return "reich_A3";
    case FieldTag::generic: return "generic";
  }
  return "generic";
}

double ComplexGridField::sup_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

ComplexGridField make_field(FieldTag tag, const HalfPlaneGrid& grid) {
  ComplexGridField f;
  f.tag = tag;
  f.nx = grid.nx();
  f.ny = grid.ny();
  f.values.assign(grid.size(), cplx(0.0));
  return f;
}

IncreasingMap gamma_u(const LineFunction& u) {
  if (!u.is_real()) fail(ErrorKind::invalid_input, "gamma_u needs a real-valued u");
  if (!u.contains(0.0) || !u.contains(1.0)) fail(ErrorKind::out_of_domain, "u's grid must contain 0 and 1");
  const auto& xs = u.xs();
  const std::size_t n = xs.size();
  std::vector<double> e(n), de(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = u.values()[i];
    if (!(v < 700.0)) fail(ErrorKind::overflow, "e^u overflows");
    e[i] = std::exp(v);
    de[i] = u.derivatives()[i] * e[i];
  }
  auto cum = cumulative_integral(xs, e, de);
  const Hermite prim(xs, cum, e);
  const double at0 = prim.value(0.0);
  const double scale = prim.value(1.0) - at0;
  if (!(scale > 0.0) || !std::isfinite(scale)) fail(ErrorKind::overflow, "normalizer of e^u is not finite");
  for (auto& c : cum) c = (c - at0) / scale;
  for (auto& v : e) v /= scale;
  return IncreasingMap(Domain::line, xs, std::move(cum), std::move(e));
}

namespace {

void check_extension_support(const LineFunction& u, const HalfPlaneGrid& grid) {
  const auto& s = grid.spec();
  if (-s.half_width - s.y_max < u.lo() - 1e-12 || s.half_width + s.y_max > u.hi() + 1e-12) {
    std::ostringstream os;
    os << "grid [-" << s.half_width << ", " << s.half_width << "] dilated by Y=" << s.y_max
       << " leaves the window [" << u.lo() << ", " << u.hi() << "]";
    fail(ErrorKind::out_of_domain, os.str());
  }
}

// Two kernels on a shared grid against one function, every node of the grid.
void convolve_pair(const Mollifier& m1, const Mollifier& m2, const LineFunction& f,
                   const HalfPlaneGrid& grid, std::vector<cplx>& out1, std::vector<cplx>& out2) {
  out1.assign(grid.size(), cplx(0.0));
  out2.assign(grid.size(), cplx(0.0));
  const auto& rs = m1.rs();
  const auto& v1 = m1.values();
  const auto& v2 = m2.values();
  const double h = m1.step();
  parallel_for(grid.size(), [&](std::size_t k) {
    const std::size_t i = k % grid.nx();
    const std::size_t j = k / grid.nx();
    const double x = grid.x(i), y = grid.y(j);
    CompensatedComplexSum s1, s2;
    for (std::size_t q = 1; q + 1 < rs.size(); ++q) {
      const double fv = f(x - y * rs[q]);
      s1.add(v1[q] * fv);
      s2.add(v2[q] * fv);
    }
    out1[k] = s1.value() * h;
    out2[k] = s2.value() * h;
  });
}

struct Kernels {
  Mollifier phi, psi, alpha, beta;
};

const Kernels& default_kernels() {
  static const Kernels k = [] {
    Kernels out;
    out.phi = make_phi();
    out.psi = make_psi(out.phi);
    auto ab = derive_alpha_beta(out.phi, out.psi);
    out.alpha = std::move(ab.first);
    out.beta = std::move(ab.second);
    return out;
  }();
  return k;
}

LineFunction map_as_function(const IncreasingMap& g) {
  LineMeta meta;
  meta.tail = Tail::none;
  meta.decay_exponent = 1.0;
  return LineFunction(g.xs(), g.ys(), meta, g.dys());
}

}  // namespace

ComplexGridField rho_extension(const LineFunction& u, const HalfPlaneGrid& grid) {
  check_extension_support(u, grid);
  const auto& k = default_kernels();
  const LineFunction g = map_as_function(gamma_u(u));
  std::vector<cplx> a, b;
  convolve_pair(k.phi, k.psi, g, grid, a, b);
  auto rho = make_field(FieldTag::rho, grid);
  const cplx I(0.0, 1.0);
  for (std::size_t q = 0; q < rho.values.size(); ++q) rho.values[q] = a[q] - I * b[q];
  return rho;
}

WirtingerPair finite_difference_wirtinger(const ComplexGridField& f, const HalfPlaneGrid& grid) {
  const std::size_t nx = grid.nx(), ny = grid.ny();
  if (nx < 3 || ny < 3) fail(ErrorKind::resolution, "finite differences need 3 nodes per direction");
  WirtingerPair w{make_field(FieldTag::dbar, grid), make_field(FieldTag::d, grid)};
  const double hx = grid.hx();
  const auto& ys = grid.ys();
  const cplx I(0.0, 1.0);
  auto lagrange = [&](std::size_t j0, double y, std::size_t i) {
    const double y0 = ys[j0], y1 = ys[j0 + 1], y2 = ys[j0 + 2];
    return f.at(i, j0) * (((y - y1) + (y - y2)) / ((y0 - y1) * (y0 - y2))) +
           f.at(i, j0 + 1) * (((y - y0) + (y - y2)) / ((y1 - y0) * (y1 - y2))) +
           f.at(i, j0 + 2) * (((y - y0) + (y - y1)) / ((y2 - y0) * (y2 - y1)));
  };
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      cplx fx;
      if (i == 0) {
        fx = (-3.0 * f.at(0, j) + 4.0 * f.at(1, j) - f.at(2, j)) / (2.0 * hx);
      } else if (i + 1 == nx) {
        fx = (3.0 * f.at(i, j) - 4.0 * f.at(i - 1, j) + f.at(i - 2, j)) / (2.0 * hx);
      } else {
        fx = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * hx);
      }
      const std::size_t j0 = j == 0 ? 0 : (j + 1 == ny ? j - 2 : j - 1);
      const cplx fy = lagrange(j0, ys[j], i);
      w.dbar.values[grid.index(i, j)] = 0.5 * (fx + I * fy);
      w.d.values[grid.index(i, j)] = 0.5 * (fx - I * fy);
    }
  }
  return w;
}

WirtingerPair wirtinger(const LineFunction& u, const HalfPlaneGrid& grid, WirtingerMethod method) {
  if (method == WirtingerMethod::finite_difference) {
    return finite_difference_wirtinger(rho_extension(u, grid), grid);
  }
  check_extension_support(u, grid);
  const auto& k = default_kernels();
  const IncreasingMap g = gamma_u(u);
  // g' = e^u / int_0^1 e^u on the grid of u.
  LineMeta meta;
  meta.tail = Tail::none;
  std::vector<double> dd(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) dd[i] = u.derivatives()[i] * g.dys()[i];
  const LineFunction density(u.xs(), g.dys(), meta, dd);
  WirtingerPair w{make_field(FieldTag::dbar, grid), make_field(FieldTag::d, grid)};
  convolve_pair(k.alpha, k.beta, density, grid, w.dbar.values, w.d.values);
  return w;
}

double interior_sup_difference(const ComplexGridField& a, const ComplexGridField& b,
                               const HalfPlaneGrid& grid) {
  double m = 0.0;
  for (std::size_t j = 1; j + 1 < grid.ny(); ++j) {
    for (std::size_t i = 1; i + 1 < grid.nx(); ++i) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
  }
  return m;
}

ComplexGridField beltrami(const WirtingerPair& w) {
  ComplexGridField mu = w.dbar;
  mu.tag = FieldTag::mu;
  for (std::size_t q = 0; q < mu.values.size(); ++q) {
    const cplx d = w.d.values[q];
    if (std::abs(d) < 1e-9) {
      std::ostringstream os;
      os << "|d rho| = " << std::abs(d) << " below 1e-9 at node " << q << "; u is outside the small-norm regime";
      fail(ErrorKind::degeneracy, os.str());
    }
    mu.values[q] = w.dbar.values[q] / d;
  }
  return mu;
}

ComplexGridField beltrami(const LineFunction& u, const HalfPlaneGrid& grid, WirtingerMethod method) {
  return beltrami(wirtinger(u, grid, method));
}

EnergyReport wp_energy(const ComplexGridField& mu, const HalfPlaneGrid& grid) {
  if (mu.tag != FieldTag::mu) fail(ErrorKind::invalid_input, "wp_energy needs a mu field");
  if (mu.nx != grid.nx() || mu.ny != grid.ny()) fail(ErrorKind::invalid_input, "field and grid differ in shape");
  CompensatedSum s;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double y = grid.y(j);
    for (std::size_t i = 0; i < grid.nx(); ++i) s.add(grid.weight(i, j) * std::norm(mu.at(i, j)) / (y * y));
  }
  EnergyReport r;
  r.value = s.value() / kPi;
  r.sup_mu = mu.sup_abs();
  r.grid = grid.spec();
  return r;
}

std::optional<std::string> smallness_warning(const LineFunction& u, double threshold) {
  const double s = h12_line(u).seminorm();
  if (s <= threshold) return std::nullopt;
  std::ostringstream os;
  os << "H^1/2 seminorm " << s << " exceeds the smallness threshold " << threshold
     << "; the extension may not be quasiconformal";
  return os.str();
}

double local_oscillation(const LineFunction& u, double x, double y) {
  if (!(y > 0.0)) fail(ErrorKind::invalid_input, "local_oscillation needs y > 0");
  constexpr int cells = 256;
  const double h = 2.0 * y / cells;
  const double ux = u(x);
  CompensatedSum s;
  for (int k = 0; k <= cells; ++k) {
    const double t = -y + h * k;
    const double w = (k == 0 || k == cells) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    const double d = u(x + t) - ux;
    s.add(w * d * d);
  }
  return s.value() * h / 3.0 / y;
}

FubiniSides fubini_check(const LineFunction& u, const HalfPlaneGrid& grid) {
  if (u.meta().tail != Tail::zero) fail(ErrorKind::invalid_input, "fubini_check needs a windowed u");
  if (!u.is_real()) fail(ErrorKind::invalid_input, "fubini_check needs a real u");
  const double h = u.step();
  if (!(h > 0.0)) fail(ErrorKind::invalid_input, "fubini_check needs a uniform grid");
  const auto& xs = u.xs();
  const auto& v = u.values();
  const auto& dv = u.derivatives();
  const std::size_t n = xs.size();
  const std::size_t K = n - 1;
  const double T = h * static_cast<double>(K);
  const double y_min = grid.spec().y_min;
  if (!(y_min < T)) fail(ErrorKind::invalid_input, "y_min exceeds the window");
  const auto ylog = log_nodes(y_min, T, 512);
  const double ds = std::log(T / y_min) / static_cast<double>(ylog.size() - 1);

  std::vector<double> lhs(n), rhs(n);
  parallel_for(n, [&](std::size_t i) {
    const double ux = v[i];
    std::vector<double> ts(K + 1), g(K + 1), dg(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
      ts[k] = h * static_cast<double>(k);
      double gp = ux * ux, dgp = 0.0;
      if (i + k < n) {
        const double d = v[i + k] - ux;
        gp = d * d;
        dgp = 2.0 * d * dv[i + k];
      }
      double gm = ux * ux, dgm = 0.0;
      if (k <= i) {
        const double d = v[i - k] - ux;
        gm = d * d;
        dgm = -2.0 * d * dv[i - k];
      }
      g[k] = gp + gm;
      dg[k] = dgp + dgm;
    }
    const auto F = cumulative_integral(ts, g, dg);
    const Hermite Fh(ts, F, g);

    CompensatedSum left;
    for (std::size_t q = 0; q < ylog.size(); ++q) {
      const double y = ylog[q];
      const double w = (q == 0 || q + 1 == ylog.size()) ? 0.5 * ds : ds;
      left.add(w * Fh.value(std::min(y, T)) / (y * y));
    }
    const double b = 2.0 * ux * ux;
    left.add(2.0 / 3.0 * dv[i] * dv[i] * y_min);
    left.add(F.back() / (2.0 * T * T) + b / (2.0 * T));
    lhs[i] = left.value();

    CompensatedSum right;
    for (std::size_t k = 0; k <= K; ++k) {
      const double w = (k == 0 || k == K) ? 0.5 * h : h;
      const double f = k == 0 ? dv[i] * dv[i] : g[k] / (2.0 * ts[k] * ts[k]);
      right.add(w * f);
    }
    right.add(ux * ux / T);
    rhs[i] = right.value();
  });

  const auto wx = trapezoid_weights(xs);
  CompensatedSum L, R, E;
  for (std::size_t i = 0; i < n; ++i) {
    L.add(wx[i] * lhs[i]);
    R.add(wx[i] * rhs[i]);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    E.add(wx[i] * v[i] * v[i] * 0.5 * (1.0 / (xs[i] - xs.front()) + 1.0 / (xs.back() - xs[i])));
  }
  FubiniSides out;
  out.exterior = E.value();
  out.lhs = L.value() + out.exterior;
  out.rhs = R.value() + out.exterior;
  return out;
}

void write_field_csv(const ComplexGridField& f, const HalfPlaneGrid& grid, std::ostream& os) {
  os << "x,y,re,im\n";
  os.precision(17);
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const cplx v = f.at(i, j);
      os << grid.x(i) << ',' << grid.y(j) << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
}

void write_field_matrix(const ComplexGridField& f, const HalfPlaneGrid& grid, std::ostream& os) {
  os << "# " << to_string(f.tag) << ": x y |value|\n";
  os.precision(12);
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      os << grid.x(i) << ' ' << grid.y(j) << ' ' << std::abs(f.at(i, j)) << '\n';
    }
    os << '\n';
  }
}

}  // namespace wpflow
