#include "wpflow/mollifier.hpp"

#include <cmath>
#include <ostream>

namespace wpflow {

const char* to_string(Parity parity) {
  switch (parity) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "none";
}

Mollifier::Mollifier(std::string name, std::vector<double> rs, std::vector<cplx> values,
                     Parity parity)
    : name_(std::move(name)), rs_(std::move(rs)), values_(std::move(values)), parity_(parity) {
  if (rs_.size() < 5 || values_.size() != rs_.size()) fail(ErrorKind::invalid_input, "kernel needs >= 5 samples");
  if (std::abs(rs_.front() + 1.0) > 1e-12 || std::abs(rs_.back() - 1.0) > 1e-12) {
    fail(ErrorKind::invalid_input, "kernel grid must span [-1, 1]");
  }
  step_ = uniform_step(rs_);
  if (!(step_ > 0.0)) fail(ErrorKind::invalid_input, "kernel grid must be uniform");
  const double scale = std::max(1.0, std::abs(values_[values_.size() / 2]));
  if (std::abs(values_.front()) > 1e-12 * scale || std::abs(values_.back()) > 1e-12 * scale) {
    fail(ErrorKind::invalid_input, "kernel must vanish at +-1");
  }
  for (const auto& v : values_) {
    if (v.imag() != 0.0) complex_ = true;
  }
  // Trapezoid with zero endpoints; pairing r and -r keeps parity cancellation exact.
  const std::size_t n = rs_.size();
  moments_.assign(3, cplx(0.0));
  for (int k = 0; k < 3; ++k) {
    CompensatedComplexSum s;
    for (std::size_t i = 0; i < n / 2; ++i) {
      const std::size_t j = n - 1 - i;
      const double w = (i == 0) ? 0.5 * step_ : step_;
      s.add(w * (std::pow(rs_[i], k) * values_[i] + std::pow(rs_[j], k) * values_[j]));
    }
    if (n % 2 == 1) s.add(step_ * std::pow(rs_[n / 2], k) * values_[n / 2]);
    moments_[static_cast<std::size_t>(k)] = s.value();
  }
}

Mollifier make_phi(std::size_t cells) {
  if (cells < 16 || cells % 2 != 0) fail(ErrorKind::invalid_input, "kernel cell count must be even and >= 16");
  const auto rs = uniform_nodes(-1.0, 1.0, cells);
  std::vector<double> raw(rs.size(), 0.0);
  // Mirror the left half so that samples are exactly symmetric.
  for (std::size_t i = 1; i <= cells / 2; ++i) {
    const double r = rs[i];
    raw[i] = std::exp(-1.0 / (1.0 - r * r));
    raw[cells - i] = raw[i];
  }
  std::vector<cplx> vals(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) vals[i] = raw[i];
  const double mass = Mollifier("phi", rs, vals, Parity::even).moment(0).real();
  for (auto& v : vals) v /= mass;
  std::vector<double> srs = rs;
  for (std::size_t i = 0; i <= cells / 2; ++i) srs[cells - i] = -srs[i];
  return Mollifier("phi", std::move(srs), std::move(vals), Parity::even);
}

Mollifier make_psi(const Mollifier& phi) {
  if (phi.parity() != Parity::even) fail(ErrorKind::invalid_input, "psi is built from an even phi");
  const double m2 = phi.moment(2).real();
  std::vector<cplx> vals(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) vals[i] = phi.rs()[i] * phi.values()[i] / m2;
  return Mollifier("psi", phi.rs(), std::move(vals), Parity::odd);
}

std::pair<Mollifier, Mollifier> derive_alpha_beta(const Mollifier& phi, const Mollifier& psi) {
  constexpr double tol = 1e-8;
  if (phi.parity() != Parity::even || psi.parity() != Parity::odd) {
    fail(ErrorKind::invalid_input, "alpha/beta need an even phi and an odd psi");
  }
  if (std::abs(phi.moment(0) - 1.0) > tol || std::abs(psi.moment(1) - 1.0) > tol ||
      std::abs(phi.moment(1)) > tol || std::abs(psi.moment(0)) > tol) {
    fail(ErrorKind::invalid_input, "phi/psi moments do not match (int phi = 1, int x psi = 1)");
  }
  if (phi.rs() != psi.rs()) fail(ErrorKind::invalid_input, "phi and psi must share a grid");
  const cplx I(0.0, 1.0);
  std::vector<cplx> a(phi.size()), b(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const double r = phi.rs()[k];
    const cplx f = phi.values()[k], p = psi.values()[k];
    a[k] = 0.5 * ((f - r * p) - I * (p + r * f));
    b[k] = 0.5 * ((f + r * p) - I * (p - r * f));
  }
  return {Mollifier("alpha", phi.rs(), std::move(a), Parity::none),
          Mollifier("beta", phi.rs(), std::move(b), Parity::none)};
}

namespace {

void check_support(double y, const LineFunction& f, double x) {
  if (!(y > 0.0)) fail(ErrorKind::invalid_input, "convolution scale y must be positive");
  if (x - y < f.lo() - 1e-12 || x + y > f.hi() + 1e-12) {
    fail(ErrorKind::out_of_domain, "kernel support [x-y, x+y] leaves the function grid");
  }
}

cplx convolve_one(const Mollifier& m, double y, const LineFunction& f, double x) {
  const auto& rs = m.rs();
  const auto& vs = m.values();
  CompensatedComplexSum s;
  // Endpoint samples vanish, so interior nodes carry the full weight.
  for (std::size_t k = 1; k + 1 < rs.size(); ++k) {
    if (vs[k] == cplx(0.0)) continue;
    s.add(vs[k] * f(x - y * rs[k]));
  }
  return s.value() * m.step();
}

}  // namespace

cplx convolve_scaled(const Mollifier& m, double y, const LineFunction& f, double x) {
  check_support(y, f, x);
  return convolve_one(m, y, f, x);
}

std::vector<cplx> convolve_scaled(const Mollifier& m, double y, const LineFunction& f,
                                  const std::vector<double>& xs) {
  for (double x : xs) check_support(y, f, x);
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = convolve_one(m, y, f, xs[i]); });
  return out;
}

void write_kernel_csv(const Mollifier& m, std::ostream& os) {
  os << "r,value_re,value_im\n";
  os.precision(17);
  for (std::size_t k = 0; k < m.size(); ++k) {
    os << m.rs()[k] << ',' << m.values()[k].real() << ',' << m.values()[k].imag() << '\n';
  }
}

}  // namespace wpflow
