#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wpflow/functions.hpp"

namespace wpflow {

enum class Parity { even, odd, none };
const char* to_string(Parity parity);

inline constexpr std::size_t kDefaultKernelCells = 4096;

/// Smooth kernel supported on [-1, 1], sampled on a symmetric uniform grid.
/// Moments are computed once with the trapezoid rule on the samples.
class Mollifier {
 public:
  Mollifier() = default;
  Mollifier(std::string name, std::vector<double> rs, std::vector<cplx> values,
            Parity parity);

  const std::string& name() const { return name_; }
  const std::vector<double>& rs() const { return rs_; }
  const std::vector<cplx>& values() const { return values_; }
  Parity parity() const { return parity_; }
  bool is_complex() const { return complex_; }
  double step() const { return step_; }
  std::size_t size() const { return rs_.size(); }

  /// int r^k m(r) dr for k = 0, 1, 2.
  cplx moment(int k) const { return moments_.at(static_cast<std::size_t>(k)); }

 private:
  std::string name_;
  std::vector<double> rs_;
  std::vector<cplx> values_;
  std::vector<cplx> moments_;
  Parity parity_ = Parity::none;
  bool complex_ = false;
  double step_ = 0.0;
};

/// c exp(-1/(1-x^2)) with unit mass.
Mollifier make_phi(std::size_t cells = kDefaultKernelCells);
/// x phi(x) / int x^2 phi, odd with unit first moment.
Mollifier make_psi(const Mollifier& phi);

/// alpha = ((phi - x psi) - i (psi + x phi)) / 2,
/// beta  = ((phi + x psi) - i (psi - x phi)) / 2.
std::pair<Mollifier, Mollifier> derive_alpha_beta(const Mollifier& phi,
                                                  const Mollifier& psi);

/// int y^-1 m((x - t)/y) f(t) dt, trapezoid on the kernel grid.
cplx convolve_scaled(const Mollifier& m, double y, const LineFunction& f, double x);

/// Same, for many abscissas at once; rows of the result follow xs.
std::vector<cplx> convolve_scaled(const Mollifier& m, double y, const LineFunction& f,
                                  const std::vector<double>& xs);

/// CSV table: r, value_re, value_im.
void write_kernel_csv(const Mollifier& m, std::ostream& os);

}  // namespace wpflow
