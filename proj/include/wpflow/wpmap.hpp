#pragma once

#include <cstddef>
#include <vector>

#include "wpflow/functions.hpp"

namespace wpflow {

/// Class of u modulo constants; the representative is made mean-zero over
/// its grid when `mean_zero` is set.
struct SobolevClass {
  LineFunction rep;
  bool mean_zero = true;

  static SobolevClass canonical(const LineFunction& u);
};

struct TangentVectorWP {
  LineFunction rep;
  bool vanishes_at_endpoints = true;
};

/// Primitive of e^u fixing 0 and 1.
IncreasingMap psi(const SobolevClass& u);

/// [int_0^1 e^u * int_0^x e^u v - int_0^1 e^u v * int_0^x e^u] / (int_0^1 e^u)^2.
TangentVectorWP d_psi(const SobolevClass& u, const SobolevClass& v);

/// (int_0^1 e^u) w' / e^u, returned mean-zero. w must vanish at 0 and 1.
SobolevClass d_psi_inv(const SobolevClass& u, const TangentVectorWP& w);

struct PullbackReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
};

/// h12(u o h) / h12(u) for every member of the family.
PullbackReport pullback_probe(const IncreasingMap& h, const std::vector<SobolevClass>& family);

/// (u - log h0') o h0^-1 on a uniform grid over h0's image.
LineFunction left_translate(const IncreasingMap& h0, const LineFunction& u);

struct IntertwiningReport {
  double residual = 0.0;
  std::size_t samples = 0;
};

/// sup |Psi(u) o h0^-1 - Psi(L_h0 u)| over the image grid.
IntertwiningReport translations(const IncreasingMap& h0, const SobolevClass& u);

/// h_t(x) = int_0^x h'(s)^t ds.
IncreasingMap interpolation_family(const IncreasingMap& h, double t);

}  // namespace wpflow
