#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wpflow/flow.hpp"
#include "wpflow/functions.hpp"
#include "wpflow/semmes.hpp"

namespace wpflow {

/// f(t) = a + b t + r(t) with r windowed on a fine uniform grid. The affine
/// part is handled in closed form; r by trapezoid quadrature.
class BoundaryFunction {
 public:
  BoundaryFunction() = default;
  BoundaryFunction(double a, double b, std::optional<LineFunction> remainder = std::nullopt);

  static BoundaryFunction affine(double a, double b) { return {a, b}; }
  /// Resamples f (Tail::zero) on a grid of the given step and drops the
  /// negligible ends.
  static BoundaryFunction windowed(const LineFunction& f, double step);

  double a() const { return a_; }
  double b() const { return b_; }
  bool has_remainder() const { return remainder_.has_value(); }
  const LineFunction& remainder() const { return *remainder_; }
  /// Quadrature step of the remainder (0 without one).
  double step() const { return remainder_ ? remainder_->step() : 0.0; }
  double decay_exponent() const;

  double operator()(double t) const;

 private:
  double a_ = 0.0;
  double b_ = 0.0;
  std::optional<LineFunction> remainder_;
};

/// (z^2 + 1)/(i pi) int f(t) / ((t - z)(t^2 + 1)) dt.
cplx reich_A(const BoundaryFunction& f, cplx z);
/// Third derivative of reich_A: (6/(i pi)) int f(t) / (t - z)^4 dt.
cplx reich_A3(const BoundaryFunction& f, cplx z);
/// (z - conj z)^3 / (2 i pi) int f(t) / ((t - z)(t - conj z)^3) dt.
cplx reich_H_at(const BoundaryFunction& f, cplx z);

struct DeformationField {
  ComplexGridField values;
  ComplexGridField dbar;
};

/// Hf at every node plus its dbar by centered differences.
DeformationField reich_H(const BoundaryFunction& f, const HalfPlaneGrid& grid);
ComplexGridField reich_A3_field(const BoundaryFunction& f, const HalfPlaneGrid& grid);

/// |dbar Hf + y^2 conj((Af)''')| over interior nodes.
ResidualReport check_dbar_identity(const DeformationField& field, const ComplexGridField& a3,
                         const HalfPlaneGrid& grid);
ResidualReport check_dbar_identity(const BoundaryFunction& f, const HalfPlaneGrid& grid);

/// sum w |dbar|^2 / y^2.
double qd_energy(const DeformationField& field, const HalfPlaneGrid& grid);
/// sum w |(Af)'''|^2 y^2.
double a3_energy(const ComplexGridField& a3, const HalfPlaneGrid& grid);

struct SidePair {
  cplx lhs{};
  cplx rhs{};
};

/// Grid used for the (z + i)^-k family: [-64, 64] x [2^-10, 64], 1024 x 256.
GridSpec analytic_family_grid();

/// int int |psi_k|^2 and int int |psi_k'|^2 y^2 for psi_k = (z + i)^-k.
SidePair dirichlet_equiv(int k, const HalfPlaneGrid& grid, double scale = 1.0);
/// Closed forms of the same pair.
SidePair dirichlet_closed_form(int k);

/// psi_k(z) directly and via (4/pi) int int v^2 psi'(w) / (conj w - z)^3.
SidePair reproducing_check(int k, cplx z, const HalfPlaneGrid& grid);

/// conj((Af)'''(z)) against -(12/pi) int int dbar f~(w) / (w - conj z)^4.
SidePair check_a3_representation(const BoundaryFunction& f, const DeformationField& field, cplx z,
                    const HalfPlaneGrid& grid);

struct TransferReport {
  double residual = 0.0;          // |FD dbar f~ - (dbar g~ o gamma) conj(gamma')/gamma'|
  double modulus_residual = 0.0;  // ||dbar f~| - |dbar g~ o gamma||
  std::size_t samples = 0;
};

/// For a real angular speed a with a(0) = 0, g = i zeta a is tangential with
/// g(1) = 0. The disk extension sum_{n>=0} c_n w^n + sum_{n<0} c_n conj(w)^|n|
/// is moved to the half plane as f~ = (g~ o gamma) / gamma'.
TransferReport cayley_transfer_check(const CircleFunction& a);

/// i e^{i theta} a(theta) as a complex circle function.
CircleFunction tangential_field(const CircleFunction& a);

}  // namespace wpflow
