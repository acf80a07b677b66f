#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wpflow/functions.hpp"
#include "wpflow/mollifier.hpp"

namespace wpflow {

struct GridSpec {
  double half_width = 8.0;
  double y_min = 1.0 / 128.0;
  double y_max = 4.0;
  std::size_t x_cells = 256;
  std::size_t y_nodes = 128;
};

/// Truncated upper half plane [-X, X] x [y_min, Y]: uniform in x, geometric in y,
/// tensor trapezoid weights.
class HalfPlaneGrid {
 public:
  HalfPlaneGrid() : HalfPlaneGrid(GridSpec{}) {}
  explicit HalfPlaneGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  std::size_t nx() const { return xs_.size(); }
  std::size_t ny() const { return ys_.size(); }
  std::size_t size() const { return xs_.size() * ys_.size(); }
  std::size_t index(std::size_t i, std::size_t j) const { return j * xs_.size() + i; }
  double x(std::size_t i) const { return xs_[i]; }
  double y(std::size_t j) const { return ys_[j]; }
  double weight(std::size_t i, std::size_t j) const { return wx_[i] * wy_[j]; }
  double hx() const { return xs_[1] - xs_[0]; }
  /// Nodes not on the outer boundary of the rectangle.
  bool interior(std::size_t i, std::size_t j) const {
    return i > 0 && j > 0 && i + 1 < nx() && j + 1 < ny();
  }

 private:
  GridSpec spec_;
  std::vector<double> xs_, ys_, wx_, wy_;
};

enum class FieldTag { rho, dbar, d, mu, reich_H, reich_dbar_H, reich_A3, generic };
const char* to_string(FieldTag tag);

/// Row-major (y outer, x inner) complex values on a HalfPlaneGrid.
struct ComplexGridField {
  FieldTag tag = FieldTag::generic;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<cplx> values;

  cplx at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
  double sup_abs() const;
};

ComplexGridField make_field(FieldTag tag, const HalfPlaneGrid& grid);

struct EnergyReport {
  double value = 0.0;
  double sup_mu = 0.0;
  GridSpec grid{};
};

/// Primitive of e^u normalized to fix 0 and 1.
IncreasingMap gamma_u(const LineFunction& u);

/// rho(x + iy) = phi_y * gamma_u(x) - i psi_y * gamma_u(x).
ComplexGridField rho_extension(const LineFunction& u, const HalfPlaneGrid& grid);

enum class WirtingerMethod { kernels, finite_difference };

struct WirtingerPair {
  ComplexGridField dbar;
  ComplexGridField d;
};

WirtingerPair wirtinger(const LineFunction& u, const HalfPlaneGrid& grid,
                        WirtingerMethod method);

/// Wirtinger derivatives of an arbitrary sampled field by centered differences
/// (second order; one-sided on the rectangle edges).
WirtingerPair finite_difference_wirtinger(const ComplexGridField& f, const HalfPlaneGrid& grid);

/// Largest |a - b| over interior nodes.
double interior_sup_difference(const ComplexGridField& a, const ComplexGridField& b,
                               const HalfPlaneGrid& grid);

/// mu = dbar / d. |d| < 1e-9 anywhere is a degeneracy error.
ComplexGridField beltrami(const WirtingerPair& w);
ComplexGridField beltrami(const LineFunction& u, const HalfPlaneGrid& grid,
                          WirtingerMethod method = WirtingerMethod::kernels);

/// (1/pi) sum w |mu|^2 / y^2 over the grid.
EnergyReport wp_energy(const ComplexGridField& mu, const HalfPlaneGrid& grid);

/// Message when the H^1/2 seminorm of u exceeds the smallness threshold.
std::optional<std::string> smallness_warning(const LineFunction& u, double threshold);

/// (1/y) int_{-y}^{y} |u(x + t) - u(x)|^2 dt.
double local_oscillation(const LineFunction& u, double x, double y);

struct FubiniSides {
  double lhs = 0.0;
  double rhs = 0.0;
  /// Contribution of x outside the grid, added identically to both sides.
  double exterior = 0.0;
};

/// Both sides of
///   int int y^-3 int_{-y}^{y} |u(x+t) - u(x)|^2 dt dx dy
///     = int int |u(x+t) - u(x)|^2 / (2 t^2) dt dx,
/// the y-integral starting at the grid's y_min with closed-form tails.
FubiniSides fubini_check(const LineFunction& u, const HalfPlaneGrid& grid);

/// x, y, re, im per node.
void write_field_csv(const ComplexGridField& f, const HalfPlaneGrid& grid, std::ostream& os);
/// gnuplot splot blocks: "x y |f|" with a blank line between y rows.
void write_field_matrix(const ComplexGridField& f, const HalfPlaneGrid& grid, std::ostream& os);

}  // namespace wpflow
