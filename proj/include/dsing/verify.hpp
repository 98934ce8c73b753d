#pragma once

#include <optional>

#include "dsing/function_model.hpp"
#include "dsing/types.hpp"

namespace dsing {

/// Rectangular complex-plane grid, optionally intersected with the closed
/// unit disk. Nodes are x + i y for x in [x_lo, x_hi], y in [y_lo, y_hi]
/// stepped uniformly.
struct GridSpec {
  Real x_lo = -0.9, x_hi = 0.9;
  Real y_lo = -0.9, y_hi = 0.9;
  Real step = 0.01;
  bool restrict_to_unit_disk = false;

  void validate() const;

  /// Paper-style defaults: [-0.9, 0.9]^2 for general functions, the unit
  /// disk intersection of [-1, 1]^2 for polynomial comparisons.
  static GridSpec function_default();
  static GridSpec polynomial_default();
};

struct GridSummary {
  Real max_sigma_min = 0.0;
  Real min_sigma_min = 0.0;
  long count = 0;
  long failures = 0;
  /// Filled when keep_values is requested; one row per node.
  std::vector<std::tuple<Real, Real, Real>> values;  // (re, im, sigma_min)
};

/// Smallest singular value of F(lambda) + eps DeltaF(lambda) over the grid.
GridSummary grid_sigma_min(const MatrixValuedFunction& f, const MatrixBlock& delta,
                           Real eps, const GridSpec& grid, bool keep_values = false,
                           int threads = 1);

/// max/min of |det(F + eps DeltaF)| over p equispaced unit-circle nodes.
std::pair<Real, Real> circle_det_sweep(const MatrixValuedFunction& f,
                                       const MatrixBlock& delta, Real eps, int points);

/// CSV export with header `re,im,sigma_min`, 17 significant digits.
void write_grid_csv(std::ostream& os, const GridSummary& summary);

}  // namespace dsing
