#pragma once

#include <optional>
#include <string>

#include "dsing/inner_flow.hpp"
#include "dsing/verify.hpp"

namespace dsing {

struct OuterOptions {
  /// Functional zero threshold. Unset resolves to m * 1e-10 for the plain
  /// functional and 1e-12 for the scaled one.
  std::optional<Real> tol1;
  Real tol2 = 1e-6;   // bracket width target
  Real tol3 = 1e-12;  // Taylor probe tolerance
  Real beta = 1e-3;   // node recount trigger on the coefficient ratio R_k
  std::optional<Real> eps0;
  Real eps_low = 0.0;
  std::optional<Real> eps_up;
  int k_max = 60;
  bool scaled_functional = false;

  int m_min = 4;
  int m_max = 512;
  int norm_points = 64;
  /// Pins the node count and disables probing; used by the comparison mode
  /// that relies on the fundamental theorem of algebra.
  std::optional<int> fixed_m;
  FlowOptions flow;
  unsigned seed = 12345;
};

struct IterationRecord {
  int k = 0;
  Real eps = 0.0;
  Real g = 0.0;
  Real g_prime = 0.0;
  int m = 0;
  char kind = 'N';  // 'N' Newton, 'B' bisection, 'S' seed iterate
  bool recomputed_m = false;
};

struct DistanceReport {
  Real eps_star = 0.0;           // normalized scale
  Real eps_star_original = 0.0;  // alpha * eps_star
  MatrixBlock delta_star;        // unit-norm structured perturbation
  NormalizationRecord normalization;
  std::vector<IterationRecord> iterations;
  std::vector<int> m_history;
  bool converged = false;
  bool m_frozen = false;
  bool coefficients_in_structure = true;
  Real eps_low_final = 0.0;
  Real eps_up_final = 0.0;
  Real g_final = 0.0;
  int final_m = 0;
  std::size_t svd_count = 0;

  /// |det| extrema of the certified perturbation over 200 circle nodes.
  Real circle_max_det = 0.0;
  Real circle_min_det = 0.0;

  /// sigma_min extrema of the certified perturbation over the verification
  /// grid; filled by the solve pipeline.
  bool has_grid = false;
  Real grid_max_sigma = 0.0;
  Real grid_min_sigma = 0.0;
  long grid_count = 0;
};

/// Inner stationary value g(eps) and its derivative g'(eps) = -||Pi_S(M)||_F
/// (scaled consistently when the scaled functional is active).
struct GEval {
  Real g = 0.0;
  Real g_prime = 0.0;
  FlowResult flow;
};

GEval g_and_derivative(const MatrixValuedFunction& f, Real eps,
                       const MatrixBlock& delta_warm, const StructureSpec& spec,
                       const PointSet& points, const FlowOptions& flow_opts,
                       bool scaled = false);

/// Newton-bisection search for the smallest eps with g(eps) = 0, with
/// adaptive recomputation of the node count. The input is normalized first;
/// eps_star is reported on the normalized scale, eps_star_original on the
/// original one.
DistanceReport distance_to_singularity(const MatrixValuedFunction& f,
                                       const StructureSpec& spec,
                                       const OuterOptions& opts = {});

/// Node count (d-1)n + 1 mandated by the fundamental theorem of algebra for
/// a matrix polynomial with d monomial terms of size n.
int fta_point_count(int n, int d);
/// Same, from the function itself (n * degree + 1); rejects non-polynomials.
int fta_point_count(const MatrixValuedFunction& f);

}  // namespace dsing
