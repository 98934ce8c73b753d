#pragma once

#include "dsing/function_model.hpp"
#include "dsing/structure.hpp"
#include "dsing/taylor_probe.hpp"
#include "dsing/types.hpp"

namespace dsing {

/// Value of the functional G_eps = (1/2) sum_j sigma_j^2 over the node set,
/// together with the per-node smallest singular triplets it was assembled
/// from. With `scaled` the sum is divided by m^2 (the polynomial-comparison
/// functional); the gradient is scaled consistently.
struct FunctionalValue {
  Real value = 0.0;
  std::vector<SingularTriplet> triplets;
  /// Nodes where the two smallest singular values differ by < 1e-12.
  std::vector<int> near_degenerate;
};

FunctionalValue functional_G(const MatrixValuedFunction& f, const MatrixBlock& delta,
                             Real eps, const PointSet& points, bool scaled = false);

/// Free gradient M_i = s * sum_j sigma_j conj(f_i(mu_j)) u_j v_j^H, with
/// s = 1/m^2 when scaled. Triplets must come from the matching functional_G
/// call on the same node set.
MatrixBlock free_gradient(const MatrixValuedFunction& f, const PointSet& points,
                          const std::vector<SingularTriplet>& triplets,
                          bool scaled = false);

struct FlowOptions {
  int max_steps = 2000;
  Real h0 = 0.1;
  Real h_min = 1e-12;
  Real h_max = 1e6;
  Real stationarity_tol = 1e-6;
  /// Early exit once G falls below this value (0 disables). The outer
  /// iteration sets it well under tol1 so that certified perturbations keep
  /// the determinant small between nodes as well.
  Real g_stop = 0.0;
  /// Below this value the flow is in the certified regime: the alignment
  /// exit is suppressed and descent continues toward g_stop (0 disables).
  Real g_certify = 0.0;
  /// Random structured kicks applied on stagnation at a flagged degenerate
  /// node (multiple smallest singular values).
  int max_restarts = 3;
  unsigned seed = 12345;
};

struct FlowResult {
  MatrixBlock delta;
  Real g = 0.0;
  /// Projected gradient Pi_S(M) at the final state.
  MatrixBlock gradient;
  int steps = 0;
  bool converged = false;
  int restarts = 0;
  /// Accepted-step values of G, non-increasing within each restart segment.
  std::vector<Real> g_history;
};

/// Integrates the norm-constrained gradient system
///   Delta' = -Pi_S(M) + eta Delta,   eta = Re<Pi_S(M), Delta>,
/// by projected explicit Euler with adaptive step size, until the stationary
/// alignment || P + ||P|| Delta || <= tol ||P|| holds (stationary points are
/// negative multiples of Pi_S(M)).
FlowResult flow_to_stationary(const MatrixValuedFunction& f, Real eps,
                              const MatrixBlock& delta0, const StructureSpec& spec,
                              const PointSet& points, const FlowOptions& opts,
                              bool scaled = false);

/// Steepest-descent start -Pi_S(M)/||Pi_S(M)|| evaluated on the unperturbed
/// function; falls back to the normalized all-ones structured block when the
/// projected gradient vanishes.
MatrixBlock initial_perturbation(const MatrixValuedFunction& f,
                                 const StructureSpec& spec, const PointSet& points);

struct PolishResult {
  MatrixBlock delta;
  Real g = 0.0;
  bool success = false;
  int steps = 0;
};

/// Levenberg-damped Gauss-Newton refinement of the per-node residuals
/// sigma_j at fixed eps, over the structured coordinates. The gradient flow
/// converges only linearly along the nearly flat valley that appears when
/// eps exceeds the distance; this quadratic polish takes the stalled flow
/// state the rest of the way down so that the certificate ||det|| stays
/// small between the nodes too. Monotone in sum sigma_j^2; returns success
/// once G (in the same scaling as functional_G) falls below target_g.
PolishResult polish_to_singular(const MatrixValuedFunction& f, Real eps,
                                const MatrixBlock& delta0, const StructureSpec& spec,
                                const PointSet& points, Real target_g,
                                int max_iters = 30, bool scaled = false);

}  // namespace dsing
