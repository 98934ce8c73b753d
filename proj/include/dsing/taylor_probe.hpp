#pragma once

#include <map>

#include "dsing/function_model.hpp"
#include "dsing/types.hpp"

namespace dsing {

/// m evaluation nodes mu_j = e^(2 pi i j / m), j = 1..m.
struct PointSet {
  int m = 0;
  std::vector<Complex> nodes;

  static PointSet roots_of_unity(int m);
};

/// Trapezoidal estimate of the j-th Taylor coefficient of f at 0 from N
/// unit-circle nodes: a_j ~= (1/N) sum_k z_k^(-j) f(z_k). For polynomials of
/// degree q < N this equals the aliased sum over coefficients l == j (mod N).
Complex taylor_coeff(const AnalyticFn& f, int j, int num_nodes);

struct ProbeOptions {
  int m_min = 4;
  int m_max = 512;
  Real tol = 1e-12;
};

struct ProbeResult {
  int m = 0;
  bool converged = false;
  /// Per candidate m, the largest de-aliased |a_j| over the checked window.
  std::vector<std::pair<int, Real>> decay;
};

/// Smallest m in [m_min, m_max] whose de-aliased coefficient window
/// {a_m, ..., a_2m} lies below tol (estimates from 2m+1 nodes, so every
/// checked index is alias-free). Returns m_max with converged = false when
/// no candidate qualifies. Evaluations are cached across candidates, keyed
/// by the node's exact reduced angle.
class TaylorProbe {
 public:
  explicit TaylorProbe(AnalyticFn f) : f_(std::move(f)) {}

  ProbeResult choose_num_points(const ProbeOptions& opts);

 private:
  Complex eval_node(long k, long n);  // z = e^(2 pi i k / n)

  AnalyticFn f_;
  std::map<std::pair<long, long>, Complex> cache_;
};

ProbeResult choose_num_points(const AnalyticFn& f, const ProbeOptions& opts = {});

}  // namespace dsing
