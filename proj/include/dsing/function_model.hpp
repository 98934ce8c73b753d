#pragma once

#include <functional>
#include <optional>
#include <string>

#include "dsing/types.hpp"

namespace dsing {

/// Scalar factor of one coefficient term. All three kinds are entire:
///   Monomial(k)       f(z) = z^k
///   Exponential(mu)   f(z) = exp(mu z)
///   MonomialExp(k,mu) f(z) = z^k exp(mu z)
struct ScalarTerm {
  enum class Kind { Monomial, Exponential, MonomialExp };

  Kind kind = Kind::Monomial;
  int power = 0;
  Complex rate{0.0, 0.0};

  static ScalarTerm monomial(int k);
  static ScalarTerm exponential(Complex mu);
  static ScalarTerm monomial_exp(int k, Complex mu);

  bool is_monomial() const { return kind == Kind::Monomial; }
};

Complex eval_scalar(const ScalarTerm& t, Complex lambda);

/// F(lambda) = sum_i f_i(lambda) A_i with entire scalar factors f_i and
/// constant square coefficients A_i, stored leading term first.
struct MatrixValuedFunction {
  std::vector<std::pair<ScalarTerm, CMatrix>> terms;

  Eigen::Index size() const { return terms.empty() ? 0 : terms.front().second.rows(); }
  int num_terms() const { return static_cast<int>(terms.size()); }
  bool is_polynomial() const;

  /// Largest monomial power present; only meaningful for polynomial input.
  int degree() const;

  /// Coefficient block [A_d, ..., A_1].
  MatrixBlock coefficients() const;

  /// f_i(lambda) for every term, in term order.
  CVector scalar_values(Complex lambda) const;

  void validate() const;
};

MatrixValuedFunction make_function(std::vector<std::pair<ScalarTerm, CMatrix>> terms);

/// F(lambda); with a perturbation block, sum_i f_i(lambda) (A_i + eps D_i).
CMatrix eval(const MatrixValuedFunction& f, Complex lambda);
CMatrix eval_perturbed(const MatrixValuedFunction& f, const MatrixBlock& delta,
                       Real eps, Complex lambda);

Complex det_at(const MatrixValuedFunction& f, Complex lambda);
Complex det_at(const MatrixValuedFunction& f, const MatrixBlock& delta, Real eps,
               Complex lambda);

/// Scale record of normalize(). Distances computed for the normalized
/// function are mapped back to the original one by multiplying with alpha.
struct NormalizationRecord {
  Real alpha = 1.0;
  int points = 0;
  Real max_abs_det_before = 0.0;
};

/// Thrown when |det F| vanishes on every sample node, i.e. the input is
/// possibly already singular and should go through the verify module.
struct PossiblySingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Divides every coefficient by alpha = (max_j |det F(z_j)|)^(1/n) over p
/// equispaced unit-circle nodes, so the sampled maximum of |det| becomes 1.
std::pair<MatrixValuedFunction, NormalizationRecord> normalize(
    const MatrixValuedFunction& f, int points = 64);

/// Scalar function evaluable on the unit circle; callers promise it is
/// entire. Used by the Taylor probe for arbitrary user callbacks.
using AnalyticFn = std::function<Complex(Complex)>;

/// det(F(.) + eps * DeltaF(.)) as an AnalyticFn.
AnalyticFn perturbed_det_fn(const MatrixValuedFunction& f, MatrixBlock delta,
                            Real eps);

}  // namespace dsing
