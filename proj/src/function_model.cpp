#include "dsing/function_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dsing/linalg.hpp"

namespace dsing {

ScalarTerm ScalarTerm::monomial(int k) {
  if (k < 0) throw std::invalid_argument("monomial power must be nonnegative");
  return ScalarTerm{Kind::Monomial, k, Complex{}};
}

ScalarTerm ScalarTerm::exponential(Complex mu) {
  return ScalarTerm{Kind::Exponential, 0, mu};
}

ScalarTerm ScalarTerm::monomial_exp(int k, Complex mu) {
  if (k < 0) throw std::invalid_argument("monomial power must be nonnegative");
  return ScalarTerm{Kind::MonomialExp, k, mu};
}

namespace {

// z^k by binary exponentiation; exact at z = 0 (0^0 = 1 here, as required
// for the constant term of a polynomial).
Complex ipow(Complex z, int k) {
  Complex acc{1.0, 0.0};
  while (k > 0) {
    if (k & 1) acc *= z;
    z *= z;
    k >>= 1;
  }
  return acc;
}

}  // namespace

Complex eval_scalar(const ScalarTerm& t, Complex lambda) {
  switch (t.kind) {
    case ScalarTerm::Kind::Monomial:
      return ipow(lambda, t.power);
    case ScalarTerm::Kind::Exponential:
      return std::exp(t.rate * lambda);
    case ScalarTerm::Kind::MonomialExp:
      return ipow(lambda, t.power) * std::exp(t.rate * lambda);
  }
  throw std::logic_error("unreachable scalar kind");
}

bool MatrixValuedFunction::is_polynomial() const {
  for (const auto& [t, a] : terms)
    if (!t.is_monomial()) return false;
  return true;
}

int MatrixValuedFunction::degree() const {
  int deg = 0;
  for (const auto& [t, a] : terms)
    if (t.is_monomial()) deg = std::max(deg, t.power);
  return deg;
}

MatrixBlock MatrixValuedFunction::coefficients() const {
  MatrixBlock out;
  out.reserve(terms.size());
  for (const auto& [t, a] : terms) out.push_back(a);
  return out;
}

CVector MatrixValuedFunction::scalar_values(Complex lambda) const {
  CVector vals(num_terms());
  for (int i = 0; i < num_terms(); ++i)
    vals(i) = eval_scalar(terms[static_cast<std::size_t>(i)].first, lambda);
  return vals;
}

void MatrixValuedFunction::validate() const {
  if (terms.empty()) throw std::invalid_argument("function has no terms");
  const Eigen::Index n = size();
  if (n == 0) throw std::invalid_argument("empty coefficient matrix");
  for (const auto& [t, a] : terms) {
    if (a.rows() != n || a.cols() != n)
      throw std::invalid_argument("all coefficients must be square of equal size");
    if (!a.allFinite())
      throw std::invalid_argument("coefficient has non-finite entries");
  }
  if (terms.front().second.isZero(0.0))
    throw std::invalid_argument("leading coefficient must be nonzero");
}

MatrixValuedFunction make_function(std::vector<std::pair<ScalarTerm, CMatrix>> terms) {
  MatrixValuedFunction f{std::move(terms)};
  f.validate();
  return f;
}

CMatrix eval(const MatrixValuedFunction& f, Complex lambda) {
  const Eigen::Index n = f.size();
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& [t, a] : f.terms) out += eval_scalar(t, lambda) * a;
  return out;
}

CMatrix eval_perturbed(const MatrixValuedFunction& f, const MatrixBlock& delta,
                       Real eps, Complex lambda) {
  if (delta.empty() || eps == 0.0) return eval(f, lambda);
  if (static_cast<int>(delta.size()) != f.num_terms())
    throw std::invalid_argument("perturbation block count mismatch");
  const Eigen::Index n = f.size();
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const auto& [t, a] = f.terms[i];
    if (delta[i].rows() != n || delta[i].cols() != n)
      throw std::invalid_argument("perturbation block size mismatch");
    out += eval_scalar(t, lambda) * (a + eps * delta[i]);
  }
  return out;
}

Complex det_at(const MatrixValuedFunction& f, Complex lambda) {
  return det(eval(f, lambda));
}

Complex det_at(const MatrixValuedFunction& f, const MatrixBlock& delta, Real eps,
               Complex lambda) {
  return det(eval_perturbed(f, delta, eps, lambda));
}

std::pair<MatrixValuedFunction, NormalizationRecord> normalize(
    const MatrixValuedFunction& f, int points) {
  f.validate();
  if (points < 1) throw std::invalid_argument("need at least one sample node");
  Real max_abs = 0.0;
  for (int j = 1; j <= points; ++j) {
    const Real theta = 2.0 * std::numbers::pi * j / points;
    const Complex z = std::polar(1.0, theta);
    max_abs = std::max(max_abs, std::abs(det_at(f, z)));
  }
  if (max_abs == 0.0)
    throw PossiblySingularError(
        "determinant vanishes at every sample node; the input may already be "
        "singular (run the verification grid to confirm)");

  const Real n = static_cast<Real>(f.size());
  const Real alpha = std::pow(max_abs, 1.0 / n);
  MatrixValuedFunction scaled = f;
  for (auto& [t, a] : scaled.terms) a /= alpha;
  return {std::move(scaled), NormalizationRecord{alpha, points, max_abs}};
}

AnalyticFn perturbed_det_fn(const MatrixValuedFunction& f, MatrixBlock delta,
                            Real eps) {
  return [f, delta = std::move(delta), eps](Complex z) {
    return det_at(f, delta, eps, z);
  };
}

}  // namespace dsing
