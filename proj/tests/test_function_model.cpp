#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "dsing/benchmarks.hpp"
#include "dsing/function_model.hpp"
#include "dsing/linalg.hpp"
#include "test_support.hpp"

using namespace dsing;
using namespace dsing::testing;
namespace bm = dsing::benchmarks;

TEST_CASE("scalar term evaluation") {
  CHECK(eval_scalar(ScalarTerm::monomial(2), Complex(3.0, 0.0)) ==
        Complex(9.0, 0.0));
  // Euler identity: exp(-i pi) = -1
  const Complex v = eval_scalar(ScalarTerm::exponential(Complex(-1.0, 0.0)),
                                Complex(0.0, std::numbers::pi));
  CHECK(std::abs(v - Complex(-1.0, 0.0)) < 1e-15);
  const Complex w =
      eval_scalar(ScalarTerm::monomial_exp(1, Complex(-1.0, 0.0)), Complex(1.0, 0.0));
  CHECK(std::abs(w - Complex(std::exp(-1.0), 0.0)) < 1e-15);
  CHECK(eval_scalar(ScalarTerm::monomial(0), Complex(0.0, 0.0)) == Complex(1.0, 0.0));
}

TEST_CASE("eval_perturbed basic") {
  const MatrixValuedFunction f =
      make_function({{ScalarTerm::monomial(1), CMatrix::Identity(2, 2)}});
  const CMatrix m = eval_perturbed(f, {}, 0.0, Complex(2.0, 0.0));
  CHECK((m - 2.0 * CMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("eval_perturbed rejects mismatched blocks") {
  const MatrixValuedFunction f =
      make_function({{ScalarTerm::monomial(1), CMatrix::Identity(2, 2)}});
  MatrixBlock wrong_count(2, CMatrix::Identity(2, 2));
  CHECK_THROWS_AS(eval_perturbed(f, wrong_count, 1.0, Complex(0, 0)),
                  std::invalid_argument);
  MatrixBlock wrong_size{CMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(eval_perturbed(f, wrong_size, 1.0, Complex(0, 0)),
                  std::invalid_argument);
}

TEST_CASE("motivating example: lambda = 0 is a root for any delay") {
  for (const Real tau : {1.0, 1e-5}) {
    const auto f = bm::motivating_dde(tau);
    CHECK(std::abs(det_at(f, Complex(0.0, 0.0))) < 1e-14);
  }
}

TEST_CASE("motivating example determinant matches the closed form") {
  const auto f = bm::motivating_dde(1.0);
  // det at lambda = 1: 5/2 - 3/e + 1/(2 e^2)
  const Real expected = 2.5 - 3.0 * std::exp(-1.0) + 0.5 * std::exp(-2.0);
  CHECK(std::abs(det_at(f, Complex(1.0, 0.0)) - Complex(expected, 0.0)) < 1e-12);
  CHECK(expected == doctest::Approx(1.464029).epsilon(1e-6));

  for (unsigned seed = 0; seed < 20; ++seed) {
    const CVector z = random_unit_vector(1, 200 + seed);
    const Complex lambda = 1.5 * z(0);
    const Complex closed = bm::motivating_det_closed_form(lambda, 1.0);
    CHECK(std::abs(det_at(f, lambda) - closed) <= 1e-12 * std::abs(closed));
  }
}

TEST_CASE("the small-delay limit pencil is identically singular") {
  const auto pencil = bm::singular_pencil();
  CHECK(std::abs(det_at(pencil, Complex(0.7, 0.0))) < 1e-15);
  CHECK(std::abs(det_at(pencil, Complex(-0.3, 1.1))) < 1e-15);
}

TEST_CASE("det_at of a constant identity") {
  const MatrixValuedFunction f =
      make_function({{ScalarTerm::monomial(0), CMatrix::Identity(2, 2)}});
  CHECK(std::abs(det_at(f, Complex(5.0, -3.0)) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("normalize scales 2I to the identity") {
  const MatrixValuedFunction f =
      make_function({{ScalarTerm::monomial(0), 2.0 * CMatrix::Identity(2, 2)}});
  const auto [fn, rec] = normalize(f, 16);
  CHECK(rec.alpha == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rec.max_abs_det_before == doctest::Approx(4.0).epsilon(1e-14));
  CHECK((fn.terms[0].second - CMatrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("normalize is a fixed point at max |det| = 1") {
  const MatrixValuedFunction f =
      make_function({{ScalarTerm::monomial(0), CMatrix::Identity(3, 3)}});
  const auto [fn, rec] = normalize(f, 8);
  CHECK(rec.alpha == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((fn.terms[0].second - f.terms[0].second).norm() < 1e-14);
}

TEST_CASE("normalize on the motivating example against dense sampling") {
  const auto f = bm::motivating_dde(1.0);
  const auto [fn, rec] = normalize(f, 64);

  // independent evaluation of the sampled maximum through the closed form
  Real max64 = 0.0, max4096 = 0.0;
  for (int j = 1; j <= 4096; ++j) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * j / 4096.0);
    const Real a = std::abs(bm::motivating_det_closed_form(z, 1.0));
    max4096 = std::max(max4096, a);
    if (j % 64 == 0) max64 = std::max(max64, a);
  }
  CHECK(rec.alpha == doctest::Approx(std::sqrt(max64)).epsilon(1e-12));
  CHECK(rec.alpha <= std::sqrt(max4096) * (1.0 + 1e-12));
  CHECK(rec.alpha >= std::sqrt(max4096) * 0.98);

  // after normalization the sampled maximum is 1
  Real maxn = 0.0;
  for (int j = 1; j <= 64; ++j) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * j / 64.0);
    maxn = std::max(maxn, std::abs(det_at(fn, z)));
  }
  CHECK(maxn == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("normalize fails on the identically singular pencil") {
  CHECK_THROWS_AS(normalize(bm::singular_pencil(), 32), PossiblySingularError);
}

TEST_CASE("scaling consistency of normalize") {
  const auto f = bm::motivating_dde(1.0);
  MatrixValuedFunction scaled = f;
  const Real c = 3.7;
  for (auto& [t, a] : scaled.terms) a *= c;

  const auto [fn1, rec1] = normalize(f, 64);
  const auto [fn2, rec2] = normalize(scaled, 64);
  CHECK(rec2.alpha / rec1.alpha == doctest::Approx(c).epsilon(1e-12));
  for (std::size_t i = 0; i < fn1.terms.size(); ++i)
    CHECK((fn1.terms[i].second - fn2.terms[i].second).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("determinant scale homogeneity") {
  const auto f = bm::motivating_dde(1.0);
  MatrixValuedFunction scaled = f;
  const Real c = 2.5;
  for (auto& [t, a] : scaled.terms) a *= c;
  const Complex lambda(0.3, 0.4);
  const Complex lhs = det_at(scaled, lambda);
  const Complex rhs = std::pow(c, 2) * det_at(f, lambda);
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
}

TEST_CASE("eval_perturbed is linear in eps") {
  const auto f = bm::motivating_dde(1.0);
  MatrixBlock delta;
  for (int i = 0; i < 3; ++i) delta.push_back(random_complex(2, 50 + i));
  const Complex lambda(0.2, -0.7);
  const Real eps = 0.37;

  const CMatrix base = eval_perturbed(f, delta, 0.0, lambda);
  const CMatrix shifted = eval_perturbed(f, delta, eps, lambda);
  CMatrix expected = CMatrix::Zero(2, 2);
  const CVector fvals = f.scalar_values(lambda);
  for (int i = 0; i < 3; ++i) expected += fvals(i) * delta[static_cast<std::size_t>(i)];
  CHECK((shifted - base - eps * expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("make_function validates input") {
  CHECK_THROWS_AS(make_function({}), std::invalid_argument);
  CHECK_THROWS_AS(
      make_function({{ScalarTerm::monomial(1), CMatrix::Zero(2, 2)}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      make_function({{ScalarTerm::monomial(1), CMatrix::Identity(2, 2)},
                     {ScalarTerm::monomial(0), CMatrix::Identity(3, 3)}}),
      std::invalid_argument);
}
