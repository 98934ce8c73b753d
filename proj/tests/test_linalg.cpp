#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsing/linalg.hpp"
#include "test_support.hpp"

using namespace dsing;
using namespace dsing::testing;

TEST_CASE("det of identity") {
  CHECK(std::abs(det(CMatrix::Identity(3, 3)) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("det of the singular pencil evaluation") {
  // [[0, 0], [lambda, lambda + 1/2]] is singular for every lambda.
  for (const Complex lambda : {Complex(0.0, 0.0), Complex(0.7, 0.0), Complex(-1.3, 2.2)}) {
    CMatrix m(2, 2);
    m << Complex(0, 0), Complex(0, 0), lambda, lambda + Complex(0.5, 0.0);
    CHECK(std::abs(det(m)) < 1e-15);
  }
}

TEST_CASE("det matches cofactor expansion on random 4x4") {
  const CMatrix m = random_complex(4, 42);
  const Complex expected = cofactor_det(m);
  CHECK(std::abs(det(m) - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("det rejects non-square and non-finite input") {
  CHECK_THROWS_AS(det(CMatrix::Zero(2, 3)), std::invalid_argument);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(det(bad), std::invalid_argument);
}

TEST_CASE("svd_smallest on diagonal and zero matrices") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = Complex(3.0, 0.0);
  d(1, 1) = Complex(1.0, 0.0);
  const auto t = svd_smallest(d);
  CHECK(t.sigma == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(t.v(1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(t.u(1)) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(svd_smallest(CMatrix::Zero(3, 3)).sigma == 0.0);
}

TEST_CASE("svd_smallest agrees with the eigen-decomposition oracle") {
  const CMatrix m = random_complex(5, 7);
  const auto oracle = eig_singular_values(m);
  CHECK(svd_smallest(m).sigma == doctest::Approx(oracle.back()).epsilon(1e-10));
}

TEST_CASE("svd_full is descending, orthonormal and reproduces the matrix") {
  const CMatrix m = random_complex(4, 11);
  const auto triplets = svd_full(m);
  REQUIRE(triplets.size() == 4);
  for (std::size_t i = 0; i + 1 < triplets.size(); ++i)
    CHECK(triplets[i].sigma >= triplets[i + 1].sigma);
  for (const auto& t : triplets) {
    CHECK(t.u.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((m * t.v - t.sigma * t.u).norm() <= 1e-10 * m.norm());
    CHECK((m.adjoint() * t.u - t.sigma * t.v).norm() <= 1e-10 * m.norm());
  }
}

TEST_CASE("unitary matrices have all singular values 1") {
  const CMatrix q =
      Eigen::HouseholderQR<CMatrix>(random_complex(4, 3)).householderQ();
  for (const auto& t : svd_full(q)) CHECK(t.sigma == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Frobenius identity: sum sigma_i^2 = ||M||_F^2") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const CMatrix m = random_complex(3, seed);
    double sum = 0.0;
    for (const auto& t : svd_full(m)) sum += t.sigma * t.sigma;
    CHECK(sum == doctest::Approx(m.squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("sigma_min lower-bounds ||Mv|| over unit vectors") {
  const CMatrix m = random_complex(4, 19);
  const double smin = svd_smallest(m).sigma;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const CVector v = random_unit_vector(4, 100 + seed);
    CHECK(smin <= (m * v).norm() + 1e-10);
  }
}

TEST_CASE("|det| equals the product of singular values") {
  const CMatrix m = random_complex(4, 23);
  double prod = 1.0;
  for (const auto& t : svd_full(m)) prod *= t.sigma;
  CHECK(std::abs(det(m)) == doctest::Approx(prod).epsilon(1e-8));
}

TEST_CASE("phase fix leaves the largest entry of v real positive") {
  const CMatrix m = random_complex(5, 31);
  for (const auto& t : svd_full(m)) {
    Eigen::Index imax = 0;
    t.v.cwiseAbs().maxCoeff(&imax);
    CHECK(t.v(imax).imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.v(imax).real() > 0.0);
  }
}

TEST_CASE("numerical rank") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = Complex(1.0, 0.0);
  d(1, 1) = Complex(1e-16, 0.0);
  CHECK(numerical_rank(d, 1e-12) == 1);
  CHECK(numerical_rank(CMatrix::Identity(4, 4), 1e-12) == 4);

  // rank-2 3x3 built from two outer products
  const CVector a = random_unit_vector(3, 5), b = random_unit_vector(3, 6);
  const CVector c = random_unit_vector(3, 7), e = random_unit_vector(3, 8);
  const CMatrix m = a * b.adjoint() + c * e.adjoint();
  CHECK(numerical_rank(m, 1e-10) == 2);
}

TEST_CASE("numerical rank is monotone in the threshold") {
  const CMatrix m = random_complex(5, 77);
  int prev = 5;
  for (double delta : {1e-14, 1e-10, 1e-6, 1e-2, 1.0, 10.0}) {
    const int r = numerical_rank(m, delta);
    CHECK(r <= prev);
    prev = r;
  }
}
