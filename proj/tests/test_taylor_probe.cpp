#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "dsing/benchmarks.hpp"
#include "dsing/taylor_probe.hpp"

using namespace dsing;
namespace bm = dsing::benchmarks;

namespace {

AnalyticFn polynomial(std::vector<Complex> coeffs) {
  return [coeffs = std::move(coeffs)](Complex z) {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
}

Real factorial(int k) {
  Real f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("point set nodes are the m-th roots of unity") {
  const PointSet ps = PointSet::roots_of_unity(7);
  REQUIRE(ps.nodes.size() == 7);
  for (const Complex& mu : ps.nodes) {
    CHECK(std::abs(std::abs(mu) - 1.0) < 1e-15);
    Complex p{1.0, 0.0};
    for (int i = 0; i < 7; ++i) p *= mu;
    CHECK(std::abs(p - Complex(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("monomial coefficients are exact") {
  const AnalyticFn cube = [](Complex z) { return z * z * z; };
  CHECK(std::abs(taylor_coeff(cube, 3, 8) - Complex(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(taylor_coeff(cube, 2, 8)) < 1e-14);
}

TEST_CASE("exp coefficient with the trapezoidal bound") {
  const AnalyticFn ef = [](Complex z) { return std::exp(z); };
  const Complex a4 = taylor_coeff(ef, 4, 32);
  const Real truth = 1.0 / factorial(4);
  // Bound M (r^j + r^-j) / (r^m - 1) with r = 2, M = e^2, j = 4, m = 32.
  const Real bound =
      std::exp(2.0) * (16.0 + 1.0 / 16.0) / (std::pow(2.0, 32) - 1.0);
  CHECK(std::abs(a4 - Complex(truth, 0.0)) <= bound);
}

TEST_CASE("polynomial exactness below the node count") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<Real> dist(-1.0, 1.0);
  std::vector<Complex> coeffs(7);
  for (auto& c : coeffs) c = Complex(dist(rng), dist(rng));
  const AnalyticFn f = polynomial(coeffs);
  for (const int nodes : {8, 11, 17}) {
    for (int j = 0; j < static_cast<int>(coeffs.size()); ++j) {
      const Complex est = taylor_coeff(f, j, nodes);
      CHECK(std::abs(est - coeffs[static_cast<std::size_t>(j)]) <=
            1e-12 * (1.0 + std::abs(coeffs[static_cast<std::size_t>(j)])));
    }
  }
}

TEST_CASE("aliasing law for polynomials") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<Real> dist(-1.0, 1.0);
  std::vector<Complex> coeffs(13);
  for (auto& c : coeffs) c = Complex(dist(rng), dist(rng));
  const AnalyticFn f = polynomial(coeffs);
  const int nodes = 5;
  for (int j = 0; j < nodes; ++j) {
    Complex expected{0.0, 0.0};
    for (std::size_t l = static_cast<std::size_t>(j); l < coeffs.size(); l += nodes)
      expected += coeffs[l];
    CHECK(std::abs(taylor_coeff(f, j, nodes) - expected) < 1e-12);
  }
}

TEST_CASE("geometric decay of exp coefficients") {
  const AnalyticFn ef = [](Complex z) { return std::exp(z); };
  for (int j = 4; j <= 12; ++j)
    CHECK(std::abs(taylor_coeff(ef, j, 4 * j)) <= 2.0 / factorial(j));
}

TEST_CASE("choose_num_points on a pure monomial") {
  // f = z^2: the window {a_m, ..., a_2m} clears only from m = 3 onward.
  const AnalyticFn sq = [](Complex z) { return z * z; };
  const ProbeResult r = choose_num_points(sq, ProbeOptions{1, 64, 1e-12});
  CHECK(r.converged);
  CHECK(r.m == 3);
}

TEST_CASE("choose_num_points flags non-decaying input") {
  const AnalyticFn f = [](Complex z) { return 1.0 / (1.0 - 0.999 * z * z); };
  const ProbeResult r = choose_num_points(f, ProbeOptions{2, 16, 1e-12});
  CHECK_FALSE(r.converged);
  CHECK(r.m == 16);
}

TEST_CASE("choose_num_points is monotone in the tolerance") {
  const auto [fn, rec] = normalize(bm::motivating_dde(1.0), 64);
  const AnalyticFn f = perturbed_det_fn(fn, {}, 0.0);
  int prev_m = 1 << 20;
  for (const Real tol : {1e-14, 1e-12, 1e-10, 1e-8, 1e-4}) {
    const ProbeResult r = choose_num_points(f, ProbeOptions{1, 256, tol});
    REQUIRE(r.converged);
    CHECK(r.m <= prev_m);
    prev_m = r.m;
  }
}

TEST_CASE("probe rejects non-finite values") {
  const AnalyticFn f = [](Complex z) {
    return Complex(std::numeric_limits<Real>::quiet_NaN(), 0.0);
  };
  CHECK_THROWS_AS(taylor_coeff(f, 0, 4), std::runtime_error);
  CHECK_THROWS_AS(choose_num_points(f, ProbeOptions{1, 4, 1e-12}), std::runtime_error);
}

TEST_CASE("time_delay probe lands near the published node count") {
  const auto [fn, rec] = normalize(bm::time_delay(), 64);
  const ProbeResult r =
      choose_num_points(perturbed_det_fn(fn, {}, 0.0), ProbeOptions{4, 512, 1e-12});
  REQUIRE(r.converged);
  CHECK(r.m >= 10);
  CHECK(r.m <= 20);
}
