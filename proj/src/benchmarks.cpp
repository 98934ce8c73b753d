#include "dsing/benchmarks.hpp"

#include <numbers>
#include <random>

namespace dsing::benchmarks {

namespace {

constexpr Real kPi = std::numbers::pi;

CMatrix real_matrix(std::initializer_list<std::initializer_list<Real>> rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (Real v : row) m(r, c++) = Complex(v, 0.0);
    ++r;
  }
  return m;
}

Eigen::MatrixXd random_real_matrix(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<Real> gauss(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = gauss(rng);
  return m;
}

Eigen::VectorXd random_real_vector(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<Real> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

/// Rank-r real matrix whose columns are orthogonal to w.
Eigen::MatrixXd rank_limited_orthogonal(Eigen::Index n, int rank,
                                        const Eigen::VectorXd& w, std::mt19937& rng) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < rank; ++k) {
    Eigen::VectorXd u = random_real_vector(n, rng);
    u -= w * w.dot(u);  // keep w in the left null space
    const Eigen::VectorXd v = random_real_vector(n, rng);
    out += u * v.transpose();
  }
  return out;
}

struct PlantedPoly {
  std::vector<Eigen::MatrixXd> coeffs;  // leading first
  Real planted = 0.0;
};

/// Matrix polynomial with rank-limited higher coefficients, all sharing the
/// left null vector w, plus a dense constant coefficient perturbed away from
/// that null structure by delta. The determinant has exact degree at most
/// sum_i i * rank_i and the problem is within delta of a singular one.
PlantedPoly planted_polynomial(Eigen::Index n, const std::vector<int>& ranks,
                               Real delta, unsigned seed) {
  std::mt19937 rng(seed);
  Eigen::VectorXd w = random_real_vector(n, rng);
  w.normalize();

  PlantedPoly out;
  for (int rank : ranks)
    out.coeffs.push_back(rank_limited_orthogonal(n, rank, w, rng));

  Eigen::MatrixXd s0 = random_real_matrix(n, rng);
  s0 -= w * (w.transpose() * s0);  // w^T s0 = 0
  Eigen::MatrixXd e0 = random_real_matrix(n, rng);
  e0 /= e0.norm();
  out.coeffs.push_back(s0 + delta * e0);
  out.planted = delta;
  return out;
}

MatrixValuedFunction poly_from_coeffs(const std::vector<Eigen::MatrixXd>& coeffs) {
  std::vector<std::pair<ScalarTerm, CMatrix>> terms;
  const int degree = static_cast<int>(coeffs.size()) - 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    terms.emplace_back(ScalarTerm::monomial(degree - static_cast<int>(i)),
                       coeffs[i].cast<Complex>());
  return make_function(std::move(terms));
}

}  // namespace

MatrixValuedFunction time_delay() {
  const Real denom = 8.0 + 5.0 * kPi;
  const Real a1 = 2.0 / 5.0 * (65.0 * kPi + 32.0) / denom;
  const Real a2 = 9.0 * kPi * kPi * (13.0 + 5.0 * kPi) / denom;
  const Real a3 = 324.0 / 5.0 * kPi * kPi * (5.0 * kPi + 4.0) / denom;
  const Real b1 = (260.0 * kPi + 128.0 + 225.0 * kPi * kPi) / (10.0 * denom);
  const Real b2 = 45.0 * kPi * kPi / denom;
  const Real b3 =
      81.0 * kPi * kPi * (40.0 * kPi + 32.0 + 25.0 * kPi * kPi) / (10.0 * denom);

  const CMatrix a0_const =
      real_matrix({{0, 1, 0}, {0, 0, 1}, {-a3, -a2, -a1}});
  const CMatrix a1_delayed =
      real_matrix({{0, 0, 0}, {0, 0, 0}, {-b3, -b2, -b1}});

  std::vector<std::pair<ScalarTerm, CMatrix>> terms;
  terms.emplace_back(ScalarTerm::monomial(1), (-CMatrix::Identity(3, 3)).eval());
  terms.emplace_back(ScalarTerm::exponential(Complex(-1.0, 0.0)), a1_delayed);
  terms.emplace_back(ScalarTerm::monomial(0), a0_const);
  return make_function(std::move(terms));
}

StructureSpec time_delay_real() {
  StructureSpec spec;
  spec.real = true;
  return spec;
}

StructureSpec time_delay_sparsity() {
  return StructureSpec::sparsity_of(time_delay().coefficients(), true);
}

StructureSpec time_delay_rows() {
  StructureSpec spec;
  spec.real = true;
  spec.frozen = {0};
  Eigen::MatrixXi all = Eigen::MatrixXi::Ones(3, 3);
  Eigen::MatrixXi last_row_free = all;
  last_row_free.row(2).setZero();
  spec.masks = {all, last_row_free, last_row_free};
  return spec;
}

MatrixValuedFunction motivating_dde(Real tau) {
  const CMatrix e = real_matrix({{0, 0}, {1, 1}});
  const CMatrix a = real_matrix({{-1, 0.5}, {0, -1}});
  const CMatrix b = real_matrix({{1, -0.5}, {0, 0.5}});
  std::vector<std::pair<ScalarTerm, CMatrix>> terms;
  terms.emplace_back(ScalarTerm::monomial(1), e);
  terms.emplace_back(ScalarTerm::exponential(Complex(-tau, 0.0)), (-b).eval());
  terms.emplace_back(ScalarTerm::monomial(0), (-a).eval());
  return make_function(std::move(terms));
}

Complex motivating_det_closed_form(Complex lambda, Real tau) {
  const Complex e = std::exp(-tau * lambda);
  return -1.5 * lambda * e + 0.5 * e * e - 1.5 * e + 1.5 * lambda + 1.0;
}

MatrixValuedFunction singular_pencil() {
  const CMatrix e = real_matrix({{0, 0}, {1, 1}});
  const CMatrix apb = real_matrix({{0, 0}, {0, -0.5}});
  std::vector<std::pair<ScalarTerm, CMatrix>> terms;
  terms.emplace_back(ScalarTerm::monomial(1), e);
  terms.emplace_back(ScalarTerm::monomial(0), (-apb).eval());
  return make_function(std::move(terms));
}

MatrixValuedFunction mixed_type() {
  const CMatrix a2 = real_matrix({{-6.4901e-1, -1.1096, 0},
                                  {0, -8.4555e-1, 0},
                                  {0, 0, -1.9686e-1}});
  const CMatrix a1 = real_matrix({{5.8644e-1, 0, 1.6681e-1},
                                  {0, 8.7587e-1, 0},
                                  {0, 0, -1.2701}});
  const CMatrix a0 = real_matrix({{0, 0, -1.8651},
                                  {0, 1.7813, 0},
                                  {-2.7516e-1, 0, 0}});
  std::vector<std::pair<ScalarTerm, CMatrix>> terms;
  terms.emplace_back(ScalarTerm::monomial(1), a2);
  terms.emplace_back(ScalarTerm::exponential(Complex(-1.0, 0.0)), a1);
  terms.emplace_back(ScalarTerm::exponential(Complex(1.0, 0.0)), a0);
  return make_function(std::move(terms));
}

StructureSpec mixed_type_sparsity() {
  return StructureSpec::sparsity_of(mixed_type().coefficients(), false);
}

MatrixValuedFunction delay_sweep(Real tau, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<Real> uniform(0.0, 1.0);
  CMatrix a2(2, 2);
  for (Eigen::Index r = 0; r < 2; ++r)
    for (Eigen::Index c = 0; c < 2; ++c) a2(r, c) = Complex(uniform(rng), 0.0);
  const CMatrix a1 = random_real_matrix(2, rng).cast<Complex>();
  const CMatrix a0 = random_real_matrix(2, rng).cast<Complex>();

  std::vector<std::pair<ScalarTerm, CMatrix>> terms;
  terms.emplace_back(ScalarTerm::monomial(1), a2);
  terms.emplace_back(ScalarTerm::exponential(Complex(-tau, 0.0)), a1);
  terms.emplace_back(ScalarTerm::monomial(0), a0);
  return make_function(std::move(terms));
}

namespace {
constexpr Real kOmnicam1Delta = 2e-5;
constexpr Real kOmnicam2Delta = 1e-5;
constexpr Real kMirrorDelta = 4e-4;
}  // namespace

MatrixValuedFunction omnicam1_like(unsigned seed) {
  return poly_from_coeffs(planted_polynomial(9, {2, 2}, kOmnicam1Delta, seed).coeffs);
}

MatrixValuedFunction omnicam2_like(unsigned seed) {
  return poly_from_coeffs(planted_polynomial(15, {2, 2}, kOmnicam2Delta, seed).coeffs);
}

MatrixValuedFunction mirror_like(unsigned seed) {
  return poly_from_coeffs(planted_polynomial(9, {1, 1, 1, 2}, kMirrorDelta, seed).coeffs);
}

Real planted_distance_omnicam1() { return kOmnicam1Delta; }
Real planted_distance_omnicam2() { return kOmnicam2Delta; }
Real planted_distance_mirror() { return kMirrorDelta; }

}  // namespace dsing::benchmarks
