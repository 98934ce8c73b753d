#include "dsing/linalg.hpp"

#include <atomic>
#include <stdexcept>

#include <Eigen/SVD>

namespace dsing {

namespace {

std::atomic<std::size_t> g_svd_calls{0};

void require_square_finite(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

// Rotate the pair (u, v) by a common unit phase so that the largest-modulus
// entry of v becomes real positive. M v = sigma u is preserved.
void fix_phase(CVector& u, CVector& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex pivot = v(imax);
  const Real mod = std::abs(pivot);
  if (mod == 0.0) return;
  const Complex phase = std::conj(pivot) / mod;
  v *= phase;
  u *= phase;
}

}  // namespace

Complex det(const CMatrix& m) {
  require_square_finite(m);
  return m.partialPivLu().determinant();
}

std::vector<SingularTriplet> svd_full(const CMatrix& m) {
  require_square_finite(m);
  g_svd_calls.fetch_add(1, std::memory_order_relaxed);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  std::vector<SingularTriplet> out(static_cast<std::size_t>(sigma.size()));
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    auto& t = out[static_cast<std::size_t>(j)];
    t.sigma = sigma(j);
    t.u = svd.matrixU().col(j);
    t.v = svd.matrixV().col(j);
    fix_phase(t.u, t.v);
  }
  return out;
}

SingularTriplet svd_smallest(const CMatrix& m) {
  auto all = svd_full(m);
  if (all.empty()) throw std::invalid_argument("empty matrix");
  return all.back();
}

int numerical_rank(const CMatrix& m, Real delta) {
  auto all = svd_full(m);
  int r = 0;
  for (const auto& t : all)
    if (t.sigma > delta) ++r;
  return r;
}

std::size_t svd_call_count() { return g_svd_calls.load(std::memory_order_relaxed); }

}  // namespace dsing
