#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dsing {

using Real = double;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// One singular triplet (sigma, u, v) with M v = sigma u and M^H u = sigma v.
struct SingularTriplet {
  Real sigma = 0.0;
  CVector u;
  CVector v;
};

/// Block of d square matrices, the basic object for coefficient lists,
/// perturbations and gradients alike. Conceptually the n x (d*n)
/// concatenation [B_d, ..., B_1].
using MatrixBlock = std::vector<CMatrix>;

inline Real block_norm(const MatrixBlock& blocks) {
  Real s = 0.0;
  for (const auto& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

/// Re<A, B> with <A, B> = sum_i trace(A_i^H B_i), the real inner product
/// used for projections and gradients.
inline Real block_inner_re(const MatrixBlock& a, const MatrixBlock& b) {
  Real s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i].cwiseProduct(b[i].conjugate()).sum().real();
  return s;
}

inline MatrixBlock zero_block_like(const MatrixBlock& blocks) {
  MatrixBlock z;
  z.reserve(blocks.size());
  for (const auto& b : blocks) z.push_back(CMatrix::Zero(b.rows(), b.cols()));
  return z;
}

}  // namespace dsing
