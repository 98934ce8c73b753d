#pragma once

// Shared helpers and independent oracles for the test suites. Everything in
// here deliberately avoids the library's own linear algebra paths.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dsing/types.hpp"

namespace dsing::testing {

inline CMatrix random_complex(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(dist(rng), dist(rng));
  return m;
}

inline CMatrix random_real(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(dist(rng), 0.0);
  return m;
}

inline CVector random_unit_vector(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

/// Determinant by cofactor expansion along the first row; exponential cost,
/// fine for n <= 6.
inline Complex cofactor_det(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  Complex acc{0.0, 0.0};
  double sign = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    CMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, cc++) = m(r, k);
      }
    }
    acc += sign * m(0, c) * cofactor_det(minor);
    sign = -sign;
  }
  return acc;
}

/// Singular values via the eigen-decomposition of M^H M, descending.
inline std::vector<double> eig_singular_values(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m);
  std::vector<double> out;
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i)
    out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  return out;
}

}  // namespace dsing::testing
