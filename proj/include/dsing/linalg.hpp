#pragma once

#include "dsing/types.hpp"

namespace dsing {

/// Determinant via partially pivoted LU. Singular input returns 0.
Complex det(const CMatrix& m);

/// Full SVD, triplets ordered by descending sigma. Left/right vectors are
/// orthonormal and phase-fixed so that the largest-modulus entry of each v
/// is real positive, which keeps gradient assembly deterministic.
std::vector<SingularTriplet> svd_full(const CMatrix& m);

/// Smallest singular triplet of a square matrix.
SingularTriplet svd_smallest(const CMatrix& m);

/// Count of singular values above the threshold delta (numerical rank).
/// The matrix is numerically singular iff the result is < n.
int numerical_rank(const CMatrix& m, Real delta);

/// Number of SVD factorizations performed since process start. Used by the
/// CLI to compare per-iteration cost of the two node-count strategies.
std::size_t svd_call_count();

}  // namespace dsing
