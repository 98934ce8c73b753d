#pragma once

#include <optional>

#include "dsing/types.hpp"

namespace dsing {

/// Admissible perturbation set S: per-coefficient masks of entries forced
/// to zero, an optional realness constraint, and frozen coefficients whose
/// perturbation block is identically zero. The orthogonal projection onto S
/// under Re<.,.> zeroes masked entries, drops imaginary parts and zeroes
/// frozen blocks; all three are coordinate projections and commute.
struct StructureSpec {
  /// masks[i](r,c) != 0 means entry (r,c) of block i is forced to zero.
  /// Empty vector means no sparsity constraint on any block.
  std::vector<Eigen::MatrixXi> masks;
  bool real = false;
  std::vector<int> frozen;  // 0-based block indices with Delta_i == 0

  bool unconstrained() const { return masks.empty() && !real && frozen.empty(); }

  void validate(Eigen::Index n, int d) const;

  /// Mask derived from the zero pattern of each coefficient, so that the
  /// perturbation preserves the coefficients' sparsity.
  static StructureSpec sparsity_of(const MatrixBlock& coefficients, bool real_flag);
};

/// Orthogonal projection of a block onto S.
MatrixBlock project(const StructureSpec& spec, const MatrixBlock& z);

/// True iff project(spec, z) == z entrywise within tol.
bool is_member(const StructureSpec& spec, const MatrixBlock& z, Real tol = 1e-14);

}  // namespace dsing
