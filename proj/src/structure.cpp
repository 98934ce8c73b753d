#include "dsing/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsing {

void StructureSpec::validate(Eigen::Index n, int d) const {
  if (!masks.empty() && static_cast<int>(masks.size()) != d)
    throw std::invalid_argument("mask count must match coefficient count");
  for (const auto& m : masks)
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("mask size mismatch");
  for (int i : frozen)
    if (i < 0 || i >= d) throw std::invalid_argument("frozen index out of range");
}

StructureSpec StructureSpec::sparsity_of(const MatrixBlock& coefficients,
                                         bool real_flag) {
  StructureSpec spec;
  spec.real = real_flag;
  spec.masks.reserve(coefficients.size());
  for (const auto& a : coefficients) {
    Eigen::MatrixXi mask = Eigen::MatrixXi::Zero(a.rows(), a.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        if (a(r, c) == Complex{0.0, 0.0}) mask(r, c) = 1;
    spec.masks.push_back(std::move(mask));
  }
  return spec;
}

MatrixBlock project(const StructureSpec& spec, const MatrixBlock& z) {
  MatrixBlock out = z;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& b = out[i];
    if (spec.real) b = b.real().cast<Complex>();
    if (!spec.masks.empty()) {
      const auto& mask = spec.masks[i];
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        for (Eigen::Index c = 0; c < b.cols(); ++c)
          if (mask(r, c)) b(r, c) = Complex{0.0, 0.0};
    }
  }
  for (int i : spec.frozen) out[static_cast<std::size_t>(i)].setZero();
  return out;
}

bool is_member(const StructureSpec& spec, const MatrixBlock& z, Real tol) {
  const MatrixBlock p = project(spec, z);
  for (std::size_t i = 0; i < z.size(); ++i)
    if ((p[i] - z[i]).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

}  // namespace dsing
