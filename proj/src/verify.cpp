#include "dsing/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "dsing/linalg.hpp"

namespace dsing {

void GridSpec::validate() const {
  if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
  if (x_hi < x_lo || y_hi < y_lo) throw std::invalid_argument("empty grid range");
}

GridSpec GridSpec::function_default() { return GridSpec{}; }

GridSpec GridSpec::polynomial_default() {
  return GridSpec{-1.0, 1.0, -1.0, 1.0, 0.01, true};
}

GridSummary grid_sigma_min(const MatrixValuedFunction& f, const MatrixBlock& delta,
                           Real eps, const GridSpec& grid, bool keep_values,
                           int threads) {
  grid.validate();
  const long nx = static_cast<long>(std::llround((grid.x_hi - grid.x_lo) / grid.step)) + 1;
  const long ny = static_cast<long>(std::llround((grid.y_hi - grid.y_lo) / grid.step)) + 1;

  std::vector<std::pair<Real, Real>> nodes;
  nodes.reserve(static_cast<std::size_t>(nx * ny));
  for (long ix = 0; ix < nx; ++ix) {
    const Real x = grid.x_lo + static_cast<Real>(ix) * grid.step;
    for (long iy = 0; iy < ny; ++iy) {
      const Real y = grid.y_lo + static_cast<Real>(iy) * grid.step;
      if (grid.restrict_to_unit_disk && x * x + y * y > 1.0 + 1e-12) continue;
      nodes.emplace_back(x, y);
    }
  }

  std::vector<Real> sigma(nodes.size(), std::numeric_limits<Real>::quiet_NaN());
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Complex lambda(nodes[i].first, nodes[i].second);
      try {
        sigma[i] = svd_smallest(eval_perturbed(f, delta, eps, lambda)).sigma;
      } catch (const std::exception&) {
        // left as NaN, counted below
      }
    }
  };

  const int nthreads = std::max(1, threads);
  if (nthreads == 1 || nodes.size() < 64) {
    worker(0, nodes.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (nodes.size() + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const std::size_t b = std::min(nodes.size(), static_cast<std::size_t>(t) * chunk);
      const std::size_t e = std::min(nodes.size(), b + chunk);
      if (b < e) pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }

  GridSummary summary;
  summary.count = static_cast<long>(nodes.size());
  Real lo = std::numeric_limits<Real>::infinity();
  Real hi = -std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::isnan(sigma[i])) {
      ++summary.failures;
      continue;
    }
    lo = std::min(lo, sigma[i]);
    hi = std::max(hi, sigma[i]);
    if (keep_values)
      summary.values.emplace_back(nodes[i].first, nodes[i].second, sigma[i]);
  }
  if (summary.failures < summary.count) {
    summary.min_sigma_min = lo;
    summary.max_sigma_min = hi;
  }
  return summary;
}

std::pair<Real, Real> circle_det_sweep(const MatrixValuedFunction& f,
                                       const MatrixBlock& delta, Real eps,
                                       int points) {
  if (points < 1) throw std::invalid_argument("need at least one node");
  Real lo = std::numeric_limits<Real>::infinity();
  Real hi = 0.0;
  for (int j = 1; j <= points; ++j) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * j / points);
    const Real a = std::abs(det_at(f, delta, eps, z));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return {hi, lo};
}

void write_grid_csv(std::ostream& os, const GridSummary& summary) {
  os << "re,im,sigma_min\n";
  os.precision(17);
  for (const auto& [re, im, s] : summary.values)
    os << re << ',' << im << ',' << s << '\n';
}

}  // namespace dsing
