#include "dsing/taylor_probe.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace dsing {

PointSet PointSet::roots_of_unity(int m) {
  if (m < 1) throw std::invalid_argument("node count must be positive");
  PointSet ps;
  ps.m = m;
  ps.nodes.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    ps.nodes.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / m));
  return ps;
}

Complex taylor_coeff(const AnalyticFn& f, int j, int num_nodes) {
  if (num_nodes < 1) throw std::invalid_argument("need at least one node");
  Complex acc{0.0, 0.0};
  for (int k = 1; k <= num_nodes; ++k) {
    const Real theta = 2.0 * std::numbers::pi * k / num_nodes;
    const Complex z = std::polar(1.0, theta);
    const Complex fz = f(z);
    if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag()))
      throw std::runtime_error("non-finite function value on the unit circle");
    acc += std::polar(1.0, -theta * j) * fz;
  }
  return acc / static_cast<Real>(num_nodes);
}

Complex TaylorProbe::eval_node(long k, long n) {
  k %= n;
  if (k < 0) k += n;
  const long g = std::gcd(k == 0 ? n : k, n);
  const auto key = std::make_pair(k / g, n / g);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
  const Complex fz = f_(z);
  if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag()))
    throw std::runtime_error("non-finite function value on the unit circle");
  cache_.emplace(key, fz);
  return fz;
}

ProbeResult TaylorProbe::choose_num_points(const ProbeOptions& opts) {
  if (opts.m_min < 1 || opts.m_max < opts.m_min || opts.tol <= 0.0)
    throw std::invalid_argument("invalid probe options");

  ProbeResult result;
  for (int m = opts.m_min; m <= opts.m_max; ++m) {
    const int num_nodes = 2 * m + 1;
    std::vector<Complex> values(static_cast<std::size_t>(num_nodes));
    for (int k = 1; k <= num_nodes; ++k)
      values[static_cast<std::size_t>(k - 1)] = eval_node(k, num_nodes);

    // All window indices m..2m are below num_nodes, hence alias-free for
    // any content the m-point interpolant is expected to capture.
    Real worst = 0.0;
    for (int j = m; j <= 2 * m; ++j) {
      Complex acc{0.0, 0.0};
      for (int k = 1; k <= num_nodes; ++k) {
        const Real theta = 2.0 * std::numbers::pi * k / num_nodes;
        acc += std::polar(1.0, -theta * j) * values[static_cast<std::size_t>(k - 1)];
      }
      worst = std::max(worst, std::abs(acc) / num_nodes);
    }
    result.decay.emplace_back(m, worst);
    if (worst <= opts.tol) {
      result.m = m;
      result.converged = true;
      return result;
    }
  }
  result.m = opts.m_max;
  result.converged = false;
  return result;
}

ProbeResult choose_num_points(const AnalyticFn& f, const ProbeOptions& opts) {
  TaylorProbe probe(f);
  return probe.choose_num_points(opts);
}

}  // namespace dsing
