#include "dsing/outer_newton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsing/linalg.hpp"

namespace dsing {

namespace {

Real resolve_tol1(const OuterOptions& opts, int m) {
  if (opts.tol1) return *opts.tol1;
  return opts.scaled_functional ? 1e-12 : static_cast<Real>(m) * 1e-10;
}

FlowOptions resolve_flow(const OuterOptions& opts, Real tol1) {
  FlowOptions flow = opts.flow;
  flow.seed = opts.seed;
  if (flow.g_stop <= 0.0) flow.g_stop = std::max(1e-26, 1e-8 * tol1);
  if (flow.g_certify <= 0.0) flow.g_certify = tol1;
  return flow;
}

/// Rigorous lower bound on the distance at the given node set: a
/// perturbation of unit block norm moves F(mu) by at most eps ||f(mu)||_2
/// in spectral norm, so singularity at every node needs
/// eps >= max_j sigma_min(F(mu_j)) / ||f(mu_j)||_2. The sqrt(2 tol1) slack
/// accounts for the functional threshold.
Real eps_lower_bound(const MatrixValuedFunction& f, const PointSet& points,
                     Real tol1) {
  Real bound = 0.0;
  for (const Complex& mu : points.nodes) {
    const Real smin = svd_smallest(eval(f, mu)).sigma;
    const Real fnorm = f.scalar_values(mu).norm();
    if (fnorm == 0.0) continue;
    bound = std::max(bound, (smin - std::sqrt(2.0 * tol1)) / fnorm);
  }
  return std::max(bound, 0.0);
}

MatrixBlock perturbed_coefficients(const MatrixValuedFunction& f,
                                   const MatrixBlock& delta, Real eps) {
  MatrixBlock out = f.coefficients();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += eps * delta[i];
  return out;
}

Real block_distance(const MatrixBlock& a, const MatrixBlock& b) {
  Real s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
  return std::sqrt(s);
}

}  // namespace

GEval g_and_derivative(const MatrixValuedFunction& f, Real eps,
                       const MatrixBlock& delta_warm, const StructureSpec& spec,
                       const PointSet& points, const FlowOptions& flow_opts,
                       bool scaled) {
  GEval out;
  out.flow = flow_to_stationary(f, eps, delta_warm, spec, points, flow_opts, scaled);
  out.g = out.flow.g;
  out.g_prime = -block_norm(out.flow.gradient);
  return out;
}

int fta_point_count(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("invalid dimensions");
  return (d - 1) * n + 1;
}

int fta_point_count(const MatrixValuedFunction& f) {
  if (!f.is_polynomial())
    throw std::invalid_argument(
        "the fundamental-theorem-of-algebra node count applies to matrix "
        "polynomials only");
  return static_cast<int>(f.size()) * f.degree() + 1;
}

DistanceReport distance_to_singularity(const MatrixValuedFunction& f,
                                       const StructureSpec& spec,
                                       const OuterOptions& opts) {
  const std::size_t svd_before = svd_call_count();

  auto [fn, record] = normalize(f, opts.norm_points);
  spec.validate(fn.size(), fn.num_terms());

  DistanceReport report;
  // Frozen-coefficient structures intentionally leave [A_d,...,A_1] outside
  // the perturbation set, so membership is recorded rather than enforced.
  report.coefficients_in_structure = is_member(spec, fn.coefficients());
  report.normalization = record;

  // Working node count: adaptive probe on det(F) unless pinned.
  int m = 0;
  if (opts.fixed_m) {
    m = *opts.fixed_m;
  } else {
    ProbeOptions probe_opts{opts.m_min, opts.m_max, opts.tol3};
    const ProbeResult probe = choose_num_points(perturbed_det_fn(fn, {}, 0.0), probe_opts);
    m = probe.m;
  }
  PointSet points = PointSet::roots_of_unity(m);
  Real tol1 = resolve_tol1(opts, m);
  FlowOptions flow_opts = resolve_flow(opts, tol1);

  const Real eps_lb = eps_lower_bound(fn, points, tol1);
  Real eps_low = std::max(opts.eps_low, eps_lb);
  Real eps_up = opts.eps_up ? *opts.eps_up : block_norm(fn.coefficients());
  if (eps_up <= eps_low) eps_up = std::max(eps_up, eps_low * (1.0 + 1e-6) + 1e-300);

  Real eps = opts.eps0 ? *opts.eps0 : (eps_lb > 0.0 ? eps_lb : eps_up / 100.0);
  eps = std::clamp(eps, std::max(eps_low, 1e-300), eps_up);

  MatrixBlock delta = initial_perturbation(fn, spec, points);
  MatrixBlock coeff_prev;  // A_{k-1} for the ratio test

  bool have_certified = false;
  Real best_eps = eps_up;
  MatrixBlock best_delta;
  Real best_g = 0.0;
  int best_m = m;
  report.m_frozen = false;

  int k = 0;
  char kind = 'S';
  while (k <= opts.k_max) {
    GEval ev = g_and_derivative(fn, eps, delta, spec, points, flow_opts, opts.scaled_functional);
    delta = ev.flow.delta;

    // Node recount on relative coefficient movement (skipped on the first
    // iterate and once the bracket is nearly closed, Assumption on constant
    // m near the target).
    bool recomputed = false;
    if (!opts.fixed_m && !report.m_frozen && !coeff_prev.empty()) {
      const MatrixBlock coeff_now = perturbed_coefficients(fn, delta, eps);
      const Real ratio = block_distance(coeff_now, coeff_prev) / block_norm(coeff_prev);
      if (ratio >= opts.beta) {
        ProbeOptions probe_opts{opts.m_min, opts.m_max, opts.tol3};
        const ProbeResult probe =
            choose_num_points(perturbed_det_fn(fn, delta, eps), probe_opts);
        // Increases are capped at 2m per recount; decreases are skipped
        // entirely. Fewer nodes would only save work, and dropping nodes
        // invalidates the certificate carried by the current iterate (the
        // probe sees the present perturbation, not the final one).
        int m_new = std::clamp(probe.m, m, 2 * m);
        m_new = std::clamp(m_new, 1, opts.m_max);
        if (m_new != m) {
          m = m_new;
          points = PointSet::roots_of_unity(m);
          tol1 = resolve_tol1(opts, m);
          flow_opts = resolve_flow(opts, tol1);
          recomputed = true;
          // g must be classified on the node set it is compared on.
          ev = g_and_derivative(fn, eps, delta, spec, points, flow_opts,
                                opts.scaled_functional);
          delta = ev.flow.delta;
        }
      }
    }
    // The flow's descent is only linear along the flat valley on the
    // singular side; when it stalls above tol1, a Gauss-Newton polish of
    // the node residuals settles whether a certifiable perturbation exists
    // at this eps.
    if (ev.g > tol1 && ev.g <= 1e-3) {
      const PolishResult polish =
          polish_to_singular(fn, eps, delta, spec, points, flow_opts.g_stop, 30,
                             opts.scaled_functional);
      if (polish.g <= tol1) {
        delta = polish.delta;
        ev.g = polish.g;
      }
    }
    coeff_prev = perturbed_coefficients(fn, delta, eps);

    report.iterations.push_back(
        IterationRecord{k, eps, ev.g, ev.g_prime, m, kind, recomputed});
    report.m_history.push_back(m);

    Real eps_next;
    if (ev.g > tol1) {
      eps_low = std::max(eps_low, eps);
      if (ev.g_prime < 0.0) {
        eps_next = eps - ev.g / ev.g_prime;
        kind = 'N';
      } else {
        eps_next = 0.5 * (eps_low + eps_up);
        kind = 'B';
      }
    } else {
      eps_up = std::min(eps_up, eps);
      if (!have_certified || eps <= best_eps) {
        have_certified = true;
        best_eps = eps;
        best_delta = delta;
        best_g = ev.g;
        best_m = m;
      }
      eps_next = 0.5 * (eps_low + eps_up);
      kind = 'B';
    }

    ++k;
    if (have_certified && eps_up - eps_low <= opts.tol2) {
      report.converged = true;
      break;
    }
    if (eps_next < eps_low || eps_next > eps_up) eps_next = 0.5 * (eps_low + eps_up);
    if (!report.m_frozen && eps_up - eps_low < 10.0 * opts.tol2) report.m_frozen = true;
    eps = eps_next;
  }

  report.eps_low_final = eps_low;
  report.eps_up_final = eps_up;
  if (!have_certified) {
    // No iterate reached g <= tol1; report the best effort.
    best_eps = eps_up;
    best_delta = delta;
    best_g = 0.0;
    report.converged = false;
  }
  report.eps_star = best_eps;
  report.eps_star_original = record.alpha * best_eps;
  report.delta_star = best_delta;
  report.g_final = best_g;
  report.final_m = best_m;

  const auto [max_det, min_det] = circle_det_sweep(fn, best_delta, best_eps, 200);
  report.circle_max_det = max_det;
  report.circle_min_det = min_det;
  report.svd_count = svd_call_count() - svd_before;
  return report;
}

}  // namespace dsing
