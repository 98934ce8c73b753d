#include "dsing/inner_flow.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dsing/linalg.hpp"

namespace dsing {

namespace {

constexpr Real kDegenerateGap = 1e-12;

void renormalize(MatrixBlock& delta) {
  const Real nrm = block_norm(delta);
  if (nrm == 0.0) throw std::runtime_error("perturbation collapsed to zero");
  for (auto& b : delta) b /= nrm;
}

MatrixBlock axpy(const MatrixBlock& x, Real h, const MatrixBlock& d) {
  MatrixBlock out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * d[i];
  return out;
}

MatrixBlock random_structured_unit(const StructureSpec& spec, Eigen::Index n, int d,
                                   std::mt19937& rng) {
  std::normal_distribution<Real> gauss(0.0, 1.0);
  MatrixBlock block(static_cast<std::size_t>(d), CMatrix(n, n));
  for (auto& b : block)
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) b(r, c) = Complex(gauss(rng), gauss(rng));
  block = project(spec, block);
  const Real nrm = block_norm(block);
  if (nrm == 0.0) throw std::runtime_error("structure admits only the zero block");
  for (auto& b : block) b /= nrm;
  return block;
}

}  // namespace

FunctionalValue functional_G(const MatrixValuedFunction& f, const MatrixBlock& delta,
                             Real eps, const PointSet& points, bool scaled) {
  FunctionalValue out;
  out.triplets.reserve(points.nodes.size());
  Real sum = 0.0;
  for (std::size_t j = 0; j < points.nodes.size(); ++j) {
    const CMatrix w = eval_perturbed(f, delta, eps, points.nodes[j]);
    auto all = svd_full(w);
    const auto& smallest = all.back();
    if (all.size() >= 2 && all[all.size() - 2].sigma - smallest.sigma < kDegenerateGap)
      out.near_degenerate.push_back(static_cast<int>(j));
    sum += smallest.sigma * smallest.sigma;
    out.triplets.push_back(smallest);
  }
  out.value = 0.5 * sum;
  if (scaled) out.value /= static_cast<Real>(points.m) * static_cast<Real>(points.m);
  return out;
}

MatrixBlock free_gradient(const MatrixValuedFunction& f, const PointSet& points,
                          const std::vector<SingularTriplet>& triplets, bool scaled) {
  if (triplets.size() != points.nodes.size())
    throw std::invalid_argument("triplet count does not match node count");
  const Eigen::Index n = f.size();
  const int d = f.num_terms();
  MatrixBlock grad(static_cast<std::size_t>(d), CMatrix::Zero(n, n));
  for (std::size_t j = 0; j < points.nodes.size(); ++j) {
    const auto& t = triplets[j];
    if (t.sigma == 0.0) continue;  // degenerate node contributes its vanishing limit
    const CMatrix outer = t.sigma * (t.u * t.v.adjoint());
    const CVector fvals = f.scalar_values(points.nodes[j]);
    for (int i = 0; i < d; ++i)
      grad[static_cast<std::size_t>(i)] += std::conj(fvals(i)) * outer;
  }
  if (scaled) {
    const Real m2 = static_cast<Real>(points.m) * static_cast<Real>(points.m);
    for (auto& g : grad) g /= m2;
  }
  return grad;
}

FlowResult flow_to_stationary(const MatrixValuedFunction& f, Real eps,
                              const MatrixBlock& delta0, const StructureSpec& spec,
                              const PointSet& points, const FlowOptions& opts,
                              bool scaled) {
  MatrixBlock delta = project(spec, delta0);
  renormalize(delta);

  FlowResult best;
  FunctionalValue fv = functional_G(f, delta, eps, points, scaled);
  best.delta = delta;
  best.g = fv.value;
  best.g_history.push_back(fv.value);

  auto finish = [&](bool converged, int steps, int restarts) {
    best.converged = converged;
    best.steps = steps;
    best.restarts = restarts;
    const FunctionalValue final_fv = functional_G(f, best.delta, eps, points, scaled);
    best.g = final_fv.value;
    best.gradient =
        project(spec, free_gradient(f, points, final_fv.triplets, scaled));
    return best;
  };

  // With eps = 0 the flow cannot change G (dG/dt carries a factor eps).
  if (eps == 0.0) return finish(true, 0, 0);

  std::mt19937 rng(opts.seed);
  Real h = opts.h0;
  int rejects_in_a_row = 0;
  int restarts = 0;
  bool have_prev = false;
  MatrixBlock prev_delta, prev_direction;

  for (int step = 1; step <= opts.max_steps; ++step) {
    if (opts.g_stop > 0.0 && fv.value <= opts.g_stop) return finish(true, step, restarts);
    const bool certified = opts.g_certify > 0.0 && fv.value <= opts.g_certify;

    const MatrixBlock grad = project(spec, free_gradient(f, points, fv.triplets, scaled));
    const Real pnorm = block_norm(grad);
    if (pnorm == 0.0) return finish(true, step, restarts);

    if (!certified) {
      const Real align = block_norm(axpy(grad, pnorm, delta));
      if (align <= opts.stationarity_tol * pnorm) return finish(true, step, restarts);
    }

    const Real eta = block_inner_re(grad, delta);
    MatrixBlock direction(delta.size());
    for (std::size_t i = 0; i < direction.size(); ++i)
      direction[i] = -grad[i] + eta * delta[i];

    // Spectral (Barzilai-Borwein) step proposal; the monotone acceptance
    // test below safeguards it. Plain growth-by-1.25 stalls in the long
    // flat valleys that show up when eps is close to the distance.
    if (have_prev) {
      MatrixBlock s(delta.size()), y(delta.size());
      for (std::size_t i = 0; i < delta.size(); ++i) {
        s[i] = delta[i] - prev_delta[i];
        y[i] = prev_direction[i] - direction[i];
      }
      const Real sy = block_inner_re(s, y);
      if (sy > 0.0) {
        const Real ss = block_inner_re(s, s);
        h = std::clamp(ss / sy, opts.h_min, opts.h_max);
      }
    }
    prev_delta = delta;
    prev_direction = direction;
    have_prev = true;

    bool accepted = false;
    while (!accepted) {
      MatrixBlock cand = project(spec, axpy(delta, h, direction));
      renormalize(cand);
      const FunctionalValue cand_fv = functional_G(f, cand, eps, points, scaled);
      if (cand_fv.value <= fv.value) {
        delta = std::move(cand);
        fv = cand_fv;
        best.g_history.push_back(fv.value);
        if (fv.value <= best.g) {
          best.g = fv.value;
          best.delta = delta;
        }
        h = std::min(h * 1.25, opts.h_max);
        rejects_in_a_row = 0;
        accepted = true;
      } else {
        h *= 0.5;
        ++rejects_in_a_row;
        if (rejects_in_a_row >= 5 && restarts < opts.max_restarts) {
          // Persistent rejections mean a stall: either a degenerate smallest
          // singular value or a flat plateau. Nudge sideways with an
          // escalating structured kick and restart the step-size control.
          const MatrixBlock kick =
              random_structured_unit(spec, f.size(), f.num_terms(), rng);
          const Real magnitude = std::min(1e-3 * std::pow(10.0, restarts), 0.1);
          delta = project(spec, axpy(delta, magnitude, kick));
          renormalize(delta);
          fv = functional_G(f, delta, eps, points, scaled);
          best.g_history.push_back(fv.value);
          h = opts.h0;
          rejects_in_a_row = 0;
          ++restarts;
          break;
        }
        if (h < opts.h_min) {
          // In the certified regime a stalled step size means we reached the
          // numerical floor of the descent, not a failure.
          const bool at_floor = opts.g_certify > 0.0 && fv.value <= opts.g_certify;
          return finish(at_floor, step, restarts);
        }
      }
    }
  }
  return finish(false, opts.max_steps, restarts);
}

namespace {

/// Real coordinates of the structure subspace S: one (block, row, col, part)
/// tuple per degree of freedom.
struct StructureBasis {
  struct Dof {
    int block;
    Eigen::Index row, col;
    bool imag;
  };
  std::vector<Dof> dofs;

  static StructureBasis build(const StructureSpec& spec, Eigen::Index n, int d) {
    StructureBasis basis;
    std::vector<bool> frozen(static_cast<std::size_t>(d), false);
    for (int i : spec.frozen) frozen[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < d; ++i) {
      if (frozen[static_cast<std::size_t>(i)]) continue;
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
          if (!spec.masks.empty() && spec.masks[static_cast<std::size_t>(i)](r, c))
            continue;
          basis.dofs.push_back({i, r, c, false});
          if (!spec.real) basis.dofs.push_back({i, r, c, true});
        }
    }
    return basis;
  }
};

}  // namespace

namespace {

/// adj(W) from the full SVD: for W = U S V^H, adj(W) = det(U) conj(det(V))
/// V diag(prod_{k != i} s_k) U^H. Stable when the smallest singular value
/// vanishes, where det(W) W^{-1} is not.
CMatrix adjugate(const CMatrix& w) {
  const Eigen::Index n = w.rows();
  Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  CVector prod_others(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Real p = 1.0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != i) p *= s(k);
    prod_others(i) = Complex(p, 0.0);
  }
  const Complex phase = svd.matrixU().partialPivLu().determinant() *
                        std::conj(svd.matrixV().partialPivLu().determinant());
  return phase * svd.matrixV() * prod_others.asDiagonal() *
         svd.matrixU().adjoint();
}

/// Levenberg iteration on the determinant residuals det(W_j), whose exact
/// Jacobian is the adjugate: d det(W) = tr(adj(W) dW). The sigma-based
/// functional has nearly flat valleys where gradient descent stalls; the
/// determinant is polynomial in the perturbation and stays well-behaved.
PolishResult polish_once(const MatrixValuedFunction& f, Real eps,
                         const MatrixBlock& delta0, const StructureSpec& spec,
                         const PointSet& points, Real target_g, int max_iters,
                         bool scaled, const StructureBasis& basis) {
  PolishResult out;
  out.delta = project(spec, delta0);
  renormalize(out.delta);

  const int m = points.m;
  const int num_dofs = static_cast<int>(basis.dofs.size());

  auto det_residual = [&](const MatrixBlock& delta) {
    Real sum = 0.0;
    for (const Complex& mu : points.nodes)
      sum += std::norm(det(eval_perturbed(f, delta, eps, mu)));
    return sum;
  };

  Real resid2 = det_residual(out.delta);
  Real lambda = 0.0;
  int stalled = 0;

  for (int iter = 0; iter < max_iters; ++iter) {
    Eigen::VectorXd resid(2 * m);
    Eigen::MatrixXd jac(2 * m, num_dofs);
    for (int j = 0; j < m; ++j) {
      const Complex mu = points.nodes[static_cast<std::size_t>(j)];
      const CMatrix w = eval_perturbed(f, out.delta, eps, mu);
      const CMatrix adj_t = adjugate(w).transpose();  // d det / d W entrywise
      const Complex dj = det(w);
      resid(2 * j) = dj.real();
      resid(2 * j + 1) = dj.imag();
      const CVector fvals = f.scalar_values(mu);
      for (int k = 0; k < num_dofs; ++k) {
        const auto& dof = basis.dofs[static_cast<std::size_t>(k)];
        Complex g = eps * fvals(dof.block) * adj_t(dof.row, dof.col);
        if (dof.imag) g *= Complex(0.0, 1.0);
        jac(2 * j, k) = g.real();
        jac(2 * j + 1, k) = g.imag();
      }
    }

    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * resid;
    const Real diag_scale = std::max(jtj.diagonal().maxCoeff(), 1e-300);
    if (lambda == 0.0) lambda = 1e-4 * diag_scale;

    const Real before = resid2;
    bool stepped = false;
    for (int attempt = 0; attempt < 20; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda;
      const Eigen::VectorXd x = damped.ldlt().solve(-jtr);
      if (!x.allFinite() || x.norm() > 0.5) {
        lambda *= 4.0;
        continue;
      }
      MatrixBlock cand = out.delta;
      for (int k = 0; k < num_dofs; ++k) {
        const auto& dof = basis.dofs[static_cast<std::size_t>(k)];
        cand[static_cast<std::size_t>(dof.block)](dof.row, dof.col) +=
            dof.imag ? Complex(0.0, x(k)) : Complex(x(k), 0.0);
      }
      cand = project(spec, cand);
      renormalize(cand);
      const Real cand_resid2 = det_residual(cand);
      if (cand_resid2 < resid2) {
        out.delta = std::move(cand);
        resid2 = cand_resid2;
        lambda = std::max(lambda / 3.0, 1e-14 * diag_scale);
        stepped = true;
        break;
      }
      lambda *= 4.0;
    }
    ++out.steps;
    if (!stepped) break;
    stalled = (before - resid2 <= 1e-3 * before) ? stalled + 1 : 0;
    if (stalled >= 3) break;
    if (resid2 == 0.0) break;
  }
  out.g = functional_G(f, out.delta, eps, points, scaled).value;
  out.success = out.g <= target_g;
  return out;
}

}  // namespace

PolishResult polish_to_singular(const MatrixValuedFunction& f, Real eps,
                                const MatrixBlock& delta0, const StructureSpec& spec,
                                const PointSet& points, Real target_g, int max_iters,
                                bool scaled) {
  const StructureBasis basis = StructureBasis::build(spec, f.size(), f.num_terms());
  if (basis.dofs.empty() || eps == 0.0) {
    PolishResult out;
    out.delta = project(spec, delta0);
    renormalize(out.delta);
    out.g = functional_G(f, out.delta, eps, points, scaled).value;
    out.success = out.g <= target_g;
    return out;
  }

  PolishResult best =
      polish_once(f, eps, delta0, spec, points, target_g, max_iters, scaled, basis);
  if (best.success) return best;

  // The Gauss-Newton model can stall on plateaus where the residual sits in
  // near-null directions of the Jacobian; jittered restarts walk around them.
  std::mt19937 rng(977);
  for (int attempt = 0; attempt < 3 && !best.success; ++attempt) {
    const Real magnitude = 3e-2 * std::pow(3.0, attempt);
    MatrixBlock start = best.delta;
    const MatrixBlock kick = random_structured_unit(spec, f.size(), f.num_terms(), rng);
    for (std::size_t i = 0; i < start.size(); ++i) start[i] += magnitude * kick[i];
    PolishResult trial =
        polish_once(f, eps, start, spec, points, target_g, max_iters, scaled, basis);
    trial.steps += best.steps;
    if (trial.g < best.g) best = trial;
  }
  return best;
}

MatrixBlock initial_perturbation(const MatrixValuedFunction& f,
                                 const StructureSpec& spec, const PointSet& points) {
  const FunctionalValue fv = functional_G(f, {}, 0.0, points, false);
  MatrixBlock grad = project(spec, free_gradient(f, points, fv.triplets, false));
  const Real nrm = block_norm(grad);
  if (nrm > 0.0) {
    for (auto& g : grad) g /= -nrm;
    return grad;
  }
  MatrixBlock ones(static_cast<std::size_t>(f.num_terms()),
                   CMatrix::Ones(f.size(), f.size()));
  ones = project(spec, ones);
  const Real onrm = block_norm(ones);
  if (onrm == 0.0)
    throw std::invalid_argument("structure admits only the zero perturbation");
  for (auto& b : ones) b /= onrm;
  return ones;
}

}  // namespace dsing
