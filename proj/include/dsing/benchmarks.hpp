#pragma once

#include "dsing/function_model.hpp"
#include "dsing/structure.hpp"

namespace dsing::benchmarks {

/// 3x3 quasipolynomial -lambda I + A0 + A1 exp(-lambda) from a time-delay
/// system with a single delay (nlevp `time_delay`). The coefficients are in
/// closed form in pi and give the problem a double non-semisimple eigenvalue
/// at lambda = 3 pi i.
MatrixValuedFunction time_delay();

/// Real perturbations, no sparsity.
StructureSpec time_delay_real();
/// Real perturbations preserving the zero pattern of each coefficient.
StructureSpec time_delay_sparsity();
/// Time-delay structure: identity coefficient frozen, only the last rows of
/// the other two coefficients perturbed (real).
StructureSpec time_delay_rows();

/// 2x2 DDAE pencil-with-delay lambda E - A - B exp(-tau lambda); E singular.
MatrixValuedFunction motivating_dde(Real tau);
/// det of the above in closed form.
Complex motivating_det_closed_form(Complex lambda, Real tau);
/// lambda E - (A + B), the identically singular small-delay limit.
MatrixValuedFunction singular_pencil();

/// 3x3 mixed advanced/retarded function lambda A2 + exp(-lambda) A1 +
/// exp(lambda) A0 with sparse coefficients (values as published).
MatrixValuedFunction mixed_type();
StructureSpec mixed_type_sparsity();

/// Random 2x2 quasipolynomial lambda A2 + exp(-tau lambda) A1 + A0 with
/// frozen generator seed; used for the delay sweep regression.
MatrixValuedFunction delay_sweep(Real tau, unsigned seed = 1);

/// Synthetic stand-ins for the camera-calibration matrix polynomials: the
/// published data is not redistributable here, so these generators reproduce
/// the characteristics that drive the node-count comparison -- size, degree,
/// a numerically low-degree determinant (rank-limited leading coefficients)
/// and a planted near-singularity of known norm.
MatrixValuedFunction omnicam1_like(unsigned seed = 7);
MatrixValuedFunction omnicam2_like(unsigned seed = 8);
MatrixValuedFunction mirror_like(unsigned seed = 9);

/// Norm of the perturbation planted by the *_like generators, an upper
/// bound on the true distance to singularity of the generated problem.
Real planted_distance_omnicam1();
Real planted_distance_omnicam2();
Real planted_distance_mirror();

}  // namespace dsing::benchmarks
