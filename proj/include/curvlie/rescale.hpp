#pragma once

#include <array>
#include <vector>

#include "curvlie/algebra.hpp"
#include "curvlie/linalg.hpp"
#include "curvlie/paths.hpp"

namespace curvlie {

// Changing the bi-invariant base metric h0 to lambda*h0 replaces the
// deformation psi of a fixed endpoint metric by
//   upsilon = (1 - lambda) I + lambda psi,
// and the two curvature curves satisfy
//   kappa_ups(t) = lambda (1 - (1-lambda) t)^3 kappa_psi(lambda t / (1 - (1-lambda) t)).
// All upsilon-side quantities below are computed against the rescaled base
// metric, which contributes one overall factor lambda to inner products.

// Throws NonPositiveLambda.
Mat rescaled_deformation(const Mat& psi, double lambda);

// The reparameterization t -> lambda t / (1 - (1-lambda) t); fixes 0 and 1.
double rescale_time_map(double t, double lambda);

// kappa of the upsilon path at time t, measured against lambda*h0.
double kappa_rescaled(const LieAlgebra& alg, const InverseLinearPath& upsilon_path, double lambda,
                      const Vec& x, const Vec& y, double t);

// Taylor coefficients of the upsilon path against lambda*h0.
TaylorCoefficients rescaled_taylor_coefficients(const LieAlgebra& alg, const Mat& psi,
                                                double lambda, const Vec& x, const Vec& y);

struct CoefficientRelationReport {
  TaylorCoefficients psi_coeffs;
  TaylorCoefficients upsilon_coeffs;
  // Residuals of the four linear relations expressing the upsilon
  // coefficients through (alpha, beta, gamma, delta) of psi.
  std::array<double, 4> residuals{};
};

CoefficientRelationReport coefficient_relations(const LieAlgebra& alg, const Mat& psi,
                                                double lambda, const Vec& x, const Vec& y);

// Norm of d_upsilon - lambda^2 d_psi; identically zero in exact arithmetic.
double d_relation_residual(const LieAlgebra& alg, const Mat& psi, double lambda, const Vec& x,
                           const Vec& y);

// Max over the grid of |kappa_ups(t) - lambda (1-(1-lambda)t)^3
// kappa_psi(mapped t)|, with both sides evaluated through kappa_direct so the
// check is independent of the closed form. Every grid point must lie in the
// upsilon domain and its image in the psi domain; throws OutOfDomain naming
// the failing side.
double verify_curve_relation(const LieAlgebra& alg, const Mat& psi, double lambda, const Vec& x,
                             const Vec& y, const std::vector<double>& t_grid);

}  // namespace curvlie
