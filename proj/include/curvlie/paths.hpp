#pragma once

#include "curvlie/algebra.hpp"
#include "curvlie/linalg.hpp"

namespace curvlie {

// Inverse-linear family of metric matrices phi_t = (I - t psi)^-1 together
// with its metric-validity interval (t_min, t_max): the open interval around
// 0 on which I - t psi stays positive definite. t_max = 1/a_max when the
// largest eigenvalue a_max of psi is positive, +inf otherwise; symmetrically
// for t_min.
struct InverseLinearPath {
  Mat psi;
  double t_min = 0.0;
  double t_max = 0.0;
};

// Builds the path for a self-adjoint psi. Throws NotSymmetric.
InverseLinearPath make_path(const Mat& psi);

// The unique inverse-linear path with phi_at(path, 1) = phi: psi = I - phi^-1.
// Its domain always contains [0, 1]. Throws NotPositiveDefinite.
InverseLinearPath path_from_metric(const Mat& phi);

bool in_domain(const InverseLinearPath& path, double t);

// (I - t psi)^-1, computed by direct inversion rather than series summation
// so it is exact on the whole domain. Throws OutOfDomain.
Mat phi_at(const InverseLinearPath& path, double t);

// End of the default evaluation grid: 0.9 * t_max, or 1.0 when the domain is
// unbounded above.
double default_grid_stop(const InverseLinearPath& path);

// The bracket elements attached to a deformation psi and a plane (x, y):
//   a = [psi x, y] + [x, psi y]
//   b = [psi x, psi y]
//   c = [psi x, y] + [psi y, x]
//   d = psi^2 [x,y] - psi a + b
struct BracketQuantities {
  Vec a, b, c, d;
};

BracketQuantities bracket_quantities(const LieAlgebra& alg, const Mat& psi, const Vec& x,
                                     const Vec& y);

// Taylor coefficients of kappa(t) at 0: kappa(t) = alpha + beta t + gamma t^2
// + delta t^3 - 3/4 t^4 |d|^2_{h_t}. Always alpha = 1/4 |[x,y]|^2 >= 0, and
// alpha = beta = gamma = 0 when x and y commute. kappa'''(0) = 6 delta.
struct TaylorCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

TaylorCoefficients taylor_coefficients(const LieAlgebra& alg, const Mat& psi, const Vec& x,
                                       const Vec& y);

// alpha + beta t + gamma t^2 + delta t^3 - 3/4 t^4 <phi_t d, d>, valid on the
// entire path domain. Throws OutOfDomain.
double kappa_closed_form(const LieAlgebra& alg, const InverseLinearPath& path, const Vec& x,
                         const Vec& y, double t);

// The curvature the closed form describes, evaluated from first principles:
// the unnormalized sectional curvature of phi_t^-1 x and phi_t^-1 y with
// respect to the metric with matrix phi_t. Agreement with kappa_closed_form
// across the domain is this module's central property.
double kappa_direct(const LieAlgebra& alg, const InverseLinearPath& path, const Vec& x,
                    const Vec& y, double t);

}  // namespace curvlie
