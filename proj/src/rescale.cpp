#include "curvlie/rescale.hpp"

#include <cmath>
#include <string>

#include "curvlie/errors.hpp"

namespace curvlie {

Mat rescaled_deformation(const Mat& psi, double lambda) {
  if (!(lambda > 0.0)) throw NonPositiveLambda("rescaled_deformation: lambda must be positive");
  const int n = psi.rows();
  Mat u = lambda * psi;
  for (int i = 0; i < n; ++i) u(i, i) += 1.0 - lambda;
  return u;
}

double rescale_time_map(double t, double lambda) {
  return lambda * t / (1.0 - (1.0 - lambda) * t);
}

double kappa_rescaled(const LieAlgebra& alg, const InverseLinearPath& upsilon_path, double lambda,
                      const Vec& x, const Vec& y, double t) {
  // Every inner product in the curvature picks up one factor of lambda from
  // the rescaled base metric; the matrices are unchanged.
  return lambda * kappa_direct(alg, upsilon_path, x, y, t);
}

TaylorCoefficients rescaled_taylor_coefficients(const LieAlgebra& alg, const Mat& psi,
                                                double lambda, const Vec& x, const Vec& y) {
  const Mat upsilon = rescaled_deformation(psi, lambda);
  TaylorCoefficients tc = taylor_coefficients(alg, upsilon, x, y);
  tc.alpha *= lambda;
  tc.beta *= lambda;
  tc.gamma *= lambda;
  tc.delta *= lambda;
  return tc;
}

CoefficientRelationReport coefficient_relations(const LieAlgebra& alg, const Mat& psi,
                                                double lambda, const Vec& x, const Vec& y) {
  CoefficientRelationReport report;
  report.psi_coeffs = taylor_coefficients(alg, psi, x, y);
  report.upsilon_coeffs = rescaled_taylor_coefficients(alg, psi, lambda, x, y);

  const double w = 1.0 - lambda;
  const auto& p = report.psi_coeffs;
  const auto& u = report.upsilon_coeffs;
  report.residuals[0] = u.alpha - lambda * p.alpha;
  report.residuals[1] = u.beta - (-3.0 * w * lambda * p.alpha + lambda * lambda * p.beta);
  report.residuals[2] =
      u.gamma - (3.0 * w * w * lambda * p.alpha - 2.0 * w * lambda * lambda * p.beta +
                 lambda * lambda * lambda * p.gamma);
  report.residuals[3] =
      u.delta - (-w * w * w * lambda * p.alpha + w * w * lambda * lambda * p.beta -
                 w * lambda * lambda * lambda * p.gamma +
                 lambda * lambda * lambda * lambda * p.delta);
  return report;
}

double d_relation_residual(const LieAlgebra& alg, const Mat& psi, double lambda, const Vec& x,
                           const Vec& y) {
  const Mat upsilon = rescaled_deformation(psi, lambda);
  const Vec d_psi = bracket_quantities(alg, psi, x, y).d;
  const Vec d_ups = bracket_quantities(alg, upsilon, x, y).d;
  return norm(sub(d_ups, scaled(d_psi, lambda * lambda)));
}

double verify_curve_relation(const LieAlgebra& alg, const Mat& psi, double lambda, const Vec& x,
                             const Vec& y, const std::vector<double>& t_grid) {
  const InverseLinearPath psi_path = make_path(psi);
  const InverseLinearPath ups_path = make_path(rescaled_deformation(psi, lambda));

  // The reparameterization must fix the endpoints of [0, 1].
  if (std::abs(rescale_time_map(0.0, lambda)) > 1e-15 ||
      std::abs(rescale_time_map(1.0, lambda) - 1.0) > 1e-12)
    throw Error("verify_curve_relation: time map fails to fix the unit interval endpoints");

  for (double t : t_grid) {
    if (!in_domain(ups_path, t))
      throw OutOfDomain("verify_curve_relation: t = " + std::to_string(t) +
                        " outside the upsilon path domain");
    if (!in_domain(psi_path, rescale_time_map(t, lambda)))
      throw OutOfDomain("verify_curve_relation: mapped t = " +
                        std::to_string(rescale_time_map(t, lambda)) +
                        " outside the psi path domain");
  }

  double max_residual = 0.0;
  for (double t : t_grid) {
    const double lhs = kappa_rescaled(alg, ups_path, lambda, x, y, t);
    const double factor = 1.0 - (1.0 - lambda) * t;
    const double rhs = lambda * factor * factor * factor *
                       kappa_direct(alg, psi_path, x, y, rescale_time_map(t, lambda));
    max_residual = std::max(max_residual, std::abs(lhs - rhs));
  }
  return max_residual;
}

}  // namespace curvlie
