#include "curvlie/paths.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "curvlie/curvature.hpp"
#include "curvlie/errors.hpp"
#include "curvlie/numerics.hpp"

namespace curvlie {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat resolvent(const Mat& psi, double t) {
  const int n = psi.rows();
  Mat m = Mat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) -= t * psi(i, j);
  return m;
}

}  // namespace

InverseLinearPath make_path(const Mat& psi) {
  const SpectralData s = sym_eigen(psi);
  const double a_min = s.eigenvalues.front();
  const double a_max = s.eigenvalues.back();
  InverseLinearPath path;
  path.psi = psi;
  path.t_max = a_max > 0.0 ? 1.0 / a_max : kInf;
  path.t_min = a_min < 0.0 ? 1.0 / a_min : -kInf;
  return path;
}

InverseLinearPath path_from_metric(const Mat& phi) {
  if (!is_positive_definite(phi, 1e-12))
    throw NotPositiveDefinite("path_from_metric: phi is not positive definite");
  const int n = phi.rows();
  Mat psi = Mat::identity(n) - inverse(phi);
  // Inversion leaves rounding of order 1e-16; symmetrize so downstream
  // eigendecompositions see an exactly symmetric psi.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) psi(i, j) = psi(j, i) = 0.5 * (psi(i, j) + psi(j, i));
  return make_path(psi);
}

bool in_domain(const InverseLinearPath& path, double t) {
  return t > path.t_min && t < path.t_max;
}

Mat phi_at(const InverseLinearPath& path, double t) {
  if (!in_domain(path, t))
    throw OutOfDomain("phi_at: t = " + std::to_string(t) + " outside (" +
                      std::to_string(path.t_min) + ", " + std::to_string(path.t_max) + ")");
  return inverse(resolvent(path.psi, t));
}

double default_grid_stop(const InverseLinearPath& path) {
  return std::isfinite(path.t_max) ? 0.9 * path.t_max : 1.0;
}

BracketQuantities bracket_quantities(const LieAlgebra& alg, const Mat& psi, const Vec& x,
                                     const Vec& y) {
  const Vec px = mat_vec(psi, x);
  const Vec py = mat_vec(psi, y);
  const Vec w = alg.bracket(x, y);
  BracketQuantities q;
  q.a = add(alg.bracket(px, y), alg.bracket(x, py));
  q.b = alg.bracket(px, py);
  q.c = add(alg.bracket(px, y), alg.bracket(py, x));
  q.d = add(sub(mat_vec(psi, mat_vec(psi, w)), mat_vec(psi, q.a)), q.b);
  return q;
}

TaylorCoefficients taylor_coefficients(const LieAlgebra& alg, const Mat& psi, const Vec& x,
                                       const Vec& y) {
  const Vec px = mat_vec(psi, x);
  const Vec py = mat_vec(psi, y);
  const Vec w = alg.bracket(x, y);
  const Vec pw = mat_vec(psi, w);
  const Vec ppw = mat_vec(psi, pw);
  const Vec pppw = mat_vec(psi, ppw);
  const BracketQuantities q = bracket_quantities(alg, psi, x, y);
  const Vec bxx = alg.bracket(px, x);
  const Vec byy = alg.bracket(py, y);

  TaylorCoefficients tc;
  tc.alpha = 0.25 * dot(w, w);
  tc.beta = -0.75 * dot(pw, w);
  tc.gamma = -0.75 * dot(pw, pw) + 1.5 * dot(pw, q.a) - 0.5 * dot(w, q.b) - 0.25 * dot(q.a, q.a) +
             0.25 * dot(q.c, q.c) - dot(bxx, byy);
  tc.delta = -0.75 * dot(pppw, w) + 1.5 * dot(ppw, q.a) - 1.5 * dot(pw, q.b) -
             0.75 * dot(mat_vec(psi, q.a), q.a) - 0.25 * dot(mat_vec(psi, q.c), q.c) +
             dot(mat_vec(psi, bxx), byy) + dot(q.a, q.b);
  return tc;
}

double kappa_closed_form(const LieAlgebra& alg, const InverseLinearPath& path, const Vec& x,
                         const Vec& y, double t) {
  if (!in_domain(path, t))
    throw OutOfDomain("kappa_closed_form: t = " + std::to_string(t) + " outside the path domain");
  const TaylorCoefficients tc = taylor_coefficients(alg, path.psi, x, y);
  const BracketQuantities q = bracket_quantities(alg, path.psi, x, y);
  // |d|^2_{h_t} = <phi_t d, d>, via a solve with I - t psi.
  const double d_ht = dot(solve(resolvent(path.psi, t), q.d), q.d);
  return tc.alpha + t * (tc.beta + t * (tc.gamma + t * tc.delta)) - 0.75 * t * t * t * t * d_ht;
}

double kappa_direct(const LieAlgebra& alg, const InverseLinearPath& path, const Vec& x,
                    const Vec& y, double t) {
  if (!in_domain(path, t))
    throw OutOfDomain("kappa_direct: t = " + std::to_string(t) + " outside the path domain");
  const Mat phi_inv = resolvent(path.psi, t);  // phi_t^-1 = I - t psi, exact
  const Mat phi = inverse(phi_inv);
  return puttmann_curvature_with_inverse(alg, phi, phi_inv, mat_vec(phi_inv, x),
                                         mat_vec(phi_inv, y));
}

}  // namespace curvlie
