#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "curvlie/algebra.hpp"
#include "curvlie/linalg.hpp"

namespace curvlie {

// so(4)-specific classification checks. The algebra must carry two 3-dim
// factors whose stored bases behave like so(3) (cyclic bracket relations);
// build_so4() produces exactly that. A vector is "singular" when it lies
// entirely in one factor.

// The torus-action metric pattern: in an adapted basis {A1,A2,A3,B1,B2,B3}
// (quaternion-compatible per factor), the matrix is diag(c, c) on (A1,A2),
// a symmetric 2x2 block tau on the plane (A3,B1), and diag(d, d) on (B2,B3).
// A metric of this shape is nonnegatively curved exactly when tau is bounded
// by (4/3) diag(c, d) as a quadratic form.
struct TorusForm {
  double c = 0.0;
  double d = 0.0;
  Mat tau;    // 2x2 symmetric block on (A3, B1)
  Mat basis;  // columns A1,A2,A3,B1,B2,B3, orthonormal, working coords
};

struct TorusFormResult {
  TorusForm form;
  bool bound_satisfied = false;  // (4/3) diag(c,d) - tau positive semidefinite
};

// Unit eigenvector of phi lying in a factor up to tol (cross-factor
// component at most tol). Whole eigenspaces are intersected with the
// factors, so a factor-aligned member of a degenerate eigenspace is found
// even when the raw eigenvector columns are mixed. Throws FactorsMissing.
std::optional<Vec> singular_eigenvector(const LieAlgebra& alg, const Mat& phi, double tol);

// The two 3x3 diagonal blocks iff both off-diagonal factor blocks have all
// entries of magnitude at most tol.
std::optional<std::pair<Mat, Mat>> detect_product(const LieAlgebra& alg, const Mat& phi,
                                                  double tol);

// Searches for an adapted basis in which phi matches the torus pattern to
// tol. Works for any symmetric input (deformations as well as metrics); for
// a metric phi the returned c, d and tau block are automatically positive.
std::optional<TorusFormResult> detect_torus_form(const LieAlgebra& alg, const Mat& phi,
                                                 double tol);

// phi of torus shape assembled in the standard so(4) basis (adapted basis =
// standard basis).
Mat assemble_torus_form(const LieAlgebra& alg, double c, double d, const Mat& tau);

// The curvature identity behind the torus-form bound: returns
//   k   = k_h(alpha A1 + beta B2, A2 + B3)
//   rhs = 3/4 (|alpha A3 + beta B1|^2_htilde - |alpha A3 + beta B1|^2_h)
// with htilde = (4/3) diag(c, d) on the coupled plane. The two agree for
// every torus form; a bound violation makes them negative somewhere.
std::pair<double, double> torus_curvature_identity(const LieAlgebra& alg, const TorusForm& form,
                                                   double alpha, double beta);

// Searches for a phi-invariant 2-dimensional abelian subalgebra. Every such
// subalgebra of so(4) is spanned by one direction per factor, so candidates
// are pairs (u, v) on the two factor spheres: eigenvector combinations of
// the diagonal blocks first, then seeded random starts polished by
// coordinate descent. Returns a plane whose invariance residual is at most
// tol, or nullopt when the search fails (which does not prove nonexistence;
// nonnegatively curved metrics always have one).
std::optional<Subalgebra> invariant_abelian_plane(const LieAlgebra& alg, const Mat& phi,
                                                  double tol, int budget, uint64_t seed);

// Block normal form of phi relative to an invariant split abelian plane: in
// the adapted basis order {A1,B1,A2,B2,A3,B3} (plane directions in the A1,B1
// slots), phi consists of the decoupled 2x2 plane block [[a1,a3],[a3,a2]],
// blocks [[b1,b3],[b3,b2]] on (A2,B2) and [[c1,c3],[c3,c2]] on (A3,B3), and
// couplings lambda_c on (A2,A3) and mu_c on (B2,B3); the entries (A2,B3) and
// (B2,A3) vanish. Throws PlaneNotSplit / PlaneNotInvariant.
struct BlockForm {
  Mat basis;   // columns A1,B1,A2,B2,A3,B3, working coords
  Mat matrix;  // 6x6 representation of phi in that basis
  double a1 = 0, a2 = 0, a3 = 0;
  double b1 = 0, b2 = 0, b3 = 0;
  double c1 = 0, c2 = 0, c3 = 0;
  double lambda_c = 0, mu_c = 0;
};

BlockForm block_form_basis(const LieAlgebra& alg, const Mat& phi, const Subalgebra& plane);

}  // namespace curvlie
