#pragma once

#include <utility>
#include <vector>

#include "curvlie/linalg.hpp"

namespace curvlie {

// One structure-constant entry c[i][j][k] of [e_i, e_j] = sum_k c[i][j][k] e_k.
struct StructureEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double c = 0.0;
};

// Inclusive index range [begin, end] marking an ideal of a product algebra.
struct FactorRange {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin + 1; }
};

// A metric Lie algebra given by structure constants and an ad-invariant inner
// product h0. Construction validates antisymmetry, the Jacobi identity,
// ad-invariance and positive definiteness of the metric, and (when factors
// are declared) that factors are ideals orthogonal to each other.
//
// All operations after construction work in an h0-orthonormal basis, so the
// inner product is the plain dot product. When the input metric is not the
// identity, the constructor changes basis via G^{1/2} and keeps the transform
// so callers can convert vectors and endomorphisms between the input basis
// and the working basis. Immutable after construction.
class LieAlgebra {
 public:
  int dim() const { return dim_; }

  // Bracket of working-coordinate vectors.
  Vec bracket(const Vec& x, const Vec& y) const;
  double structure(int i, int j, int k) const { return c_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k]; }

  // Matrix of ad(x) = [x, .] in working coordinates.
  Mat ad(const Vec& x) const;

  bool has_factors() const { return !factors_.empty(); }
  const std::vector<FactorRange>& factors() const { return factors_; }
  bool index_in_factor(int idx, int f) const;

  // Conversions between the user-facing input basis and the working basis.
  // For an identity input metric these are all the identity.
  Vec to_working(const Vec& input_coords) const;
  Vec from_working(const Vec& working_coords) const;
  Mat endo_to_working(const Mat& input_endo) const;
  Mat endo_from_working(const Mat& working_endo) const;
  bool identity_metric() const { return identity_metric_; }
  const Mat& input_metric() const { return input_metric_; }

  friend LieAlgebra build_from_structure_constants(int dim,
                                                   const std::vector<StructureEntry>& entries,
                                                   const Mat& metric,
                                                   const std::vector<FactorRange>& factors);

 private:
  LieAlgebra() = default;

  int dim_ = 0;
  std::vector<double> c_;  // dense dim^3 tensor, working basis
  std::vector<FactorRange> factors_;
  bool identity_metric_ = true;
  Mat input_metric_;
  Mat to_working_;    // G^{1/2}
  Mat from_working_;  // G^{-1/2}
};

// Standard so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2, metric = identity.
LieAlgebra build_so3();

// so(4) = so(3) + so(3), basis order A1,A2,A3,B1,B2,B3 (indices 0..5),
// factors [0,2] and [3,5], cross-factor brackets zero, metric = identity.
LieAlgebra build_so4();

LieAlgebra build_from_structure_constants(int dim, const std::vector<StructureEntry>& entries,
                                          const Mat& metric = Mat(),
                                          const std::vector<FactorRange>& factors = {});

// A subalgebra given by an h0-orthonormal basis (working coordinates).
struct Subalgebra {
  std::vector<Vec> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

// Orthonormalizes the spanning set and verifies closure under the bracket
// (residual tolerance 1e-10 on the orthonormalized basis). Throws
// NotASubalgebra when the span is not bracket-closed.
Subalgebra make_subalgebra(const LieAlgebra& alg, const std::vector<Vec>& spanning);

// Subalgebra spanned by working-basis vectors with the given indices.
Subalgebra span_of_basis_indices(const LieAlgebra& alg, const std::vector<int>& indices);

bool is_abelian(const LieAlgebra& alg, const Subalgebra& sub, double tol = 1e-10);

// Splits z = z_h + z_p with z_h in the subalgebra and z_p orthogonal to it.
std::pair<Vec, Vec> project(const LieAlgebra& alg, const Subalgebra& sub, const Vec& z);

}  // namespace curvlie
