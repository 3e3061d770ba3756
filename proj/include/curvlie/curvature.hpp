#pragma once

#include <cstdint>
#include <optional>

#include "curvlie/algebra.hpp"
#include "curvlie/linalg.hpp"

namespace curvlie {

// A concrete plane (and optional path parameter) certifying a curvature
// value, typically a negativity claim. Vectors are working coordinates.
struct Witness {
  Vec x;
  Vec y;
  std::optional<double> t;
  double value = 0.0;
};

// Unnormalized sectional curvature k_h(z1, z2) of the left-invariant metric
// h(.,.) = h0(phi ., .):
//
//   k = 1/2 <[phi z1,z2] + [z1,phi z2], [z1,z2]>          - 3/4 |[z1,z2]|_h^2
//     + 1/4 <[z1,phi z2] + [z2,phi z1], phi^-1 ([z1,phi z2] + [z2,phi z1])>
//     -     <[z1,phi z1], phi^-1 [z2,phi z2]>
//
// Symmetric in (z1, z2) and quadratic in each argument. Throws
// NotPositiveDefinite when phi is not a metric.
double puttmann_curvature(const LieAlgebra& alg, const Mat& phi, const Vec& z1, const Vec& z2);

// Same value with a caller-supplied inverse, for hot loops that already know
// phi^-1 exactly. No positive-definiteness check.
double puttmann_curvature_with_inverse(const LieAlgebra& alg, const Mat& phi, const Mat& phi_inv,
                                       const Vec& z1, const Vec& z2);

struct MinSearchResult {
  double min_value = 0.0;
  Witness witness;
};

// Seeded random search for the lowest curvature over unit-norm planes:
// `budget` uniform samples on the product of unit spheres, then coordinate
// descent with shrinking steps on the best candidates. Deterministic given
// the seed. Quadratic scaling of k makes the unit-norm restriction lossless.
MinSearchResult min_curvature_search(const LieAlgebra& alg, const Mat& phi, int budget,
                                     uint64_t seed);

struct NonnegVerdict {
  bool refuted = false;
  std::optional<Witness> witness;  // present iff refuted
  double min_value = 0.0;
};

// Refuted iff the search finds k < -tol. "No witness found" is evidence of
// nonnegative curvature, never a proof.
NonnegVerdict assert_nonneg(const LieAlgebra& alg, const Mat& phi, double tol, int budget,
                            uint64_t seed);

}  // namespace curvlie
