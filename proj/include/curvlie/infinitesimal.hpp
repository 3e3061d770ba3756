#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "curvlie/algebra.hpp"
#include "curvlie/curvature.hpp"
#include "curvlie/linalg.hpp"

namespace curvlie {

// Unit vectors with [x, y] = 0 (residual at most 1e-12).
struct CommutingPair {
  Vec x;
  Vec y;
};

// Seeded, deterministic sampling of the commuting variety.
//  - Two 3-dim factors (so(4)): x = (s1 u, s2 v), y = (r1 u, r2 v) with unit
//    u, v drawn in the factors and unit (s1,s2), (r1,r2). Exhaustive in form,
//    since elements of a so(3) factor commute iff parallel.
//  - dim 3 (so(3)): pairs are parallel.
//  - Otherwise: x is sampled on the sphere and y in the numerical kernel of
//    ad(x) (least-squares threshold 1e-10).
std::vector<CommutingPair> sample_commuting_pairs(const LieAlgebra& alg, int n, uint64_t seed);

// Outcome of the infinitesimal-nonnegativity search. "Passed" is evidence
// over the sampled pairs, not a proof: the quantifier ranges over a
// continuum. Refutation is certified by the recorded witness pair.
struct InfNonnegVerdict {
  bool refuted = false;
  std::optional<Witness> witness;   // value = delta at the pair
  double witness_d_norm = 0.0;
  double min_delta = 0.0;           // lowest delta seen over unit pairs
  double max_d_norm = 0.0;          // largest |d| among pairs with |delta| <= tol
  int budget = 0;
  uint64_t seed = 0;
};

// Samples `budget` commuting pairs, refines the lowest-delta candidates by
// coordinate descent over the commuting-pair parameterization, and refutes
// when some unit pair has delta < -tol, or |delta| <= tol together with
// |d| > sqrt(tol). The square root decouples the cubic (delta) and quartic
// (|d|^2) homogeneity scales on unit input. Throws NotSymmetric.
InfNonnegVerdict check_inf_nonneg(const LieAlgebra& alg, const Mat& psi, double tol, int budget,
                                  uint64_t seed);

enum class RigidityMode { psi, phi };

struct RigidityVerdict {
  bool violated = false;
  std::optional<Witness> witness;  // value = off-p0 residual norm
  double max_residual = 0.0;
};

// Tests the rigidity property of the eigenspace p0 for the smallest
// eigenvalue of m: for commuting pairs with x in p0, the component of
// [x, psi y] (mode psi) resp. [x, phi^-1 y] (mode phi) orthogonal to p0 must
// have norm at most tol. Mode phi additionally requires m positive definite.
RigidityVerdict check_rigidity(const LieAlgebra& alg, const Mat& m, RigidityMode mode, double tol,
                               int budget, uint64_t seed);

}  // namespace curvlie
