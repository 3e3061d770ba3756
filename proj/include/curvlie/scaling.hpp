#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "curvlie/algebra.hpp"
#include "curvlie/linalg.hpp"

namespace curvlie {

// Orthogonal projection onto the subalgebra. The inverse-linear path of this
// deformation scales the subalgebra by 1/(1-t), so a scaling factor lambda
// corresponds to t = 1 - 1/lambda.
Mat scaling_deformation(const LieAlgebra& alg, const Subalgebra& sub);

double lambda_to_t(double lambda);

// Curvature curve of the projection deformation when the subalgebra is
// abelian: 1/4 |[x,y]|^2 - 3/4 |[x,y]^h|^2 * t/(1-t), for -inf < t < 1.
// Throws SubalgebraNotAbelian / OutOfDomain.
double abelian_kappa(const LieAlgebra& alg, const Subalgebra& sub, const Vec& x, const Vec& y,
                     double t);

struct StretchResult {
  bool preserves = false;
  std::optional<Vec> witness;  // a unit direction in [g,g] stretched past 4/3
  double max_stretch = 0.0;    // max |z|^2_{h_t} over unit z in [g,g]
};

// Enlarging an abelian subalgebra keeps curvature nonnegative exactly when
// no direction of the derived subalgebra [g,g] is stretched by more than
// 4/3. Computed as the top eigenvalue of phi_t restricted to [g,g].
StretchResult max_stretch_check(const LieAlgebra& alg, const Subalgebra& sub, double t);

// Curvature curve of the projection deformation for an arbitrary subalgebra:
// 1/4 |[x,y]|^2 - 3/4 |[x,y]^h|^2 t + 3/4 |b|^2 t^2 - 1/4 |b|^2 t^3
// - 3/4 |[x^p,y^p]^h|^2 t^2/(1-t), with b = [x^h, y^h].
double nonabelian_kappa(const LieAlgebra& alg, const Subalgebra& sub, const Vec& x, const Vec& y,
                        double t);

struct BracketRatioResult {
  bool unbounded = false;
  double bound = 0.0;  // largest observed |[x^h,y^h]| / |[x,y]| (lower estimate)
  std::optional<std::pair<Vec, Vec>> witness;  // commuting pair with [x^h,y^h] != 0
};

// Estimates sup |[x^h,y^h]| / |[x,y]| over unit pairs by seeded sampling
// plus ascent. A pair with |[x,y]| <= 1e-12 and |[x^h,y^h]| >= 1e-6 is
// returned as an unboundedness witness.
BracketRatioResult bracket_ratio_sup(const LieAlgebra& alg, const Subalgebra& sub, int budget,
                                     uint64_t seed);

// Orthonormal basis of the derived subalgebra [g,g] (span of all basis
// brackets, rank threshold 1e-10).
std::vector<Vec> derived_subalgebra(const LieAlgebra& alg);

}  // namespace curvlie
