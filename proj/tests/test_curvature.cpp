#include <doctest.h>

#include <cmath>

#include "curvlie/curvature.hpp"
#include "curvlie/errors.hpp"
#include "test_helpers.hpp"

using namespace curvlie;
using namespace curvlie::testing;

TEST_SUITE_BEGIN("curvature");

TEST_CASE("puttmann at the bi-invariant metric") {
  const LieAlgebra so3 = build_so3();
  // alpha = 1/4 |[X,Y]|^2 at phi = I.
  CHECK(std::abs(puttmann_curvature(so3, Mat::identity(3), v3(1, 0, 0), v3(0, 1, 0)) - 0.25) <=
        1e-15);
}

TEST_CASE("puttmann vanishes on degenerate planes") {
  const LieAlgebra so3 = build_so3();
  const Mat phi = diag({1, 2, 3});
  CHECK(std::abs(puttmann_curvature(so3, phi, v3(1, 1, 0), v3(2, 2, 0))) <= 1e-15);
}

TEST_CASE("puttmann on a diagonal metric") {
  const LieAlgebra so3 = build_so3();
  // Four terms by hand for phi = diag(1,2,3) on (e1, e2):
  // 3/2 - 9/4 + 1/12 - 0 = -2/3.
  const double oracle = 1.5 - 2.25 + 1.0 / 12.0;
  const double k = puttmann_curvature(so3, diag({1, 2, 3}), v3(1, 0, 0), v3(0, 1, 0));
  CHECK(std::abs(k - oracle) <= 1e-15);
  CHECK(std::abs(k + 2.0 / 3.0) <= 1e-15);
}

TEST_CASE("puttmann requires a positive definite metric") {
  const LieAlgebra so3 = build_so3();
  CHECK_THROWS_AS(puttmann_curvature(so3, diag({1, -1, 1}), v3(1, 0, 0), v3(0, 1, 0)),
                  NotPositiveDefinite);
}

TEST_CASE("puttmann symmetry, scaling, and shear invariance") {
  const LieAlgebra so3 = build_so3();
  const LieAlgebra so4 = build_so4();
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const LieAlgebra& alg = (i % 2 == 0) ? so3 : so4;
    const Mat phi = random_spd(rng, alg.dim(), 0.4, 2.5);
    const Vec z1 = rng.unit_vector(alg.dim());
    const Vec z2 = rng.unit_vector(alg.dim());
    const double k = puttmann_curvature(alg, phi, z1, z2);
    const double scale = std::max(1.0, std::abs(k));

    REQUIRE(std::abs(puttmann_curvature(alg, phi, z2, z1) - k) <= 1e-12 * scale);

    const double a = rng.uniform(0.2, 2.0), b = rng.uniform(0.2, 2.0);
    REQUIRE(std::abs(puttmann_curvature(alg, phi, scaled(z1, a), scaled(z2, b)) -
                     a * a * b * b * k) <= 1e-10 * scale);

    // Unnormalized sectional curvature depends only on the plane:
    // k(z1, z2 + c z1) = k(z1, z2).
    const double c = rng.uniform(-1.0, 1.0);
    REQUIRE(std::abs(puttmann_curvature(alg, phi, z1, add(z2, scaled(z1, c))) - k) <=
            1e-10 * scale);
  }
}

TEST_CASE("bi-invariant reduction k = (c/4) |[z1,z2]|^2") {
  const LieAlgebra so4 = build_so4();
  Rng rng(32);
  for (int i = 0; i < 1000; ++i) {
    const double c = rng.uniform(0.3, 3.0);
    const Vec z1 = rng.unit_vector(6);
    const Vec z2 = rng.unit_vector(6);
    const double expect = 0.25 * c * dot(so4.bracket(z1, z2), so4.bracket(z1, z2));
    const double k = puttmann_curvature(so4, c * Mat::identity(6), z1, z2);
    REQUIRE(std::abs(k - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("search on the bi-invariant metric finds a flat plane") {
  const LieAlgebra so4 = build_so4();
  const MinSearchResult r = min_curvature_search(so4, Mat::identity(6), 2000, 42);
  CHECK(r.min_value >= -1e-12);
  CHECK(r.min_value <= 1e-8);
  // The minimizer is a near-commuting pair.
  CHECK(norm(so4.bracket(r.witness.x, r.witness.y)) <= 1e-3);
}

TEST_CASE("search certifies negative curvature of diag(1,2,3)") {
  const LieAlgebra so3 = build_so3();
  const MinSearchResult r = min_curvature_search(so3, diag({1, 2, 3}), 2000, 42);
  // The explicit plane (e1, e2) evaluates to -2/3 and bounds the search.
  CHECK(r.min_value <= -2.0 / 3.0 + 1e-9);
  CHECK(std::abs(puttmann_curvature(so3, diag({1, 2, 3}), r.witness.x, r.witness.y) -
                 r.witness.value) <= 1e-9 * std::max(1.0, std::abs(r.witness.value)));
}

TEST_CASE("search respects the 4/3 boundary metric") {
  const LieAlgebra so3 = build_so3();
  const MinSearchResult r = min_curvature_search(so3, diag({1, 1, 4.0 / 3.0}), 2000, 42);
  CHECK(r.min_value >= -1e-9);
}

TEST_CASE("assert_nonneg verdicts") {
  const LieAlgebra so3 = build_so3();
  CHECK_FALSE(assert_nonneg(so3, Mat::identity(3), 1e-9, 1000, 42).refuted);
  CHECK_FALSE(assert_nonneg(so3, diag({2, 2, 2}), 1e-9, 1000, 42).refuted);

  const NonnegVerdict v = assert_nonneg(so3, diag({1, 2, 3}), 1e-9, 1000, 42);
  REQUIRE(v.refuted);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->value <= -1e-6);
}

TEST_CASE("search is deterministic for a fixed seed") {
  const LieAlgebra so3 = build_so3();
  const MinSearchResult a = min_curvature_search(so3, diag({1, 2, 3}), 500, 7);
  const MinSearchResult b = min_curvature_search(so3, diag({1, 2, 3}), 500, 7);
  CHECK(a.min_value == b.min_value);
  CHECK(a.witness.x == b.witness.x);
  CHECK(a.witness.y == b.witness.y);
}

TEST_SUITE_END();
