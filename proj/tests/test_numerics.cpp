#include <doctest.h>

#include <cmath>

#include "curvlie/errors.hpp"
#include "curvlie/numerics.hpp"
#include "test_helpers.hpp"

using namespace curvlie;
using namespace curvlie::testing;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("sym_eigen sorts eigenvalues ascending") {
  const SpectralData s = sym_eigen(diag({3, 1, 2}));
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.operator_norm == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("sym_eigen off-diagonal 2x2") {
  Mat m(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  const SpectralData s = sym_eigen(m);
  CHECK(std::abs(s.eigenvalues[0] + 1.0) <= 1e-14);
  CHECK(std::abs(s.eigenvalues[1] - 1.0) <= 1e-14);
  CHECK(std::abs(s.operator_norm - 1.0) <= 1e-14);
}

TEST_CASE("sym_eigen correlated 2x2") {
  // Characteristic polynomial by hand: (1-l)^2 - 1/4 = 0 -> l = 1/2, 3/2.
  Mat m(2, 2);
  m(0, 0) = m(1, 1) = 1.0;
  m(0, 1) = m(1, 0) = 0.5;
  const SpectralData s = sym_eigen(m);
  CHECK(std::abs(s.eigenvalues[0] - 0.5) <= 1e-14);
  CHECK(std::abs(s.eigenvalues[1] - 1.5) <= 1e-14);
}

TEST_CASE("sym_eigen rejects non-symmetric input") {
  Mat m(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(sym_eigen(m), NotSymmetric);
}

TEST_CASE("sym_eigen reconstruction on seeded random matrices") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + trial % 5;
    const Mat m = rng.symmetric_matrix(dim, 1.0 + 0.5 * (trial % 7));
    const SpectralData s = sym_eigen(m);
    for (size_t i = 1; i < s.eigenvalues.size(); ++i)
      REQUIRE(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
    Mat lam(dim, dim);
    for (int i = 0; i < dim; ++i) lam(i, i) = s.eigenvalues[i];
    const Mat rec = s.eigenvectors * lam * transpose(s.eigenvectors);
    REQUIRE(frobenius_norm(rec - m) <= 1e-10 * std::max(1.0, frobenius_norm(m)));
    const Mat gram = transpose(s.eigenvectors) * s.eigenvectors;
    REQUIRE(max_abs_diff(gram, Mat::identity(dim)) <= 1e-10);
  }
}

TEST_CASE("sym_eigen is deterministic") {
  Rng rng(99);
  const Mat m = rng.symmetric_matrix(5);
  const SpectralData a = sym_eigen(m);
  const SpectralData b = sym_eigen(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(max_abs_diff(a.eigenvectors, b.eigenvectors) == 0.0);
}

TEST_CASE("is_positive_definite") {
  CHECK(is_positive_definite(Mat::identity(3), 1e-12));
  CHECK_FALSE(is_positive_definite(diag({1, 0}), 1e-12));
  // det((4/3)I - [[1,.5],[.5,1]]) = 1/9 - 1/4 < 0, so one eigenvalue is negative.
  Mat m(2, 2);
  m(0, 0) = m(1, 1) = 4.0 / 3.0 - 1.0;
  m(0, 1) = m(1, 0) = -0.5;
  CHECK_FALSE(is_positive_definite(m, 1e-12));
}

TEST_CASE("eigenvalue grouping") {
  const SpectralData s = sym_eigen(diag({1.0, 1.0 + 1e-12, 2.0}));
  const auto groups = eigenvalue_groups(s);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::pair<int, int>{0, 2});
  CHECK(groups[1] == std::pair<int, int>{2, 3});
  CHECK(eigenspace(s, groups[0]).cols() == 2);
}

TEST_CASE("fd_derivatives on t^3") {
  const auto d = fd_derivatives([](double t) { return t * t * t; }, 0.0);
  REQUIRE(d.size() == 4);
  CHECK(std::abs(d[2].value - 6.0) <= 1e-6);
  CHECK(std::abs(d[0].value) <= 1e-9);
}

TEST_CASE("fd_derivatives on a constant") {
  const auto d = fd_derivatives([](double) { return 4.2; }, 0.0);
  for (const auto& e : d) CHECK(std::abs(e.value) <= 1e-9);
}

TEST_CASE("fd_derivatives on the geometric series") {
  // 1/(1-t) has n-th derivative n! at 0.
  const auto d = fd_derivatives([](double t) { return 1.0 / (1.0 - t); }, 0.0);
  const double expect[] = {1.0, 2.0, 6.0, 24.0};
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(d[k].value - expect[k]) <= 1e-5 * expect[k]);
}

TEST_CASE("fd_derivatives recovers quartic polynomial coefficients") {
  // Taylor coefficients at t0 come back as derivative/k!.
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    double c[5];
    for (double& x : c) x = rng.uniform(-2.0, 2.0);
    const double t0 = rng.uniform(-0.3, 0.3);
    auto p = [&](double t) {
      return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4])));
    };
    const double expect[] = {
        c[1] + 2 * c[2] * t0 + 3 * c[3] * t0 * t0 + 4 * c[4] * t0 * t0 * t0,
        (2 * c[2] + 6 * c[3] * t0 + 12 * c[4] * t0 * t0) / 2.0,
        (6 * c[3] + 24 * c[4] * t0) / 6.0,
        c[4],
    };
    static const double kFact[] = {1, 2, 6, 24};
    const auto d = fd_derivatives(p, t0);
    for (int k = 0; k < 4; ++k)
      REQUIRE(std::abs(d[k].value / kFact[k] - expect[k]) <=
              1e-7 * std::max(1.0, std::abs(expect[k])));
  }
}

TEST_CASE("fd_derivatives needs room around t0") {
  CHECK_THROWS_AS(fd_derivatives([](double t) { return t; }, 0.0, 4, -0.01, 0.01),
                  DomainTooSmall);
  CHECK_NOTHROW(fd_derivatives([](double t) { return t; }, 0.0, 4, -0.05, 0.05));
}

TEST_SUITE_END();
