#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "curvlie/linalg.hpp"

namespace curvlie {

// Eigendecomposition of a symmetric matrix. Eigenvalues ascending, column i
// of `eigenvectors` pairs with eigenvalues[i].
struct SpectralData {
  Vec eigenvalues;
  Mat eigenvectors;
  double operator_norm = 0.0;
};

// Cyclic Jacobi rotations; converges when the off-diagonal Frobenius norm
// drops below 1e-14 * ||M||_F, capped at 100 sweeps. Throws NotSymmetric.
SpectralData sym_eigen(const Mat& m);

bool is_positive_definite(const Mat& m, double tol);

// Groups numerically equal eigenvalues: consecutive eigenvalues belong to one
// group when their gap is at most rel_gap * max(1, spectral radius). Returns
// [begin, end) index ranges into SpectralData::eigenvalues.
std::vector<std::pair<int, int>> eigenvalue_groups(const SpectralData& s, double rel_gap = 1e-8);

// Orthonormal basis of the eigenspace for group g (columns).
Mat eigenspace(const SpectralData& s, std::pair<int, int> group);

struct DerivativeEstimate {
  int order = 0;        // 1..4
  double value = 0.0;
  double error = 0.0;   // difference of the last two Richardson extrapolants
};

// Central differences with two levels of Richardson extrapolation over the
// fixed steps {1e-2, 5e-3, 2.5e-3}. The widest stencil reaches t0 +/- 2e-2;
// if that leaves (dom_lo, dom_hi), throws DomainTooSmall.
std::vector<DerivativeEstimate> fd_derivatives(
    const std::function<double(double)>& f, double t0, int max_order = 4,
    double dom_lo = -std::numeric_limits<double>::infinity(),
    double dom_hi = std::numeric_limits<double>::infinity());

}  // namespace curvlie
