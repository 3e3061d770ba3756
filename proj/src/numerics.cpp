#include "curvlie/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "curvlie/errors.hpp"

namespace curvlie {

namespace {

double off_diagonal_norm(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

}  // namespace

SpectralData sym_eigen(const Mat& m) {
  if (!is_symmetric(m, 1e-12))
    throw NotSymmetric("sym_eigen: matrix is not symmetric (residual " +
                       std::to_string(symmetry_residual(m)) + ")");
  const int n = m.rows();
  Mat a = m;
  Mat v = Mat::identity(n);
  const double target = 1e-14 * std::max(frobenius_norm(m), 1e-300);

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  SpectralData out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    // Sign convention: the largest-magnitude component is positive, so the
    // decomposition is reproducible byte for byte.
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v(i, order[j])) > std::abs(v(imax, order[j]))) imax = i;
    const double sgn = v(imax, order[j]) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = sgn * v(i, order[j]);
  }
  out.operator_norm = 0.0;
  for (double ev : out.eigenvalues) out.operator_norm = std::max(out.operator_norm, std::abs(ev));
  return out;
}

bool is_positive_definite(const Mat& m, double tol) {
  const SpectralData s = sym_eigen(m);
  return s.eigenvalues.front() > tol;
}

std::vector<std::pair<int, int>> eigenvalue_groups(const SpectralData& s, double rel_gap) {
  const double scale = std::max(1.0, s.operator_norm);
  std::vector<std::pair<int, int>> groups;
  const int n = static_cast<int>(s.eigenvalues.size());
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || s.eigenvalues[i] - s.eigenvalues[i - 1] > rel_gap * scale) {
      groups.emplace_back(begin, i);
      begin = i;
    }
  }
  return groups;
}

Mat eigenspace(const SpectralData& s, std::pair<int, int> group) {
  const int n = s.eigenvectors.rows();
  Mat q(n, group.second - group.first);
  for (int j = group.first; j < group.second; ++j)
    for (int i = 0; i < n; ++i) q(i, j - group.first) = s.eigenvectors(i, j);
  return q;
}

namespace {

constexpr std::array<double, 3> kFdSteps = {1e-2, 5e-3, 2.5e-3};

// Central difference of the anchored values g(s) = f(t0+s) - f(t0). Anchoring
// makes constants exact and costs nothing otherwise.
double central_difference(int order, double h, double g1p, double g1m, double g2p, double g2m) {
  switch (order) {
    case 1:
      return (g1p - g1m) / (2.0 * h);
    case 2:
      return (g1p + g1m) / (h * h);
    case 3:
      return (g2p - 2.0 * g1p + 2.0 * g1m - g2m) / (2.0 * h * h * h);
    case 4:
      return (g2p - 4.0 * g1p - 4.0 * g1m + g2m) / (h * h * h * h);
    default:
      throw Error("fd_derivatives: unsupported order");
  }
}

}  // namespace

std::vector<DerivativeEstimate> fd_derivatives(const std::function<double(double)>& f, double t0,
                                               int max_order, double dom_lo, double dom_hi) {
  if (max_order < 1 || max_order > 4) throw Error("fd_derivatives: max_order must be in 1..4");
  const double reach = 2.0 * kFdSteps[0];
  if (!(t0 - reach > dom_lo && t0 + reach < dom_hi))
    throw DomainTooSmall("fd_derivatives: stencil of half-width " + std::to_string(reach) +
                         " leaves the domain around t0 = " + std::to_string(t0));

  const double f0 = f(t0);
  std::array<double, 3> g1p, g1m, g2p, g2m;
  for (size_t k = 0; k < kFdSteps.size(); ++k) {
    const double h = kFdSteps[k];
    g1p[k] = f(t0 + h) - f0;
    g1m[k] = f(t0 - h) - f0;
    g2p[k] = f(t0 + 2.0 * h) - f0;
    g2m[k] = f(t0 - 2.0 * h) - f0;
  }

  double f_scale = std::abs(f0);
  for (size_t k = 0; k < kFdSteps.size(); ++k)
    f_scale = std::max({f_scale, std::abs(f0 + g2p[k]), std::abs(f0 + g2m[k])});

  std::vector<DerivativeEstimate> out;
  for (int order = 1; order <= max_order; ++order) {
    std::array<double, 3> d, fl;
    // l1 weight of the stencil divided by its denominator; multiplied by the
    // evaluation noise it bounds the rounding error of each raw difference.
    static constexpr double kWeight[] = {1.0, 2.0, 3.0, 10.0};
    for (size_t k = 0; k < kFdSteps.size(); ++k) {
      const double h = kFdSteps[k];
      d[k] = central_difference(order, h, g1p[k], g1m[k], g2p[k], g2m[k]);
      fl[k] = 4.4e-16 * f_scale * kWeight[order - 1] / std::pow(h, order);
    }

    // Richardson/Neville table over the halved steps; the error expansion is
    // in powers of h^2, so the level weights are 4/3 and 16/15. Deeper
    // entries cut truncation error but inherit amplified rounding noise
    // (severely so for the third and fourth orders at the smallest step),
    // so the returned value is the entry with the smallest error estimate --
    // cross-validation against neighbors combined with a rounding floor --
    // rather than always the deepest extrapolant.
    const double r1a = d[1] + (d[1] - d[0]) / 3.0;
    const double r1b = d[2] + (d[2] - d[1]) / 3.0;
    const double r2 = r1b + (r1b - r1a) / 15.0;
    const double fl1a = (4.0 * fl[1] + fl[0]) / 3.0;
    const double fl1b = (4.0 * fl[2] + fl[1]) / 3.0;
    const double fl2 = (16.0 * fl1b + fl1a) / 15.0;

    DerivativeEstimate best{order, d[0], std::max(std::abs(d[0] - r1a), fl[0])};
    auto offer = [&best](double value, double error) {
      if (error < best.error) {
        best.value = value;
        best.error = error;
      }
    };
    offer(d[1], std::max(std::abs(d[1] - r1a), fl[1]));
    offer(d[2], std::max(std::abs(d[2] - r1b), fl[2]));
    offer(r1a, std::max({std::abs(r1a - d[0]), std::abs(r1a - d[1]), fl1a}));
    offer(r1b, std::max({std::abs(r1b - d[1]), std::abs(r1b - d[2]), fl1b}));
    offer(r2, std::max({std::abs(r2 - r1b), std::abs(r2 - r1a), fl2}));
    out.push_back(best);
  }
  return out;
}

}  // namespace curvlie
