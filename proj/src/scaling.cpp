#include "curvlie/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "curvlie/errors.hpp"
#include "curvlie/infinitesimal.hpp"
#include "curvlie/numerics.hpp"

namespace curvlie {

Mat scaling_deformation(const LieAlgebra& alg, const Subalgebra& sub) {
  Mat p(alg.dim(), alg.dim());
  for (const auto& b : sub.basis)
    for (int i = 0; i < alg.dim(); ++i)
      for (int j = 0; j < alg.dim(); ++j) p(i, j) += b[i] * b[j];
  return p;
}

double lambda_to_t(double lambda) {
  if (lambda <= 0.0) throw NonPositiveLambda("lambda_to_t: lambda must be positive");
  return 1.0 - 1.0 / lambda;
}

double abelian_kappa(const LieAlgebra& alg, const Subalgebra& sub, const Vec& x, const Vec& y,
                     double t) {
  if (!is_abelian(alg, sub))
    throw SubalgebraNotAbelian("abelian_kappa: subalgebra is not abelian");
  if (!(t < 1.0)) throw OutOfDomain("abelian_kappa: t must be < 1");
  const Vec w = alg.bracket(x, y);
  const auto [wh, wp] = project(alg, sub, w);
  return 0.25 * dot(w, w) - 0.75 * dot(wh, wh) * t / (1.0 - t);
}

std::vector<Vec> derived_subalgebra(const LieAlgebra& alg) {
  std::vector<Vec> brackets;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j)
      brackets.push_back(alg.bracket(basis_vec(alg.dim(), i), basis_vec(alg.dim(), j)));
  return orthonormal_span(brackets, 1e-10);
}

StretchResult max_stretch_check(const LieAlgebra& alg, const Subalgebra& sub, double t) {
  if (!is_abelian(alg, sub))
    throw SubalgebraNotAbelian("max_stretch_check: subalgebra is not abelian");
  if (!(t < 1.0)) throw OutOfDomain("max_stretch_check: t must be < 1");

  const auto derived = derived_subalgebra(alg);
  StretchResult result;
  if (derived.empty()) {
    result.preserves = true;
    result.max_stretch = 0.0;
    return result;
  }

  // phi_t = I + t/(1-t) P_h, so the restriction to [g,g] in an orthonormal
  // basis q is I + t/(1-t) (P q)^T (P q).
  const int k = static_cast<int>(derived.size());
  Mat restricted(k, k);
  for (int a = 0; a < k; ++a) {
    const auto [zh, zp] = project(alg, sub, derived[a]);
    for (int b = 0; b < k; ++b) {
      const auto [wh, wp] = project(alg, sub, derived[b]);
      restricted(a, b) = (a == b ? 1.0 : 0.0) + t / (1.0 - t) * dot(zh, wh);
    }
  }
  const SpectralData s = sym_eigen(restricted);
  result.max_stretch = s.eigenvalues.back();
  if (result.max_stretch <= 4.0 / 3.0 + 1e-12) {
    result.preserves = true;
  } else {
    const Vec coeffs = column(s.eigenvectors, k - 1);
    Vec z = zeros(alg.dim());
    for (int a = 0; a < k; ++a) z = add(z, scaled(derived[a], coeffs[a]));
    result.witness = normalized(z);
  }
  return result;
}

double nonabelian_kappa(const LieAlgebra& alg, const Subalgebra& sub, const Vec& x, const Vec& y,
                        double t) {
  if (!(t < 1.0)) throw OutOfDomain("nonabelian_kappa: t must be < 1");
  const Vec w = alg.bracket(x, y);
  const auto [wh, wp] = project(alg, sub, w);
  const auto [xh, xp] = project(alg, sub, x);
  const auto [yh, yp] = project(alg, sub, y);
  const Vec b = alg.bracket(xh, yh);
  const Vec cross = alg.bracket(xp, yp);
  const auto [crossh, crossp] = project(alg, sub, cross);
  const double b2 = dot(b, b);
  return 0.25 * dot(w, w) - 0.75 * dot(wh, wh) * t + 0.75 * b2 * t * t - 0.25 * b2 * t * t * t -
         0.75 * dot(crossh, crossh) * t * t / (1.0 - t);
}

BracketRatioResult bracket_ratio_sup(const LieAlgebra& alg, const Subalgebra& sub, int budget,
                                     uint64_t seed) {
  if (budget < 1) throw Error("bracket_ratio_sup: budget must be >= 1");
  BracketRatioResult result;

  auto numerator = [&](const Vec& x, const Vec& y) {
    const auto [xh, xp] = project(alg, sub, x);
    const auto [yh, yp] = project(alg, sub, y);
    return norm(alg.bracket(xh, yh));
  };
  auto check_witness = [&](const Vec& x, const Vec& y) {
    if (norm(alg.bracket(x, y)) <= 1e-12 && numerator(x, y) >= 1e-6) {
      result.unbounded = true;
      if (!result.witness) result.witness = std::make_pair(x, y);
      return true;
    }
    return false;
  };

  // Half the budget goes to generic unit pairs for the ratio estimate, half
  // to exact commuting pairs, where any nonzero numerator is already an
  // unboundedness witness.
  Rng rng(seed);
  double best_ratio = 0.0;
  Vec best_x, best_y;
  const int generic = budget - budget / 2;
  for (int i = 0; i < generic; ++i) {
    const Vec x = rng.unit_vector(alg.dim());
    const Vec y = rng.unit_vector(alg.dim());
    if (check_witness(x, y)) return result;
    const double den = norm(alg.bracket(x, y));
    if (den > 1e-12) {
      const double ratio = numerator(x, y) / den;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_x = x;
        best_y = y;
      }
    }
  }
  const auto commuting = sample_commuting_pairs(alg, std::max(1, budget / 2), seed + 1);
  for (const auto& pair : commuting)
    if (check_witness(pair.x, pair.y)) return result;

  // Ascent on the ratio from the best sampled pair. A ratio climbing without
  // bound means the denominator is collapsing towards the commuting variety;
  // the pair is then retested as an exact witness.
  if (!best_x.empty()) {
    Vec x = best_x, y = best_y;
    double step = 0.25;
    double current = best_ratio;
    for (int s = 0; s < 200 && current < 1e8; ++s) {
      for (Vec* v : {&x, &y}) {
        for (size_t i = 0; i < v->size(); ++i) {
          for (double sign : {1.0, -1.0}) {
            Vec saved = *v;
            (*v)[i] += sign * step;
            *v = scaled(*v, 1.0 / norm(*v));
            const double den = norm(alg.bracket(x, y));
            if (den > 1e-14 && numerator(x, y) / den > current) {
              current = numerator(x, y) / den;
            } else {
              *v = saved;
            }
          }
        }
      }
      step *= 0.93;
    }
    if (check_witness(x, y)) return result;
    best_ratio = std::max(best_ratio, current);
  }

  result.bound = best_ratio;
  return result;
}

}  // namespace curvlie
