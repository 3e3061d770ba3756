#include "curvlie/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "curvlie/errors.hpp"
#include "curvlie/numerics.hpp"

namespace curvlie {

double puttmann_curvature_with_inverse(const LieAlgebra& alg, const Mat& phi, const Mat& phi_inv,
                                       const Vec& z1, const Vec& z2) {
  const Vec pz1 = mat_vec(phi, z1);
  const Vec pz2 = mat_vec(phi, z2);
  const Vec b12 = alg.bracket(z1, z2);

  const Vec t1v = add(alg.bracket(pz1, z2), alg.bracket(z1, pz2));
  const double term1 = 0.5 * dot(t1v, b12);

  const double term2 = 0.75 * dot(mat_vec(phi, b12), b12);

  const Vec t3v = add(alg.bracket(z1, pz2), alg.bracket(z2, pz1));
  const double term3 = 0.25 * dot(t3v, mat_vec(phi_inv, t3v));

  const Vec b11 = alg.bracket(z1, pz1);
  const Vec b22 = alg.bracket(z2, pz2);
  const double term4 = dot(b11, mat_vec(phi_inv, b22));

  return term1 - term2 + term3 - term4;
}

double puttmann_curvature(const LieAlgebra& alg, const Mat& phi, const Vec& z1, const Vec& z2) {
  if (!is_positive_definite(phi, 1e-12))
    throw NotPositiveDefinite("puttmann_curvature: phi is not positive definite");
  return puttmann_curvature_with_inverse(alg, phi, inverse(phi), z1, z2);
}

namespace {

// Coordinate descent on a list of unit vectors: perturb one coordinate at a
// time, renormalize, keep improvements; the step shrinks geometrically.
template <typename F>
double descend_unit_blocks(std::vector<Vec*> blocks, F&& objective, int steps, double step0,
                           double shrink) {
  double best = objective();
  double step = step0;
  for (int s = 0; s < steps; ++s) {
    for (Vec* v : blocks) {
      for (size_t i = 0; i < v->size(); ++i) {
        for (double sign : {1.0, -1.0}) {
          Vec saved = *v;
          (*v)[i] += sign * step;
          const double n = norm(*v);
          if (n < 1e-12) {
            *v = saved;
            continue;
          }
          *v = scaled(*v, 1.0 / n);
          const double val = objective();
          if (val < best) {
            best = val;
          } else {
            *v = saved;
          }
        }
      }
    }
    step *= shrink;
  }
  return best;
}

}  // namespace

MinSearchResult min_curvature_search(const LieAlgebra& alg, const Mat& phi, int budget,
                                     uint64_t seed) {
  if (budget < 1) throw Error("min_curvature_search: budget must be >= 1");
  if (!is_positive_definite(phi, 1e-12))
    throw NotPositiveDefinite("min_curvature_search: phi is not positive definite");
  const Mat phi_inv = inverse(phi);
  const int n = alg.dim();
  Rng rng(seed);

  struct Candidate {
    double value;
    Vec x, y;
  };
  std::vector<Candidate> top;  // at most 5, sorted ascending by value
  auto offer = [&top](double value, const Vec& x, const Vec& y) {
    if (top.size() < 5 || value < top.back().value) {
      top.push_back({value, x, y});
      std::sort(top.begin(), top.end(),
                [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
      if (top.size() > 5) top.pop_back();
    }
  };

  for (int s = 0; s < budget; ++s) {
    Vec x = rng.unit_vector(n);
    Vec y = rng.unit_vector(n);
    offer(puttmann_curvature_with_inverse(alg, phi, phi_inv, x, y), x, y);
  }

  MinSearchResult result;
  bool first = true;
  for (auto& cand : top) {
    Vec x = cand.x, y = cand.y;
    const double polished = descend_unit_blocks(
        {&x, &y},
        [&] { return puttmann_curvature_with_inverse(alg, phi, phi_inv, x, y); }, 200, 0.3, 0.95);
    if (first || polished < result.min_value) {
      result.min_value = polished;
      result.witness = Witness{x, y, std::nullopt, polished};
      first = false;
    }
  }
  return result;
}

NonnegVerdict assert_nonneg(const LieAlgebra& alg, const Mat& phi, double tol, int budget,
                            uint64_t seed) {
  const MinSearchResult r = min_curvature_search(alg, phi, budget, seed);
  NonnegVerdict v;
  v.min_value = r.min_value;
  if (r.min_value < -tol) {
    v.refuted = true;
    v.witness = r.witness;
  }
  return v;
}

}  // namespace curvlie
