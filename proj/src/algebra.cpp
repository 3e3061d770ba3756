#include "curvlie/algebra.hpp"

#include <cmath>
#include <sstream>

#include "curvlie/errors.hpp"
#include "curvlie/numerics.hpp"

namespace curvlie {

namespace {

constexpr double kValidationTol = 1e-12;

std::string triple(int i, int j, int k) {
  std::ostringstream os;
  os << "(" << i << "," << j << "," << k << ")";
  return os.str();
}

Vec bracket_dense(const std::vector<double>& c, int dim, const Vec& x, const Vec& y) {
  Vec r(dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      const double xy = x[i] * y[j];
      if (xy == 0.0) continue;
      const double* ck = &c[(static_cast<size_t>(i) * dim + j) * dim];
      for (int k = 0; k < dim; ++k) r[k] += xy * ck[k];
    }
  }
  return r;
}

}  // namespace

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  return bracket_dense(c_, dim_, x, y);
}

Mat LieAlgebra::ad(const Vec& x) const {
  Mat m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    const Vec col = bracket(x, basis_vec(dim_, j));
    for (int i = 0; i < dim_; ++i) m(i, j) = col[i];
  }
  return m;
}

bool LieAlgebra::index_in_factor(int idx, int f) const {
  return idx >= factors_[f].begin && idx <= factors_[f].end;
}

Vec LieAlgebra::to_working(const Vec& input_coords) const {
  return identity_metric_ ? input_coords : mat_vec(to_working_, input_coords);
}

Vec LieAlgebra::from_working(const Vec& working_coords) const {
  return identity_metric_ ? working_coords : mat_vec(from_working_, working_coords);
}

Mat LieAlgebra::endo_to_working(const Mat& input_endo) const {
  return identity_metric_ ? input_endo : to_working_ * input_endo * from_working_;
}

Mat LieAlgebra::endo_from_working(const Mat& working_endo) const {
  return identity_metric_ ? working_endo : from_working_ * working_endo * to_working_;
}

LieAlgebra build_from_structure_constants(int dim, const std::vector<StructureEntry>& entries,
                                          const Mat& metric,
                                          const std::vector<FactorRange>& factors) {
  if (dim < 1 || dim > 8) throw Error("algebra: dim must be in 1..8");

  // Assemble the dense tensor. Entries are taken literally; the antisymmetric
  // counterpart of an entry is filled in only where the user left it unset,
  // so inconsistent redundant input is caught below rather than overwritten.
  const size_t n3 = static_cast<size_t>(dim) * dim * dim;
  std::vector<double> c(n3, 0.0);
  std::vector<char> set(n3, 0);
  auto at = [dim](int i, int j, int k) {
    return (static_cast<size_t>(i) * dim + j) * dim + k;
  };
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= dim || e.j < 0 || e.j >= dim || e.k < 0 || e.k >= dim)
      throw Error("algebra: structure entry index out of range at " + triple(e.i, e.j, e.k));
    c[at(e.i, e.j, e.k)] = e.c;
    set[at(e.i, e.j, e.k)] = 1;
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (set[at(i, j, k)] && !set[at(j, i, k)]) {
          c[at(j, i, k)] = -c[at(i, j, k)];
          set[at(j, i, k)] = 1;
        }

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const double r = c[at(i, j, k)] + c[at(j, i, k)];
        if (std::abs(r) > kValidationTol)
          throw AntisymmetryViolation("algebra: c[i][j][k] + c[j][i][k] = " + std::to_string(r) +
                                      " at " + triple(i, j, k));
      }

  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        Vec ei = basis_vec(dim, i), ej = basis_vec(dim, j), ek = basis_vec(dim, k);
        Vec s = bracket_dense(c, dim, bracket_dense(c, dim, ei, ej), ek);
        s = add(s, bracket_dense(c, dim, bracket_dense(c, dim, ej, ek), ei));
        s = add(s, bracket_dense(c, dim, bracket_dense(c, dim, ek, ei), ej));
        const double r = norm(s);
        if (r > kValidationTol)
          throw JacobiViolation("algebra: Jacobi identity residual " + std::to_string(r) +
                                " on basis triple " + triple(i, j, k));
      }

  Mat g = metric.empty() ? Mat::identity(dim) : metric;
  if (g.rows() != dim || g.cols() != dim) throw Error("algebra: metric has wrong shape");
  if (symmetry_residual(g) > kValidationTol)
    throw NotSymmetric("algebra: metric is not symmetric");

  // ad-invariance: <[e_i,e_j], e_k> + <e_j, [e_i,e_k]> = 0 for all triples.
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        double r = 0.0;
        for (int m = 0; m < dim; ++m)
          r += c[at(i, j, m)] * g(m, k) + c[at(i, k, m)] * g(j, m);
        if (std::abs(r) > kValidationTol)
          throw MetricNotAdInvariant("algebra: ad-invariance residual " + std::to_string(r) +
                                     " on basis triple " + triple(i, j, k));
      }

  const SpectralData gs = sym_eigen(g);
  if (gs.eigenvalues.front() <= kValidationTol)
    throw MetricNotPositiveDefinite("algebra: metric eigenvalue " +
                                    std::to_string(gs.eigenvalues.front()) +
                                    " is not positive");

  for (const auto& f : factors)
    if (f.begin < 0 || f.end >= dim || f.begin > f.end)
      throw Error("algebra: factor range out of bounds");
  for (size_t a = 0; a < factors.size(); ++a)
    for (size_t b = 0; b < factors.size(); ++b) {
      if (a == b) continue;
      for (int i = factors[a].begin; i <= factors[a].end; ++i)
        for (int j = factors[b].begin; j <= factors[b].end; ++j) {
          for (int k = 0; k < dim; ++k)
            if (std::abs(c[at(i, j, k)]) > kValidationTol)
              throw Error("algebra: factors are not ideals, [e_" + std::to_string(i) + ", e_" +
                          std::to_string(j) + "] != 0");
          if (std::abs(g(i, j)) > kValidationTol)
            throw Error("algebra: factors are not h0-orthogonal at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
        }
    }

  LieAlgebra alg;
  alg.dim_ = dim;
  alg.factors_ = factors;
  alg.input_metric_ = g;
  alg.identity_metric_ = max_abs_diff(g, Mat::identity(dim)) <= kValidationTol;

  if (alg.identity_metric_) {
    alg.c_ = std::move(c);
    alg.to_working_ = Mat::identity(dim);
    alg.from_working_ = Mat::identity(dim);
  } else {
    // Symmetric square root G^{1/2}: working coordinates w = G^{1/2} x make
    // h0 the plain dot product. Factors stay aligned because G is
    // block-diagonal across them.
    Mat t(dim, dim), tinv(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double s = 0.0, si = 0.0;
        for (int k = 0; k < dim; ++k) {
          const double w = gs.eigenvectors(i, k) * gs.eigenvectors(j, k);
          s += w * std::sqrt(gs.eigenvalues[k]);
          si += w / std::sqrt(gs.eigenvalues[k]);
        }
        t(i, j) = s;
        tinv(i, j) = si;
      }
    alg.to_working_ = t;
    alg.from_working_ = tinv;
    alg.c_.assign(n3, 0.0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const Vec w = mat_vec(t, bracket_dense(c, dim, column(tinv, i), column(tinv, j)));
        for (int k = 0; k < dim; ++k) alg.c_[at(i, j, k)] = w[k];
      }
  }
  return alg;
}

LieAlgebra build_so3() {
  std::vector<StructureEntry> e = {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}};
  return build_from_structure_constants(3, e);
}

LieAlgebra build_so4() {
  std::vector<StructureEntry> e;
  for (int f = 0; f < 2; ++f) {
    const int o = 3 * f;
    e.push_back({o + 0, o + 1, o + 2, 1.0});
    e.push_back({o + 1, o + 2, o + 0, 1.0});
    e.push_back({o + 2, o + 0, o + 1, 1.0});
  }
  return build_from_structure_constants(6, e, Mat(), {{0, 2}, {3, 5}});
}

Subalgebra make_subalgebra(const LieAlgebra& alg, const std::vector<Vec>& spanning) {
  Subalgebra result{orthonormal_span(spanning, 1e-10)};
  if (result.basis.empty()) throw NotASubalgebra("subalgebra: empty span");
  for (const auto& bi : result.basis)
    for (const auto& bj : result.basis) {
      Vec w = alg.bracket(bi, bj);
      for (const auto& b : result.basis) w = sub(w, scaled(b, dot(w, b)));
      if (norm(w) > 1e-10)
        throw NotASubalgebra("subalgebra: span is not closed under the bracket (residual " +
                             std::to_string(norm(w)) + ")");
    }
  return result;
}

Subalgebra span_of_basis_indices(const LieAlgebra& alg, const std::vector<int>& indices) {
  std::vector<Vec> v;
  for (int i : indices) v.push_back(basis_vec(alg.dim(), i));
  return make_subalgebra(alg, v);
}

bool is_abelian(const LieAlgebra& alg, const Subalgebra& sub, double tol) {
  for (size_t i = 0; i < sub.basis.size(); ++i)
    for (size_t j = i + 1; j < sub.basis.size(); ++j)
      if (norm(alg.bracket(sub.basis[i], sub.basis[j])) > tol) return false;
  return true;
}

std::pair<Vec, Vec> project(const LieAlgebra& alg, const Subalgebra& h, const Vec& z) {
  Vec zh = zeros(alg.dim());
  for (const auto& b : h.basis) zh = add(zh, scaled(b, dot(z, b)));
  return {zh, sub(z, zh)};
}

}  // namespace curvlie
