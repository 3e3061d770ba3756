#include "curvlie/so4.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvlie/curvature.hpp"
#include "curvlie/errors.hpp"
#include "curvlie/numerics.hpp"

namespace curvlie {

namespace {

void require_so4(const LieAlgebra& alg) {
  if (!alg.has_factors())
    throw FactorsMissing("so4: the algebra does not declare factor ideals");
  if (alg.dim() != 6 || alg.factors().size() != 2 || alg.factors()[0].size() != 3 ||
      alg.factors()[1].size() != 3)
    throw Error("so4: expected two 3-dimensional factors");
}

Vec factor_part(const LieAlgebra& alg, int f, const Vec& v) {
  const FactorRange r = alg.factors()[f];
  Vec out(3, 0.0);
  for (int i = 0; i < 3; ++i) out[i] = v[r.begin + i];
  return out;
}

Vec embed_factor(const LieAlgebra& alg, int f, const Vec& u3) {
  const FactorRange r = alg.factors()[f];
  Vec out = zeros(alg.dim());
  for (int i = 0; i < 3; ++i) out[r.begin + i] = u3[i];
  return out;
}

double off_factor_norm(const LieAlgebra& alg, int f, const Vec& v) {
  double s = 0.0;
  for (int i = 0; i < alg.dim(); ++i)
    if (!alg.index_in_factor(i, f)) s += v[i] * v[i];
  return std::sqrt(s);
}

// Orthonormal vectors spanning the intersection of span(columns of q) with
// factor f, where "in the factor" means the outside component is at most tol.
std::vector<Vec> factor_intersection(const LieAlgebra& alg, const Mat& q, int f, double tol) {
  const int m = q.cols();
  Mat gram(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double s = 0.0;
      for (int i = 0; i < alg.dim(); ++i)
        if (!alg.index_in_factor(i, f)) s += q(i, a) * q(i, b);
      gram(a, b) = s;
    }
  const SpectralData s = sym_eigen(gram);
  std::vector<Vec> out;
  for (size_t k = 0; k < s.eigenvalues.size(); ++k) {
    if (std::sqrt(std::max(s.eigenvalues[k], 0.0)) <= tol) {
      Vec w = zeros(alg.dim());
      for (int a = 0; a < m; ++a)
        w = add(w, scaled(column(q, a), s.eigenvectors(a, static_cast<int>(k))));
      out.push_back(normalized(w));
    }
  }
  return out;
}

// Unit direction of factor f orthogonal to the given factor-aligned vectors,
// or nullopt when they already fill the factor.
std::optional<Vec> factor_complement(const LieAlgebra& alg, int f, const std::vector<Vec>& used) {
  std::vector<Vec> parts;
  for (const auto& v : used) parts.push_back(factor_part(alg, f, v));
  const auto span = orthonormal_span(parts, 1e-8);
  if (span.size() >= 3) return std::nullopt;
  Vec best;
  double best_norm = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    Vec w = basis_vec(3, axis);
    for (const auto& b : span) w = sub(w, scaled(b, dot(w, b)));
    const double n = norm(w);
    if (n > best_norm) {
      best_norm = n;
      best = scaled(w, 1.0 / n);
    }
  }
  if (best_norm < 1e-6) return std::nullopt;
  return embed_factor(alg, f, best);
}

// Deterministic unit vector of factor f orthogonal to the given axis.
Vec orthogonal_in_factor(const LieAlgebra& alg, int f, const Vec& axis) {
  const Vec a = factor_part(alg, f, axis);
  int pick = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(a[i]) < std::abs(a[pick])) pick = i;
  Vec p = sub(basis_vec(3, pick), scaled(a, a[pick]));
  return embed_factor(alg, f, normalized(p));
}

// Right-handed orthonormal frame of factor f with `axis` in the given slot:
// [f0,f1]=f2, [f1,f2]=f0, [f2,f0]=f1.
std::array<Vec, 3> quaternion_frame(const LieAlgebra& alg, int f, const Vec& axis, int slot) {
  const Vec p = orthogonal_in_factor(alg, f, axis);
  const Vec q = alg.bracket(axis, p);
  if (std::abs(norm(q) - 1.0) > 1e-8)
    throw Error("so4: factor bracket is not so(3)-normalized in the stored basis");
  std::array<Vec, 3> frame;
  frame[slot] = axis;
  frame[(slot + 1) % 3] = p;
  frame[(slot + 2) % 3] = q;
  return frame;
}

Mat represent(const Mat& phi, const std::vector<Vec>& basis) {
  const int n = static_cast<int>(basis.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec pb = mat_vec(phi, basis[i]);
    for (int j = 0; j < n; ++j) m(j, i) = dot(basis[j], pb);
  }
  // Exact symmetry for downstream eigen calls.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = 0.5 * (m(i, j) + m(j, i));
  return m;
}

}  // namespace

std::optional<Vec> singular_eigenvector(const LieAlgebra& alg, const Mat& phi, double tol) {
  require_so4(alg);
  const SpectralData s = sym_eigen(phi);
  for (const auto& group : eigenvalue_groups(s)) {
    const Mat q = eigenspace(s, group);
    for (int f = 0; f < 2; ++f) {
      const auto hits = factor_intersection(alg, q, f, tol);
      if (!hits.empty()) return hits.front();
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Mat, Mat>> detect_product(const LieAlgebra& alg, const Mat& phi,
                                                  double tol) {
  require_so4(alg);
  const FactorRange f0 = alg.factors()[0];
  const FactorRange f1 = alg.factors()[1];
  for (int i = f0.begin; i <= f0.end; ++i)
    for (int j = f1.begin; j <= f1.end; ++j)
      if (std::abs(phi(i, j)) > tol || std::abs(phi(j, i)) > tol) return std::nullopt;
  Mat p(3, 3), q(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      p(i, j) = phi(f0.begin + i, f0.begin + j);
      q(i, j) = phi(f1.begin + i, f1.begin + j);
    }
  return std::make_pair(p, q);
}

std::optional<TorusFormResult> detect_torus_form(const LieAlgebra& alg, const Mat& phi,
                                                 double tol) {
  require_so4(alg);
  const SpectralData s = sym_eigen(phi);
  const auto groups = eigenvalue_groups(s);

  for (const auto& gc : groups) {
    const auto u1 = factor_intersection(alg, eigenspace(s, gc), 0, tol);
    if (u1.size() < 2) continue;
    const double c = s.eigenvalues[gc.first];
    for (const auto& gd : groups) {
      const auto u2 = factor_intersection(alg, eigenspace(s, gd), 1, tol);
      if (u2.size() < 2) continue;
      const double d = s.eigenvalues[gd.first];

      // The coupled plane is spanned by the factor directions missing from
      // the eigenvalue-c and eigenvalue-d eigenspaces. When a whole factor
      // is an eigenspace, the direction is taken from the other side's
      // coupling column, or defaults to the factor's own axes.
      std::optional<Vec> a3, b1;
      if (u1.size() == 2) a3 = factor_complement(alg, 0, u1);
      if (u2.size() == 2) b1 = factor_complement(alg, 1, u2);
      if (!b1) {
        if (a3) {
          const Vec z = mat_vec(phi, *a3);
          Vec z1 = embed_factor(alg, 1, factor_part(alg, 1, z));
          b1 = norm(z1) > 10.0 * tol ? normalized(z1)
                                     : basis_vec(alg.dim(), alg.factors()[1].begin);
        } else {
          b1 = basis_vec(alg.dim(), alg.factors()[1].begin);
        }
      }
      if (!a3) {
        const Vec z = mat_vec(phi, *b1);
        Vec z0 = embed_factor(alg, 0, factor_part(alg, 0, z));
        a3 = norm(z0) > 10.0 * tol ? normalized(z0)
                                   : basis_vec(alg.dim(), alg.factors()[0].begin + 2);
      }

      const auto af = quaternion_frame(alg, 0, *a3, 2);  // A3 in the third slot
      const auto bf = quaternion_frame(alg, 1, *b1, 0);  // B1 in the first slot
      const std::vector<Vec> basis = {af[0], af[1], af[2], bf[0], bf[1], bf[2]};
      const Mat m = represent(phi, basis);

      double residual = std::max({std::abs(m(0, 0) - c), std::abs(m(1, 1) - c),
                                  std::abs(m(4, 4) - d), std::abs(m(5, 5) - d)});
      static constexpr int kZero[][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3},
                                         {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
      for (const auto& z : kZero) residual = std::max(residual, std::abs(m(z[0], z[1])));
      if (residual > tol) continue;

      TorusFormResult result;
      result.form.c = c;
      result.form.d = d;
      result.form.tau = Mat(2, 2);
      result.form.tau(0, 0) = m(2, 2);
      result.form.tau(0, 1) = result.form.tau(1, 0) = m(2, 3);
      result.form.tau(1, 1) = m(3, 3);
      result.form.basis = from_columns(basis);
      Mat slack(2, 2);
      slack(0, 0) = 4.0 / 3.0 * c - m(2, 2);
      slack(0, 1) = slack(1, 0) = -m(2, 3);
      slack(1, 1) = 4.0 / 3.0 * d - m(3, 3);
      result.bound_satisfied = sym_eigen(slack).eigenvalues.front() >= -1e-12;
      return result;
    }
  }
  return std::nullopt;
}

Mat assemble_torus_form(const LieAlgebra& alg, double c, double d, const Mat& tau) {
  require_so4(alg);
  Mat m(6, 6);
  m(0, 0) = m(1, 1) = c;
  m(2, 2) = tau(0, 0);
  m(2, 3) = m(3, 2) = tau(0, 1);
  m(3, 3) = tau(1, 1);
  m(4, 4) = m(5, 5) = d;
  return m;
}

std::pair<double, double> torus_curvature_identity(const LieAlgebra& alg, const TorusForm& form,
                                                   double alpha, double beta) {
  const Vec a1 = column(form.basis, 0), a2 = column(form.basis, 1);
  const Vec b2 = column(form.basis, 4), b3 = column(form.basis, 5);

  // Reassemble phi from the form in working coordinates.
  Mat pattern(6, 6);
  pattern(0, 0) = pattern(1, 1) = form.c;
  pattern(2, 2) = form.tau(0, 0);
  pattern(2, 3) = pattern(3, 2) = form.tau(0, 1);
  pattern(3, 3) = form.tau(1, 1);
  pattern(4, 4) = pattern(5, 5) = form.d;
  const Mat phi = form.basis * pattern * transpose(form.basis);

  const Vec z1 = add(scaled(a1, alpha), scaled(b2, beta));
  const Vec z2 = add(a2, b3);
  const double k = puttmann_curvature(alg, phi, z1, z2);

  const double htilde = 4.0 / 3.0 * (form.c * alpha * alpha + form.d * beta * beta);
  const double h = form.tau(0, 0) * alpha * alpha + 2.0 * form.tau(0, 1) * alpha * beta +
                   form.tau(1, 1) * beta * beta;
  return {k, 0.75 * (htilde - h)};
}

namespace {

double plane_residual(const Mat& phi, const Vec& w1, const Vec& w2) {
  double s = 0.0;
  for (const Vec* w : {&w1, &w2}) {
    Vec pw = mat_vec(phi, *w);
    pw = sub(pw, scaled(w1, dot(pw, w1)));
    pw = sub(pw, scaled(w2, dot(pw, w2)));
    s += dot(pw, pw);
  }
  return std::sqrt(s);
}

}  // namespace

std::optional<Subalgebra> invariant_abelian_plane(const LieAlgebra& alg, const Mat& phi,
                                                  double tol, int budget, uint64_t seed) {
  require_so4(alg);
  const FactorRange f0 = alg.factors()[0];
  const FactorRange f1 = alg.factors()[1];

  auto plane_of = [&](const Vec& u3, const Vec& v3) {
    return std::make_pair(embed_factor(alg, 0, u3), embed_factor(alg, 1, v3));
  };

  double best = std::numeric_limits<double>::infinity();
  Vec best_u, best_v;
  auto offer = [&](const Vec& u3, const Vec& v3) {
    const auto [w1, w2] = plane_of(u3, v3);
    const double r = plane_residual(phi, w1, w2);
    if (r < best) {
      best = r;
      best_u = u3;
      best_v = v3;
    }
  };

  // Diagonal-block eigenvector pairs cover products, torus forms, and any
  // metric whose invariant plane heads genuine eigenvectors.
  Mat p(3, 3), q(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      p(i, j) = phi(f0.begin + i, f0.begin + j);
      q(i, j) = phi(f1.begin + i, f1.begin + j);
    }
  const SpectralData sp = sym_eigen(p);
  const SpectralData sq = sym_eigen(q);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) offer(column(sp.eigenvectors, a), column(sq.eigenvectors, b));

  Rng rng(seed);
  for (int i = 0; i < budget && best > tol; ++i) offer(rng.unit_vector(3), rng.unit_vector(3));

  if (best > tol && !best_u.empty()) {
    // Polish the best candidate by coordinate descent on the two spheres.
    Vec u = best_u, v = best_v;
    double step = 0.3;
    double current = best;
    for (int s = 0; s < 200; ++s) {
      for (Vec* w : {&u, &v}) {
        for (int i = 0; i < 3; ++i) {
          for (double sign : {1.0, -1.0}) {
            Vec saved = *w;
            (*w)[i] += sign * step;
            *w = scaled(*w, 1.0 / norm(*w));
            const auto [w1, w2] = plane_of(u, v);
            const double r = plane_residual(phi, w1, w2);
            if (r < current) {
              current = r;
            } else {
              *w = saved;
            }
          }
        }
      }
      step *= 0.95;
    }
    if (current < best) {
      best = current;
      best_u = u;
      best_v = v;
    }
  }

  if (best > tol) return std::nullopt;
  const auto [w1, w2] = plane_of(best_u, best_v);
  Subalgebra plane;
  plane.basis = {w1, w2};
  return plane;
}

BlockForm block_form_basis(const LieAlgebra& alg, const Mat& phi, const Subalgebra& plane) {
  require_so4(alg);
  if (plane.dim() != 2) throw PlaneNotSplit("block_form_basis: plane must be 2-dimensional");

  // One unit direction of the plane per factor.
  std::array<Vec, 2> split;
  for (int f = 0; f < 2; ++f) {
    Mat gram(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        double s = 0.0;
        for (int i = 0; i < alg.dim(); ++i)
          if (!alg.index_in_factor(i, f)) s += plane.basis[a][i] * plane.basis[b][i];
        gram(a, b) = s;
      }
    const SpectralData s = sym_eigen(gram);
    if (std::sqrt(std::max(s.eigenvalues.front(), 0.0)) > 1e-8)
      throw PlaneNotSplit("block_form_basis: plane has no direction inside factor " +
                          std::to_string(f));
    const Vec w = normalized(add(scaled(plane.basis[0], s.eigenvectors(0, 0)),
                                 scaled(plane.basis[1], s.eigenvectors(1, 0))));
    if (off_factor_norm(alg, f, w) > 1e-8)
      throw PlaneNotSplit("block_form_basis: extracted direction is not factor-aligned");
    split[f] = w;
  }
  if (norm(alg.bracket(split[0], split[1])) > 1e-10)
    throw Error("block_form_basis: plane is not abelian");
  if (plane_residual(phi, split[0], split[1]) > 1e-8)
    throw PlaneNotInvariant("block_form_basis: plane is not phi-invariant");

  const auto af = quaternion_frame(alg, 0, split[0], 0);  // A1 = plane direction
  const auto bf = quaternion_frame(alg, 1, split[1], 0);  // B1 = plane direction

  // Rotations about A1 and B1 diagonalizing the cross-factor coupling block
  // <phi A_{2,3}, B_{2,3}>: a signed 2x2 SVD with both factors rotations.
  Mat k(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k(i, j) = dot(mat_vec(phi, af[1 + i]), bf[1 + j]);

  Mat v = Mat::identity(2);
  {
    const Mat ktk = transpose(k) * k;
    const double theta = 0.5 * std::atan2(2.0 * ktk(0, 1), ktk(0, 0) - ktk(1, 1));
    v(0, 0) = v(1, 1) = std::cos(theta);
    v(1, 0) = std::sin(theta);
    v(0, 1) = -v(1, 0);
  }
  Mat u = Mat::identity(2);
  {
    const Mat kv = k * v;
    const Vec c0 = column(kv, 0), c1 = column(kv, 1);
    if (norm(c0) > 1e-12) {
      const Vec n0 = normalized(c0);
      u(0, 0) = n0[0];
      u(1, 0) = n0[1];
      u(0, 1) = -n0[1];
      u(1, 1) = n0[0];
    } else if (norm(c1) > 1e-12) {
      const Vec n1 = normalized(c1);
      u(0, 1) = n1[0];
      u(1, 1) = n1[1];
      u(0, 0) = n1[1];
      u(1, 0) = -n1[0];
    }
  }

  auto rotate = [](const std::array<Vec, 3>& frame, const Mat& rot) {
    std::array<Vec, 3> out = frame;
    out[1] = add(scaled(frame[1], rot(0, 0)), scaled(frame[2], rot(1, 0)));
    out[2] = add(scaled(frame[1], rot(0, 1)), scaled(frame[2], rot(1, 1)));
    return out;
  };
  const auto afr = rotate(af, u);
  const auto bfr = rotate(bf, v);

  BlockForm form;
  const std::vector<Vec> basis = {afr[0], bfr[0], afr[1], bfr[1], afr[2], bfr[2]};
  form.basis = from_columns(basis);
  form.matrix = represent(phi, basis);
  form.a1 = form.matrix(0, 0);
  form.a2 = form.matrix(1, 1);
  form.a3 = form.matrix(0, 1);
  form.b1 = form.matrix(2, 2);
  form.b2 = form.matrix(3, 3);
  form.b3 = form.matrix(2, 3);
  form.c1 = form.matrix(4, 4);
  form.c2 = form.matrix(5, 5);
  form.c3 = form.matrix(4, 5);
  form.lambda_c = form.matrix(2, 4);
  form.mu_c = form.matrix(3, 5);

  static constexpr int kZero[][2] = {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2},
                                     {1, 3}, {1, 4}, {1, 5}, {2, 5}, {3, 4}};
  for (const auto& z : kZero)
    if (std::abs(form.matrix(z[0], z[1])) > 1e-10)
      throw Error("block_form_basis: zero-pattern residual " +
                  std::to_string(std::abs(form.matrix(z[0], z[1]))) + " at (" +
                  std::to_string(z[0]) + "," + std::to_string(z[1]) + ")");
  return form;
}

}  // namespace curvlie
