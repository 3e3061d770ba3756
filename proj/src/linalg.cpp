#include "curvlie/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "curvlie/errors.hpp"

namespace curvlie {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  Mat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Mat operator*(double s, const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

Mat transpose(const Mat& m) {
  Mat r(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  Vec r(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

namespace {

// LU factorization with partial pivoting, in place. Returns the pivot rows.
std::vector<int> lu_factor(Mat& a) {
  const int n = a.rows();
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) throw Error("linalg: singular matrix in solve");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(piv[k], piv[p]);
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      const double lik = a(i, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
  return piv;
}

Vec lu_solve(const Mat& lu, const std::vector<int>& piv, const Vec& rhs) {
  const int n = lu.rows();
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[piv[i]];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
    x[i] /= lu(i, i);
  }
  return x;
}

}  // namespace

Vec solve(const Mat& m, const Vec& rhs) {
  Mat lu = m;
  const auto piv = lu_factor(lu);
  return lu_solve(lu, piv, rhs);
}

Mat inverse(const Mat& m) {
  const int n = m.rows();
  Mat lu = m;
  const auto piv = lu_factor(lu);
  Mat r(n, n);
  Vec e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const Vec col = lu_solve(lu, piv, e);
    for (int i = 0; i < n; ++i) r(i, j) = col[i];
  }
  return r;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Vec normalized(const Vec& a) {
  const double n = norm(a);
  if (n == 0.0) throw Error("linalg: cannot normalize the zero vector");
  return scaled(a, 1.0 / n);
}

Vec zeros(int n) { return Vec(static_cast<size_t>(n), 0.0); }

Vec basis_vec(int n, int i) {
  Vec r(static_cast<size_t>(n), 0.0);
  r[i] = 1.0;
  return r;
}

double frobenius_norm(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

double max_abs(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s = std::max(s, std::abs(m(i, j)));
  return s;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j) - b(i, j)));
  return s;
}

double symmetry_residual(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j) s = std::max(s, std::abs(m(i, j) - m(j, i)));
  return s;
}

bool is_symmetric(const Mat& m, double tol) {
  return m.rows() == m.cols() && symmetry_residual(m) <= tol * std::max(1.0, max_abs(m));
}

Vec column(const Mat& m, int j) {
  Vec r(m.rows());
  for (int i = 0; i < m.rows(); ++i) r[i] = m(i, j);
  return r;
}

Mat from_columns(const std::vector<Vec>& cols) {
  if (cols.empty()) return Mat();
  Mat m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
  return m;
}

std::vector<Vec> orthonormal_span(const std::vector<Vec>& vectors, double drop_tol) {
  double scale = 0.0;
  for (const auto& v : vectors) scale = std::max(scale, norm(v));
  if (scale == 0.0) return {};

  std::vector<Vec> basis;
  for (const auto& v : vectors) {
    Vec w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w = sub(w, scaled(b, dot(w, b)));
    if (norm(w) > drop_tol * scale) basis.push_back(normalized(w));
  }
  return basis;
}

uint64_t Rng::next_u64() {
  // xorshift64*: fully specified, so seeded runs are reproducible everywhere.
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545f4914f6cdd1dull;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

Vec Rng::unit_vector(int dim) {
  Vec v(dim);
  double n2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = normal();
    n2 = dot(v, v);
  } while (n2 < 1e-12);
  return scaled(v, 1.0 / std::sqrt(n2));
}

Vec Rng::gaussian_vector(int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal();
  return v;
}

Mat Rng::symmetric_matrix(int dim, double scale) {
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) m(i, j) = m(j, i) = scale * normal();
  return m;
}

Mat Rng::rotation(int dim) {
  std::vector<Vec> cols;
  while (static_cast<int>(cols.size()) < dim) {
    cols.push_back(gaussian_vector(dim));
    cols = orthonormal_span(cols, 1e-8);
  }
  return from_columns(cols);
}

}  // namespace curvlie
