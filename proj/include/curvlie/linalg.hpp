#pragma once

#include <cstdint>
#include <vector>

namespace curvlie {

// Coordinate vector in the working (orthonormal) basis of a Lie algebra.
using Vec = std::vector<double>;

// Dense row-major matrix. All algebras here have dim <= 8, so no effort is
// spent on blocking or sparsity.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Mat identity(int n);

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);

Mat transpose(const Mat& m);
Vec mat_vec(const Mat& m, const Vec& v);

// Solves m x = rhs by Gaussian elimination with partial pivoting.
Vec solve(const Mat& m, const Vec& rhs);
Mat inverse(const Mat& m);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
Vec normalized(const Vec& a);
Vec zeros(int n);
Vec basis_vec(int n, int i);

double frobenius_norm(const Mat& m);
double max_abs(const Mat& m);
double max_abs_diff(const Mat& a, const Mat& b);
double symmetry_residual(const Mat& m);
bool is_symmetric(const Mat& m, double tol);

// Column j of m as a vector / building a matrix from column vectors.
Vec column(const Mat& m, int j);
Mat from_columns(const std::vector<Vec>& cols);

// Orthonormal basis of the span of `vectors` (modified Gram-Schmidt with a
// re-orthogonalization pass). Directions whose residual falls below
// drop_tol * (largest input norm) are treated as dependent and dropped.
std::vector<Vec> orthonormal_span(const std::vector<Vec>& vectors, double drop_tol = 1e-10);

// Deterministic pseudo-random source for seeded searches (xorshift64* core).
// Uniform/normal shaping is done here rather than with <random> distributions,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed == 0 ? 0x9e3779b97f4a7c15ull : seed) {}

  uint64_t next_u64();
  double uniform();                 // [0, 1)
  double uniform(double lo, double hi);
  double normal();                  // standard normal, Box-Muller
  Vec unit_vector(int dim);
  Vec gaussian_vector(int dim);
  Mat symmetric_matrix(int dim, double scale = 1.0);
  Mat rotation(int dim);            // Gram-Schmidt of a Gaussian matrix

 private:
  uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace curvlie
