#pragma once

#include <string>

#include "curvlie/algebra.hpp"
#include "curvlie/curvature.hpp"
#include "curvlie/infinitesimal.hpp"
#include "curvlie/linalg.hpp"

namespace curvlie {

// Algebra document:
//   {"dim": n, "structure": [[i,j,k,c], ...],
//    "metric": "identity" | [[...], ...], "factors": [[0,2],[3,5]]?}
// Indices are 0-based. Malformed documents raise ParseError; mathematically
// invalid ones raise the corresponding validation error.
LieAlgebra parse_algebra_json(const std::string& text);
LieAlgebra load_algebra_file(const std::string& path);

// Matrices and vectors in files and on the command line are plain JSON
// arrays (row-major).
Mat parse_matrix_json(const std::string& text);
Mat load_matrix_file(const std::string& path);
Vec parse_vector_json(const std::string& text);

// All emitted floating point uses 17 significant digits, so identical
// invocations produce byte-identical output.
std::string format_double(double x);
std::string json_vec(const Vec& v);
std::string json_mat(const Mat& m);

// Minimal ordered JSON object builder for reports.
class JsonObj {
 public:
  JsonObj& raw(const std::string& key, const std::string& raw_value);
  JsonObj& str(const std::string& key, const std::string& value);
  JsonObj& num(const std::string& key, double value);
  JsonObj& integer(const std::string& key, long long value);
  JsonObj& boolean(const std::string& key, bool value);
  std::string dump() const;

 private:
  std::string body_;
};

// Witness serialization: {"X": [...], "Y": [...], "t": v?, "value": v}.
// Vectors are converted back to the algebra's input basis.
std::string witness_json(const LieAlgebra& alg, const Witness& w);

// {"verdict": ..., "witness": {...}?, "min_delta": x, "max_D_norm": y,
//  "budget": n, "seed": s}
std::string inf_verdict_json(const LieAlgebra& alg, const InfNonnegVerdict& v);

}  // namespace curvlie
