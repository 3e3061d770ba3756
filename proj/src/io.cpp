#include "curvlie/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvlie/errors.hpp"

namespace curvlie {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("io: malformed JSON");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("io: cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("io: matrix must be a non-empty 2D array");
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array()) throw ParseError("io: matrix must be a 2D array");
  const int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ParseError("io: ragged matrix rows");
    for (int k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw ParseError("io: matrix entries must be numbers");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

}  // namespace

LieAlgebra parse_algebra_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object() || !j.contains("dim") || !j.contains("structure"))
    throw ParseError("io: algebra document needs \"dim\" and \"structure\"");
  if (!j["dim"].is_number_integer()) throw ParseError("io: \"dim\" must be an integer");
  const int dim = j["dim"].get<int>();

  std::vector<StructureEntry> entries;
  for (const auto& e : j["structure"]) {
    if (!e.is_array() || e.size() != 4) throw ParseError("io: structure entries are [i,j,k,c]");
    entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<double>()});
  }

  Mat metric;
  if (j.contains("metric") && !(j["metric"].is_string() && j["metric"] == "identity"))
    metric = matrix_from_json(j["metric"]);

  std::vector<FactorRange> factors;
  if (j.contains("factors")) {
    for (const auto& f : j["factors"]) {
      if (!f.is_array() || f.size() != 2) throw ParseError("io: factors are [begin,end] ranges");
      factors.push_back({f[0].get<int>(), f[1].get<int>()});
    }
  }
  return build_from_structure_constants(dim, entries, metric, factors);
}

LieAlgebra load_algebra_file(const std::string& path) {
  return parse_algebra_json(read_file(path));
}

Mat parse_matrix_json(const std::string& text) { return matrix_from_json(parse_text(text)); }

Mat load_matrix_file(const std::string& path) { return parse_matrix_json(read_file(path)); }

Vec parse_vector_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_array() || j.empty()) throw ParseError("io: vector must be a non-empty array");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError("io: vector entries must be numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_vec(const Vec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s + "]";
}

std::string json_mat(const Mat& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += format_double(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

JsonObj& JsonObj::raw(const std::string& key, const std::string& raw_value) {
  if (!body_.empty()) body_ += ",";
  body_ += "\"" + key + "\":" + raw_value;
  return *this;
}

JsonObj& JsonObj::str(const std::string& key, const std::string& value) {
  return raw(key, "\"" + value + "\"");
}

JsonObj& JsonObj::num(const std::string& key, double value) {
  return raw(key, format_double(value));
}

JsonObj& JsonObj::integer(const std::string& key, long long value) {
  return raw(key, std::to_string(value));
}

JsonObj& JsonObj::boolean(const std::string& key, bool value) {
  return raw(key, value ? "true" : "false");
}

std::string JsonObj::dump() const { return "{" + body_ + "}"; }

std::string witness_json(const LieAlgebra& alg, const Witness& w) {
  JsonObj o;
  o.raw("X", json_vec(alg.from_working(w.x)));
  o.raw("Y", json_vec(alg.from_working(w.y)));
  if (w.t) o.num("t", *w.t);
  o.num("value", w.value);
  return o.dump();
}

std::string inf_verdict_json(const LieAlgebra& alg, const InfNonnegVerdict& v) {
  JsonObj o;
  o.str("verdict", v.refuted ? "Refuted" : "Passed");
  if (v.witness) o.raw("witness", witness_json(alg, *v.witness));
  o.num("min_delta", v.min_delta);
  o.num("max_D_norm", v.max_d_norm);
  o.integer("budget", v.budget);
  o.integer("seed", static_cast<long long>(v.seed));
  return o.dump();
}

}  // namespace curvlie
