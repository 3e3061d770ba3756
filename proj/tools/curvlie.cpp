// Command-line surface: validation of algebra documents, curvature curves
// along inverse-linear paths, infinitesimal-nonnegativity checks, subalgebra
// scaling checks, so(4) classification reports, and base-metric rescaling
// checks. Exit codes: 0 clean, 1 mathematical witness/violation found,
// 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvlie/algebra.hpp"
#include "curvlie/curvature.hpp"
#include "curvlie/errors.hpp"
#include "curvlie/infinitesimal.hpp"
#include "curvlie/io.hpp"
#include "curvlie/numerics.hpp"
#include "curvlie/paths.hpp"
#include "curvlie/rescale.hpp"
#include "curvlie/scaling.hpp"
#include "curvlie/so4.hpp"

namespace {

using namespace curvlie;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  if (n == 1) {
    out.push_back(a);
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0;
  int n = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 1)
    throw ParseError("grid must be start:stop:count");
  return linspace(a, b, n);
}

// Symmetric endomorphism from a file, converted to working coordinates.
Mat load_endo(const LieAlgebra& alg, const std::string& path) {
  Mat m = load_matrix_file(path);
  if (m.rows() != alg.dim() || m.cols() != alg.dim())
    throw ParseError("matrix in " + path + " has wrong shape for the algebra");
  Mat w = alg.endo_to_working(m);
  if (!is_symmetric(w, 1e-10))
    throw NotSymmetric("matrix in " + path + " is not h0-self-adjoint");
  for (int i = 0; i < w.rows(); ++i)
    for (int j = i + 1; j < w.cols(); ++j) w(i, j) = w(j, i) = 0.5 * (w(i, j) + w(j, i));
  return w;
}

Vec load_plane_vector(const LieAlgebra& alg, const std::string& text) {
  Vec v = parse_vector_json(text);
  if (static_cast<int>(v.size()) != alg.dim())
    throw ParseError("plane vector has wrong length for the algebra");
  return alg.to_working(v);
}

// Subalgebra spec tokens: "eK" for the K-th input basis vector (1-based) or a
// JSON array in input coordinates.
Subalgebra parse_subalgebra(const LieAlgebra& alg, const std::vector<std::string>& tokens) {
  std::vector<Vec> span;
  for (const auto& tok : tokens) {
    if (!tok.empty() && (tok[0] == 'e' || tok[0] == 'E')) {
      const int k = std::atoi(tok.c_str() + 1);
      if (k < 1 || k > alg.dim()) throw ParseError("basis token " + tok + " out of range");
      span.push_back(alg.to_working(basis_vec(alg.dim(), k - 1)));
    } else {
      span.push_back(load_plane_vector(alg, tok));
    }
  }
  return make_subalgebra(alg, span);
}

struct RunConfig {
  uint64_t seed = 42;
  int budget = 10000;
  double tol = 1e-9;
};

void add_config_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "search seed");
  cmd->add_option("--budget", cfg.budget, "sampling budget")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
}

int cmd_validate(const std::string& algebra_file) {
  const LieAlgebra alg = load_algebra_file(algebra_file);
  JsonObj o;
  o.str("status", "valid").integer("dim", alg.dim());
  o.boolean("factors", alg.has_factors());
  std::cout << o.dump() << "\n";
  return 0;
}

int cmd_path(const std::string& algebra_file, const std::string& psi_file,
             const std::string& metric_file, const std::vector<std::string>& plane,
             const std::string& grid_spec, const std::string& out_file, double tol) {
  const LieAlgebra alg = load_algebra_file(algebra_file);
  InverseLinearPath path = psi_file.empty() ? path_from_metric(load_endo(alg, metric_file))
                                            : make_path(load_endo(alg, psi_file));
  const Vec x = load_plane_vector(alg, plane[0]);
  const Vec y = load_plane_vector(alg, plane[1]);
  const std::vector<double> grid =
      grid_spec.empty() ? linspace(0.0, default_grid_stop(path), 50) : parse_grid(grid_spec);

  std::ostringstream csv;
  csv << "t,kappa_closed,kappa_direct,abs_diff\n";
  double max_diff = 0.0;
  for (double t : grid) {
    const double closed = kappa_closed_form(alg, path, x, y, t);
    const double direct = kappa_direct(alg, path, x, y, t);
    const double diff = std::abs(closed - direct);
    max_diff = std::max(max_diff, diff);
    csv << format_double(t) << "," << format_double(closed) << "," << format_double(direct) << ","
        << format_double(diff) << "\n";
  }
  if (out_file.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_file);
    if (!out) throw Error("cannot write " + out_file);
    out << csv.str();
  }
  // The two columns are equal mathematically; a mismatch past tol can only
  // be an implementation bug.
  return max_diff > tol ? 1 : 0;
}

int cmd_infnn(const std::string& algebra_file, const std::string& psi_file,
              const RunConfig& cfg) {
  const LieAlgebra alg = load_algebra_file(algebra_file);
  const Mat psi = load_endo(alg, psi_file);
  const InfNonnegVerdict v = check_inf_nonneg(alg, psi, cfg.tol, cfg.budget, cfg.seed);
  std::cout << inf_verdict_json(alg, v) << "\n";
  return v.refuted ? 1 : 0;
}

int cmd_scale(const std::string& algebra_file, const std::vector<std::string>& sub_tokens,
              std::optional<double> factor, std::optional<double> t_opt, const RunConfig& cfg) {
  const LieAlgebra alg = load_algebra_file(algebra_file);
  const Subalgebra sub = parse_subalgebra(alg, sub_tokens);
  const double t = t_opt ? *t_opt : lambda_to_t(*factor);
  const bool abelian = is_abelian(alg, sub);

  JsonObj o;
  o.num("t", t);
  if (!t_opt) o.num("lambda", *factor);
  o.boolean("abelian", abelian);
  int exit_code = 0;
  if (abelian) {
    const StretchResult r = max_stretch_check(alg, sub, t);
    o.str("verdict", r.preserves ? "Preserves" : "Fails");
    o.num("max_stretch", r.max_stretch);
    if (r.witness) {
      o.raw("witness", json_vec(alg.from_working(*r.witness)));
      exit_code = 1;
    }
  } else {
    const BracketRatioResult r = bracket_ratio_sup(alg, sub, cfg.budget, cfg.seed);
    o.str("verdict", r.unbounded ? "UnboundedWitness" : "BoundedBy");
    o.num("bound", r.bound);
    if (r.witness) {
      o.raw("witness_x", json_vec(alg.from_working(r.witness->first)));
      o.raw("witness_y", json_vec(alg.from_working(r.witness->second)));
      exit_code = 1;
    }
  }
  std::cout << o.dump() << "\n";
  return exit_code;
}

int cmd_so4_classify(const std::string& phi_file, const RunConfig& cfg) {
  const LieAlgebra alg = build_so4();
  const Mat phi = load_endo(alg, phi_file);

  JsonObj o;
  const auto singular = singular_eigenvector(alg, phi, cfg.tol);
  o.raw("singular", singular ? json_vec(*singular) : "null");

  const auto product = detect_product(alg, phi, cfg.tol);
  if (product) {
    JsonObj p;
    p.raw("phi1", json_mat(product->first)).raw("phi2", json_mat(product->second));
    o.raw("product", p.dump());
  } else {
    o.raw("product", "null");
  }

  int exit_code = 0;
  const auto torus = detect_torus_form(alg, phi, cfg.tol);
  if (torus) {
    JsonObj tf;
    tf.num("c", torus->form.c).num("d", torus->form.d);
    tf.raw("tau", json_mat(torus->form.tau));
    tf.raw("basis", json_mat(torus->form.basis));
    tf.boolean("bound_satisfied", torus->bound_satisfied);
    o.raw("torus_form", tf.dump());
    if (!torus->bound_satisfied) exit_code = 1;
  } else {
    o.raw("torus_form", "null");
  }

  const auto plane = invariant_abelian_plane(alg, phi, cfg.tol, cfg.budget, cfg.seed);
  if (plane) {
    JsonObj pl;
    pl.raw("u", json_vec(plane->basis[0])).raw("v", json_vec(plane->basis[1]));
    o.raw("invariant_plane", pl.dump());
    try {
      const BlockForm bf = block_form_basis(alg, phi, *plane);
      JsonObj b;
      b.raw("basis", json_mat(bf.basis)).raw("matrix", json_mat(bf.matrix));
      b.num("lambda", bf.lambda_c).num("mu", bf.mu_c);
      o.raw("block_form", b.dump());
    } catch (const Error&) {
      o.raw("block_form", "null");
    }
  } else {
    o.raw("invariant_plane", "null").raw("block_form", "null");
  }
  std::cout << o.dump() << "\n";
  return exit_code;
}

int cmd_rescale_check(const std::string& algebra_file, const std::string& psi_file, double lambda,
                      const std::vector<std::string>& plane, const std::string& grid_spec,
                      const RunConfig& cfg) {
  const LieAlgebra alg = load_algebra_file(algebra_file);
  const Mat psi = load_endo(alg, psi_file);
  const std::vector<double> grid =
      grid_spec.empty() ? linspace(0.0, 1.0, 21) : parse_grid(grid_spec);

  std::vector<std::pair<Vec, Vec>> planes;
  if (!plane.empty()) {
    planes.emplace_back(load_plane_vector(alg, plane[0]), load_plane_vector(alg, plane[1]));
  } else {
    Rng rng(cfg.seed);
    for (int i = 0; i < 10; ++i)
      planes.emplace_back(rng.unit_vector(alg.dim()), rng.unit_vector(alg.dim()));
  }

  double max_curve = 0.0, max_coeff = 0.0, max_d = 0.0;
  for (const auto& [x, y] : planes) {
    max_curve = std::max(max_curve, verify_curve_relation(alg, psi, lambda, x, y, grid));
    const auto rel = coefficient_relations(alg, psi, lambda, x, y);
    for (double r : rel.residuals) max_coeff = std::max(max_coeff, std::abs(r));
    max_d = std::max(max_d, d_relation_residual(alg, psi, lambda, x, y));
  }

  JsonObj o;
  o.num("lambda", lambda);
  o.integer("planes", static_cast<long long>(planes.size()));
  o.num("max_curve_residual", max_curve);
  o.num("max_coefficient_residual", max_coeff);
  o.num("max_d_residual", max_d);
  o.num("tol", cfg.tol);
  std::cout << o.dump() << "\n";
  return (max_curve <= cfg.tol && max_coeff <= 1e-10 && max_d <= 1e-12) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature of left-invariant metrics on compact Lie groups"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("CURVLIE_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);

  std::string algebra_file, psi_file, metric_file, grid_spec, out_file, phi_file;
  std::vector<std::string> plane, sub_tokens;
  std::optional<double> factor, t_opt;
  double lambda = 1.0;

  auto* validate = app.add_subcommand("validate", "validate an algebra document");
  validate->add_option("algebra", algebra_file, "algebra JSON file")->required();

  auto* path = app.add_subcommand("path", "kappa(t) curve along an inverse-linear path (CSV)");
  path->add_option("algebra", algebra_file)->required();
  auto* popt = path->add_option("--psi", psi_file, "deformation matrix file");
  auto* mopt = path->add_option("--from-metric", metric_file, "endpoint metric matrix file");
  popt->excludes(mopt);
  path->add_option("--plane", plane, "plane vectors X Y as JSON arrays")
      ->expected(2)
      ->allow_extra_args(false)
      ->required();
  path->add_option("--grid", grid_spec, "start:stop:count (default 0:0.9*bound:50)");
  path->add_option("--out", out_file, "CSV output file (default stdout)");
  path->add_option("--tol", cfg.tol, "closed-vs-direct tolerance");

  auto* infnn = app.add_subcommand("infnn", "infinitesimal nonnegativity verdict (JSON)");
  infnn->add_option("algebra", algebra_file)->required();
  infnn->add_option("psi", psi_file, "deformation matrix file")->required();
  add_config_options(infnn, cfg);

  auto* scale = app.add_subcommand("scale", "subalgebra scaling check (JSON)");
  scale->add_option("algebra", algebra_file)->required();
  scale->add_option("--sub", sub_tokens, "subalgebra span: eK tokens or JSON vectors")
      ->required()
      ->allow_extra_args(false);
  auto* fopt = scale->add_option("--factor", factor, "scaling factor lambda > 0");
  auto* topt = scale->add_option("--t", t_opt, "path parameter t < 1");
  fopt->excludes(topt);
  add_config_options(scale, cfg);

  auto* so4 = app.add_subcommand("so4", "so(4) classification utilities");
  so4->require_subcommand(1);
  auto* classify = so4->add_subcommand("classify", "classification report for a metric (JSON)");
  classify->add_option("phi", phi_file, "metric matrix file (6x6)")->required();
  add_config_options(classify, cfg);

  auto* rescale = app.add_subcommand("rescale-check", "bi-invariant rescaling relation (JSON)");
  rescale->add_option("algebra", algebra_file)->required();
  rescale->add_option("--psi", psi_file, "deformation matrix file")->required();
  rescale->add_option("--lambda", lambda, "base metric scale factor")->required();
  rescale->add_option("--plane", plane, "plane vectors X Y as JSON arrays")
      ->expected(2)
      ->allow_extra_args(false);
  rescale->add_option("--grid", grid_spec, "start:stop:count (default 0:1:21)");
  rescale->add_option("--seed", cfg.seed, "seed for default planes");
  rescale->add_option("--tol", cfg.tol, "curve residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(algebra_file);
    if (path->parsed()) {
      if (psi_file.empty() == metric_file.empty()) {
        std::cerr << "path: exactly one of --psi / --from-metric is required\n";
        return 2;
      }
      return cmd_path(algebra_file, psi_file, metric_file, plane, grid_spec, out_file, cfg.tol);
    }
    if (infnn->parsed()) return cmd_infnn(algebra_file, psi_file, cfg);
    if (scale->parsed()) {
      if (factor.has_value() == t_opt.has_value()) {
        std::cerr << "scale: exactly one of --factor / --t is required\n";
        return 2;
      }
      return cmd_scale(algebra_file, sub_tokens, factor, t_opt, cfg);
    }
    if (classify->parsed()) return cmd_so4_classify(phi_file, cfg);
    if (rescale->parsed())
      return cmd_rescale_check(algebra_file, psi_file, lambda, plane, grid_spec, cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
