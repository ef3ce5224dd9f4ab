// Command-line driver for the dual curvature measure library: measures of
// convex bodies, the near-isotropic Monge-Ampere solver on the sphere,
// uniqueness probes, verification suites, and family scans.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dualmink/estimates.hpp"
#include "dualmink/io.hpp"
#include "dualmink/measures.hpp"
#include "dualmink/rng.hpp"
#include "dualmink/solver.hpp"

namespace {

using namespace dualmink;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitNoConvergence = 4;

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw InvalidInput("expected a comma-separated list of numbers");
  return out;
}

int run_measure(const std::string& body_path, double p, double q, int L,
                const std::string& out_path, const std::string& dump_path,
                std::int64_t mc_samples, std::uint64_t seed) {
  GridPtr grid;
  ConvexBody body = load_body(body_path);
  const int n = body_dim(body);
  grid = build_grid(n, L > 0 ? L : default_resolution(n));

  json result{{"p", p}, {"q", q}, {"n", n}};
  if (const auto* poly = std::get_if<Polytope>(&body); poly && q == n) {
    // exact atomic path: one atom h^{1-p} * area per facet
    AtomicMeasure cone = polytope_cone_volume(*poly);
    AtomicMeasure atoms = cone;
    for (Eigen::Index i = 0; i < atoms.masses.size(); ++i)
      atoms.masses[i] = n * cone.masses[i] *
                        std::pow(poly->facets[static_cast<size_t>(i)].offset, -p);
    result["representation"] = "atomic";
    result["total"] = total(atoms);
    result["min_density"] = atoms.masses.minCoeff();
    result["max_density"] = atoms.masses.maxCoeff();

    // doubling the polytope scales every atom by 2^{q-p}
    Polytope doubled = make_polytope(2.0 * poly->vertices);
    AtomicMeasure dcone = polytope_cone_volume(doubled);
    Eigen::VectorXd dmasses(dcone.masses.size());
    for (Eigen::Index i = 0; i < dmasses.size(); ++i)
      dmasses[i] = n * dcone.masses[i] *
                   std::pow(doubled.facets[static_cast<size_t>(i)].offset, -p);
    double scaling_check =
        std::abs(dmasses.sum() - std::pow(2.0, q - p) * total(atoms)) / dmasses.sum();
    result["identities"] = {
        {"nVk_check", std::abs(total(atoms) - n * total(cone)) / (n * total(cone))},
        {"scaling_check", scaling_check}};
    if (p != 0.0) result["identities"].erase("nVk_check");  // identity holds at p = 0
    if (!dump_path.empty()) write_text_file(dump_path, atoms_to_csv(atoms));
    emit(result, out_path);
    return kExitOk;
  }
  if (std::holds_alternative<Polytope>(body)) {
    McEstimate est = radial_total_mc(body, p, q, mc_samples, seed);
    result["representation"] = "monte_carlo";
    result["total"] = est.estimate;
    result["std_error"] = est.std_error;
    result["samples"] = est.samples;
    emit(result, out_path);
    return kExitOk;
  }

  SupportBody sb = std::holds_alternative<SupportBody>(body) ? std::get<SupportBody>(body)
                                                             : to_support_field(body, grid);
  grid = sb.field.grid;
  DensityMeasure density = lp_dual_density(sb, p, q);
  result["representation"] = "density";
  result["L"] = grid->resolution;
  result["total"] = total(density);
  result["min_density"] = density.density.min();
  result["max_density"] = density.density.max();

  // built-in identity checks: total at (0, n) vs n cone volumes, and the
  // 2^{q-p} scaling of the density under doubling the body
  double t0n = total(lp_dual_density(sb, 0.0, static_cast<double>(n)));
  double cone = total(cone_volume_density(sb));
  ScalarField doubled(grid, (2.0 * sb.field.values).eval());
  Eigen::VectorXd scaled = lp_dual_density(doubled, p, q).density.values;
  double factor = std::pow(2.0, q - p);
  double scaling_check =
      (scaled - factor * density.density.values).cwiseAbs().maxCoeff() /
      std::max(1.0, factor * density.density.values.cwiseAbs().maxCoeff());
  result["identities"] = {{"nVk_check", std::abs(t0n - n * cone) / std::max(1.0, std::abs(t0n))},
                          {"scaling_check", scaling_check}};

  if (!dump_path.empty()) write_text_file(dump_path, field_to_csv(density.density));
  emit(result, out_path);
  return kExitOk;
}

int run_solve(const std::string& problem_path, int L, double tol, int max_iter, bool even,
              bool curve, const std::string& out_prefix) {
  ProblemSpec spec = load_problem(problem_path);
  SolverConfig cfg;
  if (tol > 0.0) cfg.tol_residual = tol;
  if (max_iter > 0) cfg.max_iter = max_iter;
  cfg.even_mode = even;
  int resolution = L > 0 ? L : default_resolution(spec.dim);

  Solution sol;
  if (curve) {
    if (spec.dim != 2) throw InvalidInput("--curve requires an n = 2 problem");
    sol = solve_curve(spec, resolution, cfg);
  } else {
    sol = solve(spec, build_grid(spec.dim, resolution), cfg);
  }

  json summary = solution_to_json(sol, spec);
  if (out_prefix.empty()) {
    emit(summary, "");
  } else {
    emit(summary, out_prefix + ".json");
    write_text_file(out_prefix + ".csv", field_to_csv(sol.u));
  }
  return sol.converged ? kExitOk : kExitNoConvergence;
}

int run_probe(const std::string& problem_path, int L, int starts, std::uint64_t seed,
              double perturb_scale, bool even, int max_iter, const std::string& out_path) {
  ProblemSpec spec = load_problem(problem_path);
  SolverConfig cfg;
  cfg.even_mode = even;
  if (max_iter > 0) cfg.max_iter = max_iter;
  GridPtr grid = build_grid(spec.dim, L > 0 ? L : default_resolution(spec.dim));
  ProbeReport report = uniqueness_probe(spec, grid, cfg, starts, seed, perturb_scale);
  emit(probe_to_json(report), out_path);
  return kExitOk;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& out_path) {
  std::vector<Report> reports = verification_suite(suite, seed);
  bool all = true;
  json out = json::array();
  for (const auto& report : reports) {
    out.push_back(report_to_json(report));
    for (const auto& row : report.rows) {
      all = all && row.pass;
      std::printf("[%s] %-28s %-58s %.6g %s %.6g\n", row.pass ? "PASS" : "FAIL",
                  report.name.c_str(), row.label.c_str(), row.lhs, row.relation.c_str(), row.rhs);
    }
  }
  std::printf("%s: %zu reports\n", all ? "ALL PASS" : "FAILURES", reports.size());
  if (!out_path.empty()) write_text_file(out_path, out.dump(2) + "\n");
  return all ? kExitOk : kExitVerifyFailed;
}

int run_scan(const std::string& family, const std::string& params_csv, double p, double q, int L,
             std::uint64_t seed, const std::string& out_path, const std::string& csv_path) {
  ScanOptions opts;
  opts.seed = seed;
  GridPtr grid = build_grid(3, L > 0 ? L : default_resolution(3));
  Report report = family_scan(parse_family(family), parse_list(params_csv), p, q, grid, opts);
  emit(report_to_json(report), out_path);
  if (!csv_path.empty()) write_text_file(csv_path, report_to_csv(report));
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L_p dual curvature measures and the dual Minkowski problem on the sphere"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "master seed for all randomized paths");

  auto* measure = app.add_subcommand("measure", "dual curvature measure of a body");
  std::string body_path, out_path, dump_path;
  double p = 0.0, q = 3.0;
  int L = 0;
  std::int64_t mc_samples = 1000000;
  measure->add_option("--body", body_path, "body spec JSON")->required();
  measure->add_option("--p", p, "L_p exponent");
  measure->add_option("--q", q, "dual curvature order");
  measure->add_option("--L", L, "grid resolution");
  measure->add_option("--out", out_path, "output JSON path (stdout otherwise)");
  measure->add_option("--dump", dump_path, "density/atom CSV dump path");
  measure->add_option("--mc-samples", mc_samples, "samples for the polytope q != n path");

  auto* solve_cmd = app.add_subcommand("solve", "solve the dual Minkowski equation");
  std::string problem_path, out_prefix;
  double tol = 0.0;
  int max_iter = 0;
  bool even = false, curve = false;
  solve_cmd->add_option("--problem", problem_path, "problem spec JSON")->required();
  solve_cmd->add_option("--L", L, "grid resolution");
  solve_cmd->add_option("--tol", tol, "residual sup-norm tolerance");
  solve_cmd->add_option("--max-iter", max_iter, "iteration cap");
  solve_cmd->add_flag("--even", even, "restrict to even fields");
  solve_cmd->add_flag("--curve", curve, "n = 2 periodic finite-difference path");
  solve_cmd->add_option("--out", out_prefix, "output prefix (.json and .csv)");

  auto* probe = app.add_subcommand("probe", "multi-start uniqueness probe");
  int starts = 10;
  double perturb_scale = 0.2;
  probe->add_option("--problem", problem_path, "problem spec JSON")->required();
  probe->add_option("--starts", starts, "number of perturbed starts");
  probe->add_option("--perturb-scale", perturb_scale, "sup-norm of the start perturbations");
  probe->add_option("--L", L, "grid resolution");
  probe->add_option("--max-iter", max_iter, "iteration cap");
  probe->add_flag("--even", even, "restrict to even fields");
  probe->add_option("--out", out_path, "report JSON path");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  std::string suite = "all";
  verify->add_option("--suite", suite, "claim41|lemma42|lemma43|claim61|lemma62|measure_identities|prop51|all");
  verify->add_option("--out", out_path, "aggregated report JSON path");

  auto* scan = app.add_subcommand("scan", "family scan of dual curvature densities");
  std::string family, params_csv = "2,4,8,16", csv_path;
  scan->add_option("--family", family, "balls|ellipsoids|boxes|random")->required();
  scan->add_option("--params", params_csv, "comma-separated member parameters");
  scan->add_option("--p", p, "L_p exponent");
  scan->add_option("--q", q, "dual curvature order");
  scan->add_option("--L", L, "grid resolution");
  scan->add_option("--out", out_path, "report JSON path");
  scan->add_option("--csv", csv_path, "report CSV path");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(measure))
      return run_measure(body_path, p, q, L, out_path, dump_path, mc_samples, seed);
    if (app.got_subcommand(solve_cmd))
      return run_solve(problem_path, L, tol, max_iter, even, curve, out_prefix);
    if (app.got_subcommand(probe))
      return run_probe(problem_path, L, starts, seed, perturb_scale, even, max_iter, out_path);
    if (app.got_subcommand(verify)) return run_verify(suite, seed, out_path);
    if (app.got_subcommand(scan))
      return run_scan(family, params_csv, p, q, L, seed, out_path, csv_path);
    return kExitInputError;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInputError;
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInputError;
  } catch (const InvariantViolation& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvariant;
  }
}
