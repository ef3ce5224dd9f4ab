#include "dualmink/solver.hpp"

#include <cmath>

#include "dualmink/measures.hpp"
#include "dualmink/parallel.hpp"
#include "dualmink/rng.hpp"

namespace dualmink {

namespace {

constexpr double kConvexityTol = -1e-8;

struct Evaluation {
  bool feasible = false;
  SphereJet jet;
  Eigen::VectorXd residual;
  double residual_sup = std::numeric_limits<double>::infinity();
  double min_u = 0.0;
  double margin = 0.0;
};

// Non-throwing residual evaluation used by the line search: iterates below
// the positivity floor are rejected instead of aborting.  The determinant is
// left unclamped; the cone margin is reported for the caller to police.
Evaluation evaluate(const GridPtr& grid, const Eigen::VectorXd& u_values,
                    const Eigen::VectorXd& f, double p, double q, double fd_step,
                    double positivity_floor) {
  Evaluation ev;
  ev.min_u = u_values.minCoeff();
  if (!(ev.min_u > positivity_floor)) return ev;
  ScalarField u(grid, u_values);
  ev.jet = sphere_jet(u, fd_step);
  ev.margin = ev.jet.hess.min_eigenvalue().minCoeff();
  if (ev.jet.u.values.minCoeff() <= positivity_floor) return ev;

  const int n = grid->dim;
  Eigen::VectorXd det = ev.jet.hess.determinant();
  Eigen::VectorXd grad2 = ev.jet.grad.squared_norms();
  ev.residual.resize(det.size());
  const double radial_exp = 0.5 * (q - n);
  for (Eigen::Index i = 0; i < det.size(); ++i) {
    double uu = ev.jet.u.values[i];
    ev.residual[i] =
        std::pow(grad2[i] + uu * uu, radial_exp) * std::pow(uu, 1.0 - p) * det[i] - f[i];
  }
  ev.residual_sup = ev.residual.cwiseAbs().maxCoeff();
  ev.feasible = true;
  return ev;
}

// Spectral solve (c0 + Laplace) phi = g over all grid-resolvable degrees.
// Resonant modes with negligible content are dropped; significant resonant
// content raises ResonanceError.  Odd degrees are zeroed in even mode.
Eigen::VectorXd spectral_solve(const GridPtr& grid, const Eigen::VectorXd& g_values, double c0,
                               bool even_mode) {
  ScalarField g(grid, g_values);
  Eigen::VectorXd coeffs = analyze(g);
  double scale = std::max(1.0, coeffs.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
    int k = harmonic_degree_of(grid->dim, static_cast<int>(j));
    if (even_mode && k % 2 == 1) {
      coeffs[j] = 0.0;
      continue;
    }
    double divisor = c0 - laplace_eigenvalue(grid->dim, k);
    if (std::abs(divisor) < 1e-8) {
      if (std::abs(coeffs[j]) > 1e-9 * scale) throw ResonanceError(k, divisor);
      coeffs[j] = 0.0;
    } else {
      coeffs[j] /= divisor;
    }
  }
  return SphereInterpolant(grid, std::move(coeffs)).to_field(grid).values;
}

Eigen::VectorXd synthesize_harmonics(const GridPtr& grid, const std::vector<HarmonicTerm>& terms,
                                     double constant) {
  Eigen::VectorXd vals = Eigen::VectorXd::Constant(grid->node_count(), constant);
  for (const auto& term : terms) {
    ScalarField y = spherical_harmonic_field(grid, term.k, term.m);
    vals += term.coefficient * y.values;
  }
  return vals;
}

double default_start_value(const ScalarField& f, double p, double q,
                           const std::optional<Eigen::VectorXd>& initial_guess) {
  double mean = integrate(f) / f.grid->area();
  double spread = f.max() - f.min();
  if (std::abs(q - p) < 1e-12) {
    if (!initial_guess && spread > 1e-12)
      throw InvalidInput("solve: q = p needs an explicit initial iterate for non-constant f");
    return 1.0;
  }
  return std::pow(mean, 1.0 / (q - p));
}

void fill_diagnostics(Solution& sol, const Evaluation& ev, const Eigen::VectorXd& f) {
  const GridPtr& grid = sol.u.grid;
  const int n = grid->dim;
  sol.min_u = ev.min_u;
  sol.convexity_margin = ev.margin;
  Eigen::VectorXd det = ev.jet.hess.determinant().cwiseMax(0.0);
  sol.volume = integrate(grid, ev.jet.u.values.cwiseProduct(det)) / n;
  sol.total_measure = integrate(grid, ev.residual + f);
  // grid lower bound on the diameter from the boundary points Dh
  Eigen::MatrixXd pts = ev.jet.grad.vectors;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    pts.row(i) += ev.jet.u.values[i] * grid->nodes.row(i);
  double best = 0.0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (Eigen::Index j = i + 1; j < pts.rows(); ++j)
      best = std::max(best, (pts.row(i) - pts.row(j)).squaredNorm());
  sol.diameter_bound = std::sqrt(best);
}

// Dense Jacobian in the harmonic basis of degree <= L_h by central finite
// differences of the residual; the fallback when the fixed preconditioner
// stalls.
struct FdJacobian {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  std::vector<int> basis;  // packed harmonic indices in use
  int degree = 0;
};

FdJacobian build_fd_jacobian(const GridPtr& grid, const Eigen::VectorXd& u, const Eigen::VectorXd& f,
                             const ProblemSpec& spec, const SolverConfig& cfg) {
  FdJacobian jac;
  jac.degree = std::min(cfg.harmonic_degree, interpolation_degree(*grid));
  int count = harmonic_count(grid->dim, jac.degree);
  for (int j = 0; j < count; ++j) {
    int k = harmonic_degree_of(grid->dim, j);
    if (cfg.even_mode && k % 2 == 1) continue;
    jac.basis.push_back(j);
  }
  const int M = static_cast<int>(jac.basis.size());
  Eigen::MatrixXd J(M, M);
  const double tau = cfg.fd_step_jacobian;

  // basis harmonics sampled on the grid, one column per direction
  Eigen::MatrixXd directions(grid->node_count(), M);
  {
    Eigen::VectorXd buffer;
    for (Eigen::Index i = 0; i < grid->node_count(); ++i) {
      evaluate_harmonics(grid->dim, jac.degree, grid->node(i), buffer);
      for (int c = 0; c < M; ++c) directions(i, c) = buffer[jac.basis[c]];
    }
  }
  for (int c = 0; c < M; ++c) {
    Eigen::VectorXd dir = directions.col(c);
    // keep the probe iterates positive
    double t = std::min(tau, 0.25 * u.minCoeff() / std::max(dir.cwiseAbs().maxCoeff(), 1e-12));
    Evaluation plus = evaluate(grid, u + t * dir, f, spec.p, spec.q, cfg.fd_step, 0.0);
    Evaluation minus = evaluate(grid, u - t * dir, f, spec.p, spec.q, cfg.fd_step, 0.0);
    if (!plus.feasible || !minus.feasible)
      throw InvariantViolation("fd jacobian: probe iterate is not positive");
    ScalarField diff(grid, ((plus.residual - minus.residual) / (2.0 * t)).eval());
    Eigen::VectorXd col = analyze(diff, jac.degree);
    for (int r = 0; r < M; ++r) J(r, c) = col[jac.basis[r]];
  }
  jac.lu = Eigen::PartialPivLU<Eigen::MatrixXd>(J);
  return jac;
}

Eigen::VectorXd fd_jacobian_step(const FdJacobian& jac, const GridPtr& grid,
                                 const Eigen::VectorXd& residual_values) {
  ScalarField r(grid, residual_values);
  Eigen::VectorXd rc = analyze(r, jac.degree);
  const int M = static_cast<int>(jac.basis.size());
  Eigen::VectorXd rhs(M);
  for (int i = 0; i < M; ++i) rhs[i] = -rc[jac.basis[i]];
  Eigen::VectorXd delta = jac.lu.solve(rhs);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(harmonic_count(grid->dim, jac.degree));
  for (int i = 0; i < M; ++i) coeffs[jac.basis[i]] = delta[i];
  return SphereInterpolant(grid, std::move(coeffs)).to_field(grid).values;
}

}  // namespace

ScalarField ProblemSpec::data_field(const GridPtr& grid) const {
  if (!grid) throw InvalidInput("ProblemSpec: null grid");
  if (grid->dim != dim) throw InvalidInput("ProblemSpec: grid dimension mismatch");
  if (q <= 0.0) throw InvalidInput("ProblemSpec: q must be positive");
  Eigen::VectorXd vals;
  if (f_values) {
    if (f_values->size() != grid->node_count())
      throw InvalidInput("ProblemSpec: raw f values do not match the grid");
    vals = *f_values;
  } else {
    if (f_constant <= 0.0) throw InvalidInput("ProblemSpec: constant part of f must be positive");
    vals = synthesize_harmonics(grid, f_harmonics, f_constant);
  }
  if (vals.minCoeff() <= 0.0)
    throw InvariantViolation("ProblemSpec: f is not positive at every node");
  return ScalarField(grid, std::move(vals));
}

ScalarField residual(const ScalarField& u, const ProblemSpec& spec, double fd_step) {
  if (u.min() <= 0.0) throw InvariantViolation("residual: u must be positive");
  ScalarField f = spec.data_field(u.grid);
  SphereJet jet = sphere_jet(u, fd_step);
  Eigen::VectorXd density = lp_dual_density_values(jet, spec.p, spec.q);
  return ScalarField(u.grid, (density - f.values).eval());
}

ScalarField linearized_solve_at_one(const ScalarField& g, const ProblemSpec& spec,
                                    int harmonic_degree) {
  const GridPtr& grid = g.grid;
  int degree = std::min(harmonic_degree, interpolation_degree(*grid));
  Eigen::VectorXd coeffs = analyze(g, degree);
  double scale = std::max(1.0, g.sup_norm());
  double c0 = grid->dim - spec.p;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
    int k = harmonic_degree_of(grid->dim, static_cast<int>(j));
    double divisor = c0 - laplace_eigenvalue(grid->dim, k);
    if (std::abs(divisor) < 1e-8) {
      if (std::abs(coeffs[j]) > 1e-12 * scale) throw ResonanceError(k, divisor);
      coeffs[j] = 0.0;
    } else {
      coeffs[j] /= divisor;
    }
  }
  return SphereInterpolant(grid, std::move(coeffs)).to_field(grid);
}

Solution solve(const ProblemSpec& spec, const GridPtr& grid, const SolverConfig& cfg) {
  ScalarField f = spec.data_field(grid);

  Eigen::VectorXd u;
  if (cfg.initial_guess) {
    if (cfg.initial_guess->size() != grid->node_count())
      throw InvalidInput("solve: initial guess does not match the grid");
    u = *cfg.initial_guess;
  } else {
    u = Eigen::VectorXd::Constant(grid->node_count(), default_start_value(f, spec.p, spec.q, {}));
  }

  Solution sol;
  sol.u = ScalarField(grid, u);
  Evaluation ev = evaluate(grid, u, f.values, spec.p, spec.q, cfg.fd_step, cfg.positivity_floor);
  if (!ev.feasible) return sol;  // start below the positivity floor

  const double precond_c0 = spec.q - spec.p;  // derivative of the density at u = 1
  std::optional<FdJacobian> jacobian;
  int iterations = 0;
  int lifts = 0;
  // recent accepted residuals; near the floor the sup-norm landscape has
  // corners, and a short non-monotone window steps across them
  double history[3] = {ev.residual_sup, ev.residual_sup, ev.residual_sup};

  while (true) {
    if (ev.residual_sup <= cfg.tol_residual) {
      sol.converged = ev.min_u > cfg.positivity_floor && ev.margin >= kConvexityTol;
      break;
    }
    if (iterations >= cfg.max_iter) break;

    Eigen::VectorXd step;
    if (!jacobian) {
      // derivative at the constant level c is c^{q-p-1} (Laplace + (q-p));
      // dividing by the level keeps the step Newton-sized away from u = 1
      double level = integrate(grid, u) / grid->area();
      double gain = std::pow(std::max(level, 1e-8), spec.q - spec.p - 1.0);
      step = -spectral_solve(grid, ev.residual, precond_c0, cfg.even_mode) / gain;
    } else {
      step = fd_jacobian_step(*jacobian, grid, ev.residual);
    }

    // once an iterate is inside the convexity cone, later steps may not leave
    // it; perturbed starts are allowed to enter from outside
    const bool cone_active = ev.margin >= kConvexityTol;
    const bool near_floor = ev.residual_sup <= 1e4 * cfg.tol_residual;
    const double bar =
        near_floor ? std::max({history[0], history[1], history[2]}) : ev.residual_sup;
    double t = 1.0;
    int halvings = 0;
    bool accepted = false;
    Evaluation trial;
    while (t >= cfg.min_step) {
      trial = evaluate(grid, u + t * step, f.values, spec.p, spec.q, cfg.fd_step,
                       cfg.positivity_floor);
      if (trial.feasible && trial.residual_sup < bar &&
          (!cone_active || trial.margin >= kConvexityTol)) {
        accepted = true;
        break;
      }
      t *= 0.5;
      ++halvings;
    }

    if (!accepted) {
      if (!cone_active && lifts < 2) {
        // stuck outside the cone, where the determinant's sign structure
        // misleads the preconditioner; adding the curvature deficit as a
        // constant is a Minkowski sum with a ball and restores a genuine
        // support function
        u.array() += (kConvexityTol - ev.margin) + 0.05;
        ev = evaluate(grid, u, f.values, spec.p, spec.q, cfg.fd_step, cfg.positivity_floor);
        if (!ev.feasible) break;
        ++lifts;
        ++iterations;
        continue;
      }
      if (!jacobian) {
        // preconditioned step kept failing through the backtracks: switch to
        // the full finite-difference Jacobian in the harmonic basis
        jacobian = build_fd_jacobian(grid, u, f.values, spec, cfg);
        sol.used_fd_jacobian = true;
        continue;
      }
      break;  // genuine stall
    }

    u += t * step;
    ev = trial;
    history[iterations % 3] = ev.residual_sup;
    ++iterations;
    if (jacobian && halvings > 1)
      jacobian = build_fd_jacobian(grid, u, f.values, spec, cfg);  // refresh a stale Jacobian
  }

  sol.u = ScalarField(grid, u);
  sol.iterations = iterations;
  sol.residual_sup = ev.residual_sup;
  if (ev.feasible) fill_diagnostics(sol, ev, f.values);
  return sol;
}

// ---------------------------------------------------------------------------
// n = 2 periodic finite-difference path
// ---------------------------------------------------------------------------

namespace {

struct CurveEval {
  bool feasible = false;
  Eigen::VectorXd residual;
  Eigen::VectorXd d1, d2;
  double residual_sup = std::numeric_limits<double>::infinity();
  double min_u = 0.0;
  double margin = 0.0;
};

// 4th-order periodic differences
void curve_derivatives(const Eigen::VectorXd& u, double dtheta, Eigen::VectorXd& d1,
                       Eigen::VectorXd& d2) {
  const Eigen::Index L = u.size();
  d1.resize(L);
  d2.resize(L);
  for (Eigen::Index j = 0; j < L; ++j) {
    double um2 = u[(j + L - 2) % L], um1 = u[(j + L - 1) % L];
    double up1 = u[(j + 1) % L], up2 = u[(j + 2) % L];
    d1[j] = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * dtheta);
    d2[j] = (16.0 * ((up1 - u[j]) + (um1 - u[j])) - ((up2 - u[j]) + (um2 - u[j]))) /
            (12.0 * dtheta * dtheta);
  }
}

CurveEval curve_evaluate(const Eigen::VectorXd& u, const Eigen::VectorXd& f, double p, double q,
                         double dtheta, double positivity_floor) {
  CurveEval ev;
  ev.min_u = u.minCoeff();
  if (!(ev.min_u > positivity_floor)) return ev;
  curve_derivatives(u, dtheta, ev.d1, ev.d2);
  Eigen::VectorXd curvature = ev.d2 + u;  // u'' + u
  ev.margin = curvature.minCoeff();
  if (ev.margin < kConvexityTol) return ev;
  ev.residual.resize(u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    double A = ev.d1[j] * ev.d1[j] + u[j] * u[j];
    ev.residual[j] = std::pow(A, 0.5 * (q - 2.0)) * std::pow(u[j], 1.0 - p) *
                         std::max(curvature[j], 0.0) -
                     f[j];
  }
  ev.residual_sup = ev.residual.cwiseAbs().maxCoeff();
  ev.feasible = true;
  return ev;
}

// Exact Jacobian of the discrete residual: a 5-band circulant-structured
// matrix assembled densely (L is small).
Eigen::MatrixXd curve_jacobian(const Eigen::VectorXd& u, const CurveEval& ev, double p, double q,
                               double dtheta) {
  const Eigen::Index L = u.size();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(L, L);
  const double w1[5] = {1.0 / (12 * dtheta), -8.0 / (12 * dtheta), 0.0, 8.0 / (12 * dtheta),
                        -1.0 / (12 * dtheta)};
  const double w2[5] = {-1.0 / (12 * dtheta * dtheta), 16.0 / (12 * dtheta * dtheta),
                        -30.0 / (12 * dtheta * dtheta), 16.0 / (12 * dtheta * dtheta),
                        -1.0 / (12 * dtheta * dtheta)};
  for (Eigen::Index j = 0; j < L; ++j) {
    double A = ev.d1[j] * ev.d1[j] + u[j] * u[j];
    double B = ev.d2[j] + u[j];
    double P = std::pow(A, 0.5 * (q - 2.0));
    double S = std::pow(u[j], 1.0 - p);
    double dPdA = 0.5 * (q - 2.0) * std::pow(A, 0.5 * (q - 2.0) - 1.0);
    double dS = (1.0 - p) * std::pow(u[j], -p);
    for (int s = -2; s <= 2; ++s) {
      Eigen::Index col = (j + s + L) % L;
      double D1 = w1[s + 2];
      double D2 = w2[s + 2];
      double delta = (s == 0) ? 1.0 : 0.0;
      double dA = 2.0 * ev.d1[j] * D1 + 2.0 * u[j] * delta;
      double dB = D2 + delta;
      J(j, col) += dPdA * dA * S * B + P * dS * delta * B + P * S * dB;
    }
  }
  return J;
}

}  // namespace

Solution solve_curve(const ProblemSpec& spec, int L, const SolverConfig& cfg) {
  if (spec.dim != 2) throw InvalidInput("solve_curve: spec must have n = 2");
  GridPtr grid = build_grid(2, L);
  ScalarField f = spec.data_field(grid);
  const double dtheta = 2.0 * kPi / L;

  Eigen::VectorXd u;
  if (cfg.initial_guess) {
    if (cfg.initial_guess->size() != grid->node_count())
      throw InvalidInput("solve_curve: initial guess does not match the grid");
    u = *cfg.initial_guess;
  } else {
    u = Eigen::VectorXd::Constant(L, default_start_value(f, spec.p, spec.q, {}));
  }

  Solution sol;
  sol.u = ScalarField(grid, u);
  CurveEval ev = curve_evaluate(u, f.values, spec.p, spec.q, dtheta, cfg.positivity_floor);
  if (!ev.feasible) return sol;

  int iterations = 0;
  while (true) {
    if (ev.residual_sup <= cfg.tol_residual) {
      sol.converged = ev.min_u > cfg.positivity_floor && ev.margin >= kConvexityTol;
      break;
    }
    if (iterations >= cfg.max_iter) break;
    Eigen::MatrixXd J = curve_jacobian(u, ev, spec.p, spec.q, dtheta);
    Eigen::VectorXd step = Eigen::PartialPivLU<Eigen::MatrixXd>(J).solve(-ev.residual);
    double t = 1.0;
    bool accepted = false;
    CurveEval trial;
    while (t >= cfg.min_step) {
      trial = curve_evaluate(u + t * step, f.values, spec.p, spec.q, dtheta, cfg.positivity_floor);
      if (trial.feasible && trial.residual_sup < ev.residual_sup) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    u += t * step;
    ev = trial;
    ++iterations;
  }

  sol.u = ScalarField(grid, u);
  sol.iterations = iterations;
  sol.residual_sup = ev.residual_sup;
  if (ev.feasible) {
    sol.min_u = ev.min_u;
    sol.convexity_margin = ev.margin;
    Eigen::VectorXd curvature = (ev.d2 + u).cwiseMax(0.0);
    sol.volume = integrate(grid, u.cwiseProduct(curvature)) / 2.0;
    sol.total_measure = integrate(grid, ev.residual + f.values);
    Eigen::MatrixXd pts(L, 2);
    for (Eigen::Index j = 0; j < L; ++j)
      pts.row(j) = u[j] * grid->nodes.row(j) + ev.d1[j] * grid->tangent1.row(j);
    double best = 0.0;
    for (Eigen::Index i = 0; i < L; ++i)
      for (Eigen::Index j = i + 1; j < L; ++j)
        best = std::max(best, (pts.row(i) - pts.row(j)).squaredNorm());
    sol.diameter_bound = std::sqrt(best);
  }
  return sol;
}

ProbeReport uniqueness_probe(const ProblemSpec& spec, const GridPtr& grid,
                             const SolverConfig& config, int num_starts, std::uint64_t seed,
                             double perturb_scale) {
  if (num_starts <= 0) throw InvalidInput("uniqueness_probe: need at least one start");
  ScalarField f = spec.data_field(grid);
  if (config.even_mode) {
    // data must be even in even mode
    SphereInterpolant fi(f);
    for (Eigen::Index i = 0; i < grid->node_count(); i += 11) {
      Vec v = grid->node(i);
      if (std::abs(fi(v) - fi(Vec(-v))) > 1e-10 * std::max(1.0, f.max()))
        throw InvalidInput("uniqueness_probe: even mode requires even data f");
    }
  }
  double base = default_start_value(f, spec.p, spec.q, config.initial_guess);

  const int max_degree = 4;
  ProbeReport report;
  report.num_starts = num_starts;
  report.starts.resize(static_cast<size_t>(num_starts));
  std::vector<Eigen::VectorXd> solutions(static_cast<size_t>(num_starts));
  std::vector<char> ok(static_cast<size_t>(num_starts), 0);

  parallel_for(num_starts, [&](std::ptrdiff_t s) {
    // random band-limited perturbation, even degrees only in even mode
    std::uint64_t sseed = sub_seed(seed, static_cast<std::uint64_t>(s));
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(harmonic_count(grid->dim, max_degree));
    std::uint64_t counter = 0;
    for (int k = 1; k <= max_degree; ++k) {
      if (config.even_mode && k % 2 == 1) continue;
      if (grid->dim == 2) {
        for (int m = 0; m <= 1; ++m)
          coeffs[harmonic_index(2, k, m)] = standard_normal(sseed, counter++);
      } else {
        for (int m = -k; m <= k; ++m)
          coeffs[harmonic_index(3, k, m)] = standard_normal(sseed, counter++);
      }
    }
    Eigen::VectorXd pert = SphereInterpolant(grid, coeffs).to_field(grid).values;
    double sup = pert.cwiseAbs().maxCoeff();
    if (sup > 0.0) pert *= perturb_scale / sup;
    SolverConfig cfg = config;
    cfg.initial_guess = (base * (Eigen::VectorXd::Ones(grid->node_count()) + pert)).eval();
    Solution sol = solve(spec, grid, cfg);
    report.starts[static_cast<size_t>(s)] = {sol.converged, sol.iterations, sol.residual_sup};
    if (sol.converged) {
      solutions[static_cast<size_t>(s)] = sol.u.values;
      ok[static_cast<size_t>(s)] = 1;
    }
  });

  for (int s = 0; s < num_starts; ++s) report.converged_count += ok[static_cast<size_t>(s)] ? 1 : 0;
  for (int a = 0; a < num_starts; ++a)
    for (int b = a + 1; b < num_starts; ++b)
      if (ok[static_cast<size_t>(a)] && ok[static_cast<size_t>(b)])
        report.max_spread =
            std::max(report.max_spread, (solutions[static_cast<size_t>(a)] -
                                         solutions[static_cast<size_t>(b)])
                                            .cwiseAbs()
                                            .maxCoeff());
  return report;
}

}  // namespace dualmink
