#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dualmink/sphere_grid.hpp"
#include "dualmink/types.hpp"

namespace dualmink {

// Damped Newton solution of the dual Minkowski Monge-Ampere equation
//   (|grad u|^2 + u^2)^{(q-n)/2} u^{1-p} det(nabla^2 u + u I) = f
// near the isotropic solution u = 1, plus a spectral solver for the
// linearization at u = 1 and an independent periodic-ODE path for n = 2.

struct HarmonicTerm {
  int k = 0;
  int m = 0;  // n = 3: -k..k; n = 2: 0 = cos, 1 = sin
  double coefficient = 0.0;
};

struct ProblemSpec {
  int dim = 3;
  double p = 0.0;
  double q = 3.0;
  double f_constant = 1.0;
  std::vector<HarmonicTerm> f_harmonics;
  std::optional<Eigen::VectorXd> f_values;  // raw data, overrides the synthesis

  /// Data f sampled on the grid; throws if f is not positive at every node.
  ScalarField data_field(const GridPtr& grid) const;
};

struct SolverConfig {
  double tol_residual = 1e-10;   // sup-norm convergence threshold
  int max_iter = 100;
  double min_step = 0x1p-20;     // backtracking lower bound
  double fd_step = kDefaultFdStep;
  double fd_step_jacobian = 1e-2;
  double positivity_floor = 1e-8;
  int harmonic_degree = 16;      // basis degree of the fallback Jacobian
  bool even_mode = false;        // restrict to even fields
  std::optional<Eigen::VectorXd> initial_guess;
};

struct Solution {
  ScalarField u;
  double residual_sup = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  bool used_fd_jacobian = false;
  // diagnostics of the final iterate
  double min_u = 0.0;
  double convexity_margin = 0.0;
  double diameter_bound = 0.0;
  double volume = 0.0;
  double total_measure = 0.0;
};

/// Nodewise equation residual  lp_dual_density(u, p, q) - f.
ScalarField residual(const ScalarField& u, const ProblemSpec& spec,
                     double fd_step = kDefaultFdStep);

/// Solves (Laplace + (n - p)) phi = g in the harmonic basis of degree <=
/// harmonic_degree: the coefficient of Y_k is divided by n - p - lambda_k.
/// Throws ResonanceError when g carries a resonant mode (e.g. degree 1 at
/// p = 1, the boundary of the invertible range -1 < p < 1).
ScalarField linearized_solve_at_one(const ScalarField& g, const ProblemSpec& spec,
                                    int harmonic_degree = 16);

Solution solve(const ProblemSpec& spec, const GridPtr& grid, const SolverConfig& config = {});

/// n = 2 path: periodic finite differences in the angle with an exact banded
/// Jacobian; an implementation independent of the spectral solver.
Solution solve_curve(const ProblemSpec& spec, int L, const SolverConfig& config = {});

struct ProbeStart {
  bool converged = false;
  int iterations = 0;
  double residual_sup = 0.0;
};

struct ProbeReport {
  int num_starts = 0;
  int converged_count = 0;
  double max_spread = 0.0;  // max pairwise sup-distance of converged solutions
  std::vector<ProbeStart> starts;
};

/// Runs solve from num_starts perturbed initial iterates
/// u0 = base (1 + perturbation), with random band-limited perturbations of
/// sup-norm perturb_scale drawn from deterministic per-start sub-seeds.
ProbeReport uniqueness_probe(const ProblemSpec& spec, const GridPtr& grid,
                             const SolverConfig& config, int num_starts, std::uint64_t seed,
                             double perturb_scale);

}  // namespace dualmink
