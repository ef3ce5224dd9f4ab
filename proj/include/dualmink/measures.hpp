#pragma once

#include <cstdint>

#include "dualmink/convex_body.hpp"
#include "dualmink/sphere_grid.hpp"

namespace dualmink {

// Surface area, cone volume, and L_p q-th dual curvature measures.  Smooth
// bodies carry densities on a grid; polytopes carry exact atoms; a Monte
// Carlo radial-formula estimator serves as an independent oracle.

struct AtomicMeasure {
  Eigen::MatrixXd directions;  // one unit row per atom
  Eigen::VectorXd masses;      // positive
};

struct DensityMeasure {
  ScalarField density;  // non-negative nodewise
};

double total(const DensityMeasure& m);
double total(const AtomicMeasure& m);

/// Surface area measure density det(nabla^2 u + u I).  Values in [-1e-8, 0)
/// are clamped to zero; anything more negative aborts as non-convex.
DensityMeasure sk_density(const ScalarField& u, double fd_step = kDefaultFdStep);
DensityMeasure sk_density(const SupportBody& body, double fd_step = kDefaultFdStep);

/// Cone volume density (1/n) u det(nabla^2 u + u I); total mass equals |K|.
DensityMeasure cone_volume_density(const ScalarField& u, double fd_step = kDefaultFdStep);
DensityMeasure cone_volume_density(const SupportBody& body, double fd_step = kDefaultFdStep);

/// Density of the L_p q-th dual curvature measure,
///   (|grad u|^2 + u^2)^{(q-n)/2} u^{1-p} det(nabla^2 u + u I).
DensityMeasure lp_dual_density(const ScalarField& u, double p, double q,
                               double fd_step = kDefaultFdStep);
DensityMeasure lp_dual_density(const SupportBody& body, double p, double q,
                               double fd_step = kDefaultFdStep);

/// Same density from a precomputed jet (u, gradient, frame Hessian).
Eigen::VectorXd lp_dual_density_values(const SphereJet& jet, double p, double q);

/// Cone volume measure of a polytope: one atom (1/n) h * area per facet.
AtomicMeasure polytope_cone_volume(const Polytope& p);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Monte Carlo total of the L_p q-th dual curvature measure through the
/// radial form  integral of h(nu(rho(v) v))^{-p} rho(v)^q over directions v.
/// Deterministic for a fixed seed, for any worker count.
McEstimate radial_total_mc(const ConvexBody& body, double p, double q,
                           std::int64_t samples, std::uint64_t seed);

}  // namespace dualmink
