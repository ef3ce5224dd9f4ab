#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dualmink/convex_body.hpp"
#include "dualmink/sphere_grid.hpp"

namespace dualmink {

// Numerical verification of the quantitative estimates behind the dual
// Minkowski uniqueness results, plus family scans tracking the C^0 bounds.

struct ReportRow {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // "<=", ">=", "<", ">"
  bool pass = false;
  double margin = 0.0;  // slack in the direction of the relation
};

struct Report {
  std::string name;
  std::vector<ReportRow> rows;
  std::map<std::string, std::string> metadata;

  bool all_pass() const;
  void add(const std::string& label, double lhs, const std::string& relation, double rhs);
};

/// Recomputes the pass flag of a row from its columns (reports self-audit).
bool row_holds(const ReportRow& row);

/// Max over h in [0, R] of |h^{1+delta} - h| / |delta| stays bounded as
/// delta -> 0.  Each grid-search maximum is checked against the closed-form
/// stationary value, and the largest/smallest ratio across deltas against 10.
Report check_power_diff(double R, const std::vector<double>& deltas, int h_samples);

/// Total-measure lower bound kappa_{n-1} eta^{max(n-p, q-p)} D^{q-p} for
/// bodies with centroid + eta D B^n inside K; requires p < 1, q > 0.
Report check_total_lower_bound(const ConvexBody& body, double p, double q, double eta,
                               const GridPtr& grid);

/// Finiteness of the polar singular integral of |<x, e_n>|^{-s} over the
/// sphere, s in (0,1): closed form, adaptive quadrature cross-check, and the
/// corrected upper bound (n - s) 2^n / (1 - s).
Report singular_axis_integral(int dim, double s);

/// Sandwich  c max h^gamma <= integral of h^gamma <= n kappa_n max h^gamma
/// with the explicit hemisphere constant c = integral of <v,w>^gamma.
Report hmax_sandwich(const ConvexBody& body, double gamma, const GridPtr& grid);

/// Negative support moments of a centered ellipsoid: full-sphere integral
/// proportional to a_n^{-s}, and equatorial band decay xi^{(1-s)/(2-s)}.
Report ellipsoid_moments(const Ellipsoid& E, double s, const std::vector<double>& xis);

enum class ScanFamily { Balls, Ellipsoids, Boxes, RandomSymmetricPolytopes };

ScanFamily parse_family(const std::string& name);

struct ScanOptions {
  double mollify_radius = 0.1;  // polytope members
  double taper_angle = 0.12;    // spectral smoothing for polytope densities
  std::uint64_t seed = 1;       // random polytope family
};

/// Per-member dual-curvature density range, diameter, volume, John half
/// axes, and the half-axis balance ratio r_n^{q-n-p} r_1 ... r_n, with trend
/// assertions (density decay along elongating families, ratio within
/// [1/10, 10] after rescaling the member so its density range straddles 1).
Report family_scan(ScanFamily family, const std::vector<double>& params, double p, double q,
                   const GridPtr& grid, const ScanOptions& opts = {});

/// Named verification suites for the CLI: claim41, lemma42, lemma43,
/// claim61, lemma62, measure_identities, prop51, or all.
std::vector<Report> verification_suite(const std::string& selector, std::uint64_t seed);

/// Adaptive Simpson quadrature (test oracle and singular-integral backend).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace dualmink
