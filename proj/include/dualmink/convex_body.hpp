#pragma once

#include <variant>
#include <vector>

#include "dualmink/sphere_grid.hpp"
#include "dualmink/types.hpp"

namespace dualmink {

// Convex bodies with the origin in the interior.  Three representations:
// centered ellipsoids (exact closed forms), polytopes (exact facet data),
// and smooth bodies carried by their support function on a grid.

struct Ellipsoid {
  Eigen::VectorXd axes;     // half axes, ascending
  Eigen::MatrixXd rotation; // columns are the principal directions

  int dim() const { return static_cast<int>(axes.size()); }
};

struct Polytope {
  struct Facet {
    Vec normal;      // unit outer normal
    double offset;   // h on the facet plane, > 0
    double area;     // (n-1)-measure of the facet
    std::vector<int> vertex_ids;
  };
  Eigen::MatrixXd vertices;  // V x n
  std::vector<Facet> facets; // derived by the constructor

  int dim() const { return static_cast<int>(vertices.cols()); }
};

struct SupportBody {
  ScalarField field;        // support function values at the grid nodes, > 0
  SphereFunction evaluator; // smooth off-grid evaluation (closed form when known)
  double convexity_margin = 0.0;  // min eigenvalue of nabla^2 u + u I over nodes

  int dim() const { return field.grid->dim; }
};

using ConvexBody = std::variant<Ellipsoid, Polytope, SupportBody>;

Ellipsoid make_ellipsoid(Eigen::VectorXd axes,
                         Eigen::MatrixXd rotation = Eigen::MatrixXd());
Ellipsoid make_ball(int dim, double radius);

/// Polytope from a vertex cloud; facets come from the convex hull and the
/// origin must be strictly interior.
Polytope make_polytope(const Eigen::MatrixXd& vertices);
Polytope make_box(const Vec& halfwidths);

int body_dim(const ConvexBody& body);

double support(const ConvexBody& body, const Vec& v);
double radial(const ConvexBody& body, const Vec& v);

/// The boundary point whose outer normal is v; requires h differentiable at v
/// (polytopes reject directions on a normal-fan wall).
Vec boundary_point(const ConvexBody& body, const Vec& v);

double volume(const ConvexBody& body);
double diameter(const ConvexBody& body);
Vec centroid(const ConvexBody& body);

/// Closed-form support function of the body as a 1-homogeneous evaluator
/// restricted to unit vectors (plus `shift` times the unit ball).
SphereFunction support_function(const ConvexBody& body, double shift = 0.0);

/// Maximal-volume centered inscribed ellipsoid of an o-symmetric body,
/// via the minimum-volume enclosing ellipsoid of the polar's vertex set
/// (Khachiyan-style iteration with away steps).  Satisfies E <= K <= sqrt(n) E.
Ellipsoid inscribed_john_ellipsoid(const ConvexBody& body,
                                   double tol = 1e-7, int max_iter = 400000);

/// Minimum-volume centered ellipsoid {x : x' M x <= 1} enclosing +-points.
Eigen::MatrixXd min_enclosing_centered_ellipsoid(const Eigen::MatrixXd& points,
                                                 double tol = 1e-7, int max_iter = 400000);

struct SupportFieldOptions {
  double mollify_radius = 0.0;  // added ball radius; required > 0 for polytopes
  double taper_angle = 0.0;     // optional spectral smoothing angle (see family scans)
  double fd_step = kDefaultFdStep;
};

/// Samples the body's support function on the grid (plus the mollification
/// ball for polytopes) and certifies convexity of the carried field.
SupportBody to_support_field(const ConvexBody& body, const GridPtr& grid,
                             const SupportFieldOptions& opts = {});

/// SupportBody directly from raw node values; the certificate is computed
/// from the interpolant and non-convex inputs are rejected.
SupportBody support_body_from_values(const GridPtr& grid, Eigen::VectorXd values);

bool is_origin_symmetric(const ConvexBody& body, double tol = 1e-10);

}  // namespace dualmink
