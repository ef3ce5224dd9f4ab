#pragma once

#include <functional>
#include <memory>

#include "dualmink/types.hpp"

namespace dualmink {

/// Quadrature grid on S^{n-1}, n in {2,3}.
///
/// n = 3: L Gauss-Legendre latitudes x 2L uniform longitudes, latitude-major
/// ordering with ascending cos(theta).  n = 2: L uniform angles 2*pi*j/L.
/// The node ordering is deterministic for fixed (n, L), so field files keyed
/// by node index are portable.
struct SphericalGrid {
  int dim = 0;         // ambient dimension n
  int resolution = 0;  // L
  Eigen::MatrixXd nodes;     // N x n, unit rows
  Eigen::VectorXd weights;   // N, positive, sums to the sphere area
  Eigen::MatrixXd tangent1;  // N x n, first tangent frame vector per node
  Eigen::MatrixXd tangent2;  // N x n, second frame vector (n = 3 only)

  Eigen::Index node_count() const { return nodes.rows(); }
  double area() const;
  Vec node(Eigen::Index i) const { return nodes.row(i).transpose(); }
};

using GridPtr = std::shared_ptr<const SphericalGrid>;

GridPtr build_grid(int dim, int L);

/// Default resolutions used by the CLI and the verification suites.
inline int default_resolution(int dim) { return dim == 2 ? 512 : 32; }

/// Real scalar values sampled at the grid nodes.
struct ScalarField {
  GridPtr grid;
  Eigen::VectorXd values;

  ScalarField() = default;
  ScalarField(GridPtr g, Eigen::VectorXd v);
  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
  double sup_norm() const { return values.cwiseAbs().maxCoeff(); }
};

ScalarField constant_field(const GridPtr& grid, double c);

/// Per-node tangent vector (row i is orthogonal to node i).
struct TangentField {
  GridPtr grid;
  Eigen::MatrixXd vectors;  // N x n

  Eigen::VectorXd squared_norms() const { return vectors.rowwise().squaredNorm(); }
};

/// Per-node symmetric matrix nabla^2 u + u I expressed in the node's tangent
/// frame.  For n = 3 the columns store (m11, m12, m22); for n = 2 just (m11).
struct FrameHessianField {
  GridPtr grid;
  Eigen::MatrixXd entries;

  Eigen::VectorXd determinant() const;
  Eigen::VectorXd trace() const;
  Eigen::VectorXd min_eigenvalue() const;
};

/// Smooth function on the sphere, evaluated at unit vectors.
using SphereFunction = std::function<double(const Vec&)>;

double integrate(const ScalarField& field);
double integrate(const GridPtr& grid, const Eigen::VectorXd& values);

// ---------------------------------------------------------------------------
// Spherical harmonics.
//
// Real orthonormal basis.  n = 3: index (k, m), |m| <= k, with m > 0 the
// cosine and m < 0 the sine branch; eigenvalue of -Laplacian is k(k+1).
// n = 2: (k, m) with m = 0 the cosine and m = 1 the sine branch, eigenvalue
// k^2.  Coefficient vectors are packed by harmonic_index().
// ---------------------------------------------------------------------------

int harmonic_count(int dim, int degree);
int harmonic_index(int dim, int k, int m);
int harmonic_degree_of(int dim, int index);
double laplace_eigenvalue(int dim, int k);

/// Evaluates all basis harmonics through `degree` at unit vector x.
void evaluate_harmonics(int dim, int degree, const Vec& x, Eigen::VectorXd& out);

/// Single orthonormal harmonic sampled on the grid; integral of Y^2 is 1.
ScalarField spherical_harmonic_field(const GridPtr& grid, int k, int m);

/// Truncated spherical-harmonic synthesis of a grid field (trigonometric
/// interpolation for n = 2).  Coefficients below 1e-14 of the largest are
/// dropped, so round-tripping a constant stays exactly constant.
class SphereInterpolant {
 public:
  SphereInterpolant() = default;
  explicit SphereInterpolant(const ScalarField& field, int degree = -1);
  SphereInterpolant(GridPtr grid, Eigen::VectorXd coefficients);

  double operator()(const Vec& x) const;
  const Eigen::VectorXd& coefficients() const { return coeffs_; }
  int degree() const { return degree_; }
  int dim() const { return dim_; }
  ScalarField to_field(const GridPtr& grid) const;
  SphereFunction as_function() const;

 private:
  GridPtr grid_;
  Eigen::VectorXd coeffs_;
  int dim_ = 0;
  int degree_ = -1;
};

/// Harmonic analysis of a grid field through `degree` (default: the grid's
/// interpolation degree, L-2 for n = 3 and L/2-1 for n = 2).
Eigen::VectorXd analyze(const ScalarField& field, int degree = -1);
int interpolation_degree(const SphericalGrid& grid);

// ---------------------------------------------------------------------------
// Differentiation.
//
// Fourth-order central differences of the 1-homogeneous extension
// H(x) = |x| u(x/|x|) along great circles through each node; on the circle
// |x| = 1 so H = u and the stencil reduces to off-grid evaluations of u.
// Grid fields are evaluated through their harmonic interpolant; bodies with
// a closed-form support function pass their own evaluator.
// ---------------------------------------------------------------------------

inline constexpr double kDefaultFdStep = 3e-3;

struct PointDerivatives {
  double value = 0.0;       // u(v)
  Vec gradient;             // spherical gradient, tangent at v
  Mat frame_hessian;        // (n-1)x(n-1) matrix of nabla^2 u + u I
};

/// Derivatives of f at unit vector v with tangent frame columns of `frame`.
PointDerivatives sphere_derivatives_at(const SphereFunction& f, const Vec& v,
                                       const Mat& frame, double fd_step = kDefaultFdStep);

/// Field value plus first and second derivatives from a single pass.
struct SphereJet {
  ScalarField u;
  TangentField grad;
  FrameHessianField hess;
};

SphereJet sphere_jet(const GridPtr& grid, const SphereFunction& f, double fd_step = kDefaultFdStep);
SphereJet sphere_jet(const ScalarField& u, double fd_step = kDefaultFdStep);

TangentField gradient(const ScalarField& u, double fd_step = kDefaultFdStep);
FrameHessianField sphere_hessian(const ScalarField& u, double fd_step = kDefaultFdStep);
ScalarField laplacian(const ScalarField& u, double fd_step = kDefaultFdStep);

/// Throws InvalidInput unless the field belongs to the grid.
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where);

}  // namespace dualmink
