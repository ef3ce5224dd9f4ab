#include "dualmink/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dualmink/convex_hull.hpp"
#include "dualmink/parallel.hpp"

namespace dualmink {

namespace {

void require_unit(const Vec& v, const char* where) {
  if (std::abs(v.norm() - 1.0) > 1e-10) throw InvalidInput(std::string(where) + ": direction is not unit");
}

double polytope_scale(const Polytope& p) { return p.vertices.cwiseAbs().maxCoeff(); }

// Max pairwise distance between the rows of a point matrix.
double max_pair_distance(const Eigen::MatrixXd& pts) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (Eigen::Index j = i + 1; j < pts.rows(); ++j)
      best = std::max(best, (pts.row(i) - pts.row(j)).squaredNorm());
  return std::sqrt(best);
}

}  // namespace

Ellipsoid make_ellipsoid(Eigen::VectorXd axes, Eigen::MatrixXd rotation) {
  const int n = static_cast<int>(axes.size());
  if (n != 2 && n != 3) throw InvalidInput("make_ellipsoid: dimension must be 2 or 3");
  if (axes.minCoeff() <= 0.0) throw InvalidInput("make_ellipsoid: half axes must be positive");
  if (rotation.size() == 0) rotation = Eigen::MatrixXd::Identity(n, n);
  if (rotation.rows() != n || rotation.cols() != n ||
      (rotation.transpose() * rotation - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInput("make_ellipsoid: rotation is not orthogonal");
  // keep the half axes ascending, permuting principal directions to match
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return axes[a] < axes[b]; });
  Eigen::VectorXd sorted(n);
  Eigen::MatrixXd rot(n, n);
  for (int i = 0; i < n; ++i) {
    sorted[i] = axes[order[static_cast<size_t>(i)]];
    rot.col(i) = rotation.col(order[static_cast<size_t>(i)]);
  }
  return Ellipsoid{std::move(sorted), std::move(rot)};
}

Ellipsoid make_ball(int dim, double radius) {
  return make_ellipsoid(Eigen::VectorXd::Constant(dim, radius));
}

Polytope make_polytope(const Eigen::MatrixXd& vertices) {
  const int n = static_cast<int>(vertices.cols());
  if (n != 2 && n != 3) throw InvalidInput("make_polytope: dimension must be 2 or 3");
  Polytope p;
  p.vertices = vertices;
  double scale = polytope_scale(p);

  if (n == 2) {
    std::vector<int> hull = convex_hull_2d(vertices);
    for (size_t i = 0; i < hull.size(); ++i) {
      int a = hull[i], b = hull[(i + 1) % hull.size()];
      Vec edge = (vertices.row(b) - vertices.row(a)).transpose();
      double len = edge.norm();
      Vec normal(2);
      normal << edge[1] / len, -edge[0] / len;
      p.facets.push_back({normal, normal.dot(vertices.row(a)), len, {a, b}});
    }
  } else {
    std::vector<HullTriangle> tris = convex_hull_3d(vertices);
    std::vector<char> used(tris.size(), 0);
    for (size_t i = 0; i < tris.size(); ++i) {
      if (used[i]) continue;
      Polytope::Facet f;
      f.normal = tris[i].normal;
      f.offset = tris[i].offset;
      f.area = 0.0;
      std::vector<int> ids;
      for (size_t j = i; j < tris.size(); ++j) {
        if (used[j]) continue;
        if ((tris[j].normal - tris[i].normal).norm() > 1e-10 ||
            std::abs(tris[j].offset - tris[i].offset) > 1e-10 * std::max(scale, 1.0))
          continue;
        used[j] = 1;
        Eigen::Vector3d pa = vertices.row(tris[j].a), pb = vertices.row(tris[j].b),
                        pc = vertices.row(tris[j].c);
        f.area += 0.5 * (pb - pa).cross(pc - pa).norm();
        ids.push_back(tris[j].a);
        ids.push_back(tris[j].b);
        ids.push_back(tris[j].c);
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      f.vertex_ids = std::move(ids);
      p.facets.push_back(std::move(f));
    }
  }

  double diam = max_pair_distance(p.vertices);
  for (const auto& f : p.facets) {
    if (f.offset <= 1e-6 * diam)
      throw InvariantViolation("make_polytope: origin is not strictly interior");
    for (int id : f.vertex_ids)
      if (std::abs(f.normal.dot(p.vertices.row(id).transpose()) - f.offset) > 1e-10 * std::max(scale, 1.0))
        throw InvariantViolation("make_polytope: inconsistent facet data");
  }
  return p;
}

Polytope make_box(const Vec& halfwidths) {
  const int n = static_cast<int>(halfwidths.size());
  if (halfwidths.minCoeff() <= 0.0) throw InvalidInput("make_box: halfwidths must be positive");
  int count = 1 << n;
  Eigen::MatrixXd verts(count, n);
  for (int mask = 0; mask < count; ++mask)
    for (int j = 0; j < n; ++j)
      verts(mask, j) = (mask >> j & 1) ? halfwidths[j] : -halfwidths[j];
  return make_polytope(verts);
}

int body_dim(const ConvexBody& body) {
  return std::visit([](const auto& b) { return b.dim(); }, body);
}

double support(const ConvexBody& body, const Vec& v) {
  require_unit(v, "support");
  if (const auto* e = std::get_if<Ellipsoid>(&body)) {
    Vec w = e->rotation.transpose() * v;
    return (e->axes.array() * w.array()).matrix().norm();
  }
  if (const auto* p = std::get_if<Polytope>(&body)) return (p->vertices * v).maxCoeff();
  const auto& s = std::get<SupportBody>(body);
  return s.evaluator(v);
}

double radial(const ConvexBody& body, const Vec& v) {
  require_unit(v, "radial");
  if (const auto* e = std::get_if<Ellipsoid>(&body)) {
    Vec w = e->rotation.transpose() * v;
    return 1.0 / (w.array() / e->axes.array()).matrix().norm();
  }
  if (const auto* p = std::get_if<Polytope>(&body)) {
    double t = std::numeric_limits<double>::infinity();
    for (const auto& f : p->facets) {
      double d = f.normal.dot(v);
      if (d > 1e-14) t = std::min(t, f.offset / d);
    }
    if (!std::isfinite(t)) throw InvariantViolation("radial: ray never exits the polytope");
    return t;
  }
  // limit of the bisection on node-wise membership: t v is in K iff
  // <t v, w> <= h(w) at every grid node w
  const auto& s = std::get<SupportBody>(body);
  const auto& g = *s.field.grid;
  double t = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < g.node_count(); ++i) {
    double d = g.nodes.row(i).dot(v);
    if (d > 1e-12) t = std::min(t, s.field.values[i] / d);
  }
  return t;
}

Vec boundary_point(const ConvexBody& body, const Vec& v) {
  require_unit(v, "boundary_point");
  if (const auto* e = std::get_if<Ellipsoid>(&body)) {
    Vec w = e->rotation.transpose() * v;
    Vec x = e->rotation * (e->axes.array().square() * w.array()).matrix();
    return x / support(body, v);
  }
  if (const auto* p = std::get_if<Polytope>(&body)) {
    Eigen::VectorXd dots = p->vertices * v;
    Eigen::Index argmax;
    double h = dots.maxCoeff(&argmax);
    double scale = std::max(polytope_scale(*p), 1.0);
    for (Eigen::Index i = 0; i < dots.size(); ++i)
      if (i != argmax && h - dots[i] <= 1e-12 * scale)
        throw InvariantViolation("boundary_point: direction lies on a normal-fan wall");
    return p->vertices.row(argmax).transpose();
  }
  const auto& s = std::get<SupportBody>(body);
  const int n = s.dim();
  Mat frame(n, n - 1);
  // any orthonormal tangent frame at v
  if (n == 2) {
    frame.col(0) = Vec(2);
    frame.col(0) << -v[1], v[0];
  } else {
    Eigen::Vector3d vv(v[0], v[1], v[2]);
    Eigen::Vector3d ref = std::abs(vv[2]) < 0.9 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
    Eigen::Vector3d t1 = ref.cross(vv).normalized();
    Eigen::Vector3d t2 = vv.cross(t1);
    frame.col(0) = t1;
    frame.col(1) = t2;
  }
  PointDerivatives d = sphere_derivatives_at(s.evaluator, v, frame);
  return d.gradient + d.value * v;
}

double volume(const ConvexBody& body) {
  if (const auto* e = std::get_if<Ellipsoid>(&body))
    return unit_ball_volume(e->dim()) * e->axes.prod();
  if (const auto* p = std::get_if<Polytope>(&body)) {
    double n = p->dim();
    double vol = 0.0;
    for (const auto& f : p->facets) vol += f.offset * f.area / n;
    return vol;
  }
  const auto& s = std::get<SupportBody>(body);
  SphereJet jet = sphere_jet(s.field.grid, s.evaluator);
  Eigen::VectorXd cone = jet.u.values.cwiseProduct(jet.hess.determinant()) / s.dim();
  return integrate(s.field.grid, cone);
}

double diameter(const ConvexBody& body) {
  if (const auto* e = std::get_if<Ellipsoid>(&body)) return 2.0 * e->axes.maxCoeff();
  if (const auto* p = std::get_if<Polytope>(&body)) return max_pair_distance(p->vertices);
  // grid lower bound from the boundary points Dh at the nodes
  const auto& s = std::get<SupportBody>(body);
  SphereJet jet = sphere_jet(s.field.grid, s.evaluator);
  Eigen::MatrixXd pts = jet.grad.vectors;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    pts.row(i) += jet.u.values[i] * s.field.grid->nodes.row(i);
  return max_pair_distance(pts);
}

Vec centroid(const ConvexBody& body) {
  const int n = body_dim(body);
  if (std::holds_alternative<Ellipsoid>(body)) return Vec::Zero(n);
  if (const auto* p = std::get_if<Polytope>(&body)) {
    // fan decomposition from the origin
    Vec acc = Vec::Zero(n);
    double vol = 0.0;
    if (n == 2) {
      std::vector<int> hull = convex_hull_2d(p->vertices);
      for (size_t i = 0; i < hull.size(); ++i) {
        Vec a = p->vertices.row(hull[i]).transpose();
        Vec b = p->vertices.row(hull[(i + 1) % hull.size()]).transpose();
        double w = 0.5 * (a[0] * b[1] - a[1] * b[0]);
        acc += w * (a + b) / 3.0;
        vol += w;
      }
    } else {
      std::vector<HullTriangle> tris = convex_hull_3d(p->vertices);
      for (const auto& t : tris) {
        Eigen::Vector3d a = p->vertices.row(t.a), b = p->vertices.row(t.b), c = p->vertices.row(t.c);
        double w = a.cross(b).dot(c) / 6.0;
        acc += Vec(w * (a + b + c) / 4.0);
        vol += w;
      }
    }
    return acc / vol;
  }
  // radial moments of the support body
  const auto& s = std::get<SupportBody>(body);
  const auto& g = *s.field.grid;
  Vec acc = Vec::Zero(n);
  double vol = 0.0;
  for (Eigen::Index i = 0; i < g.node_count(); ++i) {
    double rho = radial(body, g.node(i));
    double rn = std::pow(rho, n);
    vol += g.weights[i] * rn / n;
    acc += g.weights[i] * std::pow(rho, n + 1) / (n + 1) * g.node(i);
  }
  return acc / vol;
}

SphereFunction support_function(const ConvexBody& body, double shift) {
  if (const auto* e = std::get_if<Ellipsoid>(&body)) {
    Eigen::MatrixXd scaled = (e->rotation * e->axes.asDiagonal()).transpose();
    return [scaled, shift](const Vec& v) { return (scaled * v).norm() + shift; };
  }
  if (const auto* p = std::get_if<Polytope>(&body)) {
    Eigen::MatrixXd verts = p->vertices;
    return [verts, shift](const Vec& v) { return (verts * v).maxCoeff() + shift; };
  }
  SphereFunction inner = std::get<SupportBody>(body).evaluator;
  if (shift == 0.0) return inner;
  return [inner, shift](const Vec& v) { return inner(v) + shift; };
}

bool is_origin_symmetric(const ConvexBody& body, double tol) {
  if (std::holds_alternative<Ellipsoid>(body)) return true;
  if (const auto* p = std::get_if<Polytope>(&body)) {
    double scale = std::max(polytope_scale(*p), 1.0);
    for (Eigen::Index i = 0; i < p->vertices.rows(); ++i) {
      bool found = false;
      for (Eigen::Index j = 0; j < p->vertices.rows() && !found; ++j)
        found = (p->vertices.row(i) + p->vertices.row(j)).norm() <= tol * scale;
      if (!found) return false;
    }
    return true;
  }
  const auto& s = std::get<SupportBody>(body);
  const auto& g = *s.field.grid;
  double scale = std::max(1.0, s.field.max());
  for (Eigen::Index i = 0; i < g.node_count(); i += 7) {
    Vec v = g.node(i);
    if (std::abs(s.evaluator(v) - s.evaluator(Vec(-v))) > tol * scale) return false;
  }
  return true;
}

Eigen::MatrixXd min_enclosing_centered_ellipsoid(const Eigen::MatrixXd& points, double tol,
                                                 int max_iter) {
  const int n = static_cast<int>(points.cols());
  const Eigen::Index m = points.rows();
  if (m < n) throw InvalidInput("min_enclosing_centered_ellipsoid: too few points");

  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  Eigen::MatrixXd Lambda(n, n);
  Eigen::VectorXd kappa(m);
  auto refresh = [&]() {
    Lambda.setZero();
    for (Eigen::Index i = 0; i < m; ++i)
      if (lambda[i] > 0.0) Lambda += lambda[i] * points.row(i).transpose() * points.row(i);
    Eigen::MatrixXd inv = Lambda.inverse();
    for (Eigen::Index i = 0; i < m; ++i) kappa[i] = points.row(i) * inv * points.row(i).transpose();
  };
  refresh();

  for (int it = 0; it < max_iter; ++it) {
    Eigen::Index jmax = 0, jmin = -1;
    double kmax = -1.0, kmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (kappa[i] > kmax) { kmax = kappa[i]; jmax = i; }
      if (lambda[i] > 0.0 && kappa[i] < kmin) { kmin = kappa[i]; jmin = i; }
    }
    double add_gap = kmax / n - 1.0;
    double drop_gap = jmin >= 0 ? 1.0 - kmin / n : 0.0;
    if (add_gap <= tol && drop_gap <= tol) break;

    Eigen::Index j;
    double beta;
    if (add_gap >= drop_gap) {
      j = jmax;
      beta = (kappa[j] - n) / (n * (kappa[j] - 1.0));
    } else {
      j = jmin;
      beta = std::max((kappa[j] - n) / (n * (kappa[j] - 1.0)), -lambda[j] / (1.0 - lambda[j]));
    }
    lambda *= (1.0 - beta);
    lambda[j] += beta;
    if (lambda[j] < 1e-17) lambda[j] = 0.0;
    refresh();
  }
  return Lambda.inverse() / n;
}

Ellipsoid inscribed_john_ellipsoid(const ConvexBody& body, double tol, int max_iter) {
  if (!is_origin_symmetric(body))
    throw InvalidInput("inscribed_john_ellipsoid: body is not origin-symmetric");
  const int n = body_dim(body);
  if (std::holds_alternative<Ellipsoid>(body)) return std::get<Ellipsoid>(body);

  // boundary of the polar body: facet duals for polytopes, sampled node
  // directions scaled by 1/h otherwise
  Eigen::MatrixXd polar;
  if (const auto* p = std::get_if<Polytope>(&body)) {
    polar.resize(static_cast<Eigen::Index>(p->facets.size()), n);
    for (size_t f = 0; f < p->facets.size(); ++f)
      polar.row(static_cast<Eigen::Index>(f)) = (p->facets[f].normal / p->facets[f].offset).transpose();
  } else {
    const auto& s = std::get<SupportBody>(body);
    const auto& g = *s.field.grid;
    polar.resize(g.node_count(), n);
    for (Eigen::Index i = 0; i < g.node_count(); ++i)
      polar.row(i) = g.nodes.row(i) / s.field.values[i];
  }

  // John ellipsoid = polar of the Loewner ellipsoid {y : y'My <= 1} of the
  // polar body, so its half axes are sqrt of the eigenvalues of M
  Eigen::MatrixXd M = min_enclosing_centered_ellipsoid(polar, tol, max_iter);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  Eigen::VectorXd axes = eig.eigenvalues().cwiseSqrt();
  return make_ellipsoid(axes, eig.eigenvectors());
}

SupportBody support_body_from_values(const GridPtr& grid, Eigen::VectorXd values) {
  ScalarField field(grid, std::move(values));
  if (field.min() <= 0.0) throw InvariantViolation("support body: field must be positive");
  SphereInterpolant interp(field);
  SupportBody s{field, interp.as_function(), 0.0};
  SphereJet jet = sphere_jet(grid, s.evaluator);
  Eigen::VectorXd margins = jet.hess.min_eigenvalue();
  Eigen::Index worst;
  s.convexity_margin = margins.minCoeff(&worst);
  if (s.convexity_margin < -1e-8)
    throw InvariantViolation("support body: convexity certificate violated at node " +
                             std::to_string(worst) + " (margin " +
                             std::to_string(s.convexity_margin) + ")");
  if (field.min() <= 2e-6 * field.max())
    throw InvariantViolation("support body: origin is not strictly interior");
  return s;
}

SupportBody to_support_field(const ConvexBody& body, const GridPtr& grid,
                             const SupportFieldOptions& opts) {
  if (!grid) throw InvalidInput("to_support_field: null grid");
  if (body_dim(body) != grid->dim) throw InvalidInput("to_support_field: dimension mismatch");
  const bool is_polytope = std::holds_alternative<Polytope>(body);
  if (is_polytope && opts.mollify_radius <= 0.0)
    throw InvalidInput("to_support_field: polytopes need a positive mollification radius");

  SphereFunction h = support_function(body, opts.mollify_radius);
  Eigen::VectorXd values(grid->node_count());
  for (Eigen::Index i = 0; i < grid->node_count(); ++i) values[i] = h(grid->node(i));

  if (opts.taper_angle > 0.0) {
    // spectral rotation-average: damp degree k by exp(-lambda_k tau); an
    // average of rotated support functions is again a support function
    ScalarField raw(grid, values);
    Eigen::VectorXd coeffs = analyze(raw);
    double tau = 0.5 * opts.taper_angle * opts.taper_angle;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
      int k = harmonic_degree_of(grid->dim, static_cast<int>(j));
      coeffs[j] *= std::exp(-laplace_eigenvalue(grid->dim, k) * tau);
    }
    SphereInterpolant smooth(grid, std::move(coeffs));
    SupportBody s{smooth.to_field(grid), smooth.as_function(), 0.0};
    SphereJet jet = sphere_jet(grid, s.evaluator, opts.fd_step);
    s.convexity_margin = jet.hess.min_eigenvalue().minCoeff();
    if (s.convexity_margin < -1e-8)
      throw InvariantViolation("to_support_field: tapered field failed the convexity certificate");
    return s;
  }

  ScalarField field(grid, std::move(values));
  if (field.min() <= 0.0) throw InvariantViolation("to_support_field: support is not positive");

  SupportBody s{field, h, 0.0};
  if (is_polytope) {
    // K + rB rolls a ball of radius r along the boundary, so every curvature
    // eigenvalue is at least r; finite differences across the surviving
    // normal-fan creases would report junk instead.
    s.convexity_margin = opts.mollify_radius;
    return s;
  }
  SphereJet jet = sphere_jet(grid, s.evaluator, opts.fd_step);
  Eigen::VectorXd margins = jet.hess.min_eigenvalue();
  Eigen::Index worst;
  s.convexity_margin = margins.minCoeff(&worst);
  if (s.convexity_margin < -1e-8)
    throw InvariantViolation("to_support_field: convexity certificate violated at node " +
                             std::to_string(worst) + " (margin " +
                             std::to_string(s.convexity_margin) + ")");
  return s;
}

}  // namespace dualmink
