#include "dualmink/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace dualmink {

namespace {

HullTriangle make_triangle(const Eigen::MatrixXd& pts, int a, int b, int c,
                           const Eigen::Vector3d& interior) {
  Eigen::Vector3d pa = pts.row(a), pb = pts.row(b), pc = pts.row(c);
  Eigen::Vector3d n = (pb - pa).cross(pc - pa);
  double len = n.norm();
  if (len == 0.0) throw InvariantViolation("convex_hull_3d: degenerate face");
  n /= len;
  if (n.dot(pa - interior) < 0.0) {
    std::swap(b, c);
    n = -n;
  }
  return HullTriangle{a, b, c, n, n.dot(pts.row(a))};
}

}  // namespace

std::vector<HullTriangle> convex_hull_3d(const Eigen::MatrixXd& points) {
  const int m = static_cast<int>(points.rows());
  if (points.cols() != 3 || m < 4) throw InvalidInput("convex_hull_3d: need at least 4 points in R^3");
  double scale = points.cwiseAbs().maxCoeff();
  double eps = 1e-12 * std::max(scale, 1.0);

  // seed tetrahedron: spread points found greedily
  int i0 = 0;
  for (int i = 1; i < m; ++i)
    if (points(i, 0) < points(i0, 0)) i0 = i;
  int i1 = -1;
  double best = eps;
  for (int i = 0; i < m; ++i) {
    double d = (points.row(i) - points.row(i0)).norm();
    if (d > best) { best = d; i1 = i; }
  }
  if (i1 < 0) throw InvariantViolation("convex_hull_3d: points coincide");
  Eigen::Vector3d dir = (points.row(i1) - points.row(i0)).normalized();
  int i2 = -1;
  best = eps;
  for (int i = 0; i < m; ++i) {
    Eigen::Vector3d d = points.row(i).transpose() - points.row(i0).transpose();
    double dist = (d - d.dot(dir) * dir).norm();
    if (dist > best) { best = dist; i2 = i; }
  }
  if (i2 < 0) throw InvariantViolation("convex_hull_3d: points are collinear");
  Eigen::Vector3d n0 =
      dir.cross(Eigen::Vector3d(points.row(i2) - points.row(i0)).normalized()).normalized();
  int i3 = -1;
  best = eps;
  for (int i = 0; i < m; ++i) {
    double dist = std::abs(n0.dot(points.row(i).transpose() - points.row(i0).transpose()));
    if (dist > best) { best = dist; i3 = i; }
  }
  if (i3 < 0) throw InvariantViolation("convex_hull_3d: points are coplanar");

  Eigen::Vector3d interior =
      0.25 * (points.row(i0) + points.row(i1) + points.row(i2) + points.row(i3));
  std::vector<HullTriangle> faces;
  faces.push_back(make_triangle(points, i0, i1, i2, interior));
  faces.push_back(make_triangle(points, i0, i1, i3, interior));
  faces.push_back(make_triangle(points, i0, i2, i3, interior));
  faces.push_back(make_triangle(points, i1, i2, i3, interior));

  for (int p = 0; p < m; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    Eigen::Vector3d x = points.row(p);
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (faces[f].normal.dot(x) > faces[f].offset + eps) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;  // inside or on the current hull

    // horizon: edges used by exactly one visible face
    std::map<std::pair<int, int>, int> edge_use;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int e = 0; e < 3; ++e) {
        int u = vs[e], v = vs[(e + 1) % 3];
        edge_use[{std::min(u, v), std::max(u, v)}] += 1;
      }
    }
    std::vector<HullTriangle> next;
    next.reserve(faces.size() + 8);
    for (size_t f = 0; f < faces.size(); ++f)
      if (!visible[f]) next.push_back(faces[f]);
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int e = 0; e < 3; ++e) {
        int u = vs[e], v = vs[(e + 1) % 3];
        if (edge_use[{std::min(u, v), std::max(u, v)}] == 1)
          next.push_back(make_triangle(points, u, v, p, interior));
      }
    }
    faces = std::move(next);
  }
  return faces;
}

std::vector<int> convex_hull_2d(const Eigen::MatrixXd& points) {
  const int m = static_cast<int>(points.rows());
  if (points.cols() != 2 || m < 3) throw InvalidInput("convex_hull_2d: need at least 3 points in R^2");
  double scale = std::max(points.cwiseAbs().maxCoeff(), 1.0);
  double eps = 1e-12 * scale * scale;

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (points(a, 0) != points(b, 0)) return points(a, 0) < points(b, 0);
    return points(a, 1) < points(b, 1);
  });
  auto cross = [&](int o, int a, int b) {
    return (points(a, 0) - points(o, 0)) * (points(b, 1) - points(o, 1)) -
           (points(a, 1) - points(o, 1)) * (points(b, 0) - points(o, 0));
  };
  std::vector<int> hull;
  auto build_chain = [&](auto begin, auto end) {
    size_t start = hull.size();
    for (auto it = begin; it != end; ++it) {
      while (hull.size() >= start + 2 && cross(hull[hull.size() - 2], hull.back(), *it) <= eps)
        hull.pop_back();
      hull.push_back(*it);
    }
    hull.pop_back();  // endpoint repeats as the start of the other chain
  };
  build_chain(order.begin(), order.end());
  build_chain(order.rbegin(), order.rend());
  if (hull.size() < 3) throw InvariantViolation("convex_hull_2d: points are collinear");
  return hull;
}

}  // namespace dualmink
