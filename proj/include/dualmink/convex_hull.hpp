#pragma once

#include <vector>

#include "dualmink/types.hpp"

namespace dualmink {

struct HullTriangle {
  int a, b, c;          // vertex indices, outward orientation
  Eigen::Vector3d normal;  // unit outer normal
  double offset;           // <x, normal> on the plane
};

/// Convex hull of a 3D point set (incremental insertion).  Points interior
/// to the hull are ignored; the input must span a full-dimensional body.
std::vector<HullTriangle> convex_hull_3d(const Eigen::MatrixXd& points);

/// Indices of the hull of a 2D point set in counter-clockwise order.
std::vector<int> convex_hull_2d(const Eigen::MatrixXd& points);

}  // namespace dualmink
