#pragma once

#include "graspeq/grasp_model.hpp"

#include <vector>

namespace graspeq {

/// Supporting plane normal . x <= offset with the hull vertices on it.
struct HullFacet {
  Vec3 normal;
  double offset = 0.0;
  std::vector<std::size_t> vertices;
};

/// Convex hull of a small 3-D point set. Lower-dimensional inputs are kept
/// (dimension 0..2) with their extreme points as vertices and no facets.
struct ConvexHull3 {
  int dimension = -1;
  std::vector<Vec3> vertices;
  std::vector<HullFacet> facets;

  bool contains(const Vec3& p, double eps = 1e-9) const;
};

/// Exhaustive facet search over point triples; intended for tens of points.
ConvexHull3 convex_hull(const std::vector<Vec3>& points, double eps = 1e-12);

/// Counter-clockwise hull of planar points (monotone chain), collinear points dropped.
std::vector<Vec2> convex_hull_2d(std::vector<Vec2> points, double eps = 1e-12);

}  // namespace graspeq
