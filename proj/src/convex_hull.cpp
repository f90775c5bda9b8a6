#include "graspeq/convex_hull.hpp"

#include <algorithm>
#include <cmath>

namespace graspeq {

namespace {

double turn(const Vec2& o, const Vec2& a, const Vec2& b) { return cross2(a - o, b - o); }

std::vector<Vec3> unique_points(const std::vector<Vec3>& points, double eps) {
  std::vector<Vec3> out;
  for (const Vec3& p : points) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Vec3& q) { return (p - q).norm() <= eps; });
    if (!dup) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<Vec2> convex_hull_2d(std::vector<Vec2> points, double eps) {
  std::sort(points.begin(), points.end(),
            [](const Vec2& a, const Vec2& b) { return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y(); });
  points.erase(std::unique(points.begin(), points.end(), [&](const Vec2& a, const Vec2& b) { return (a - b).norm() <= eps; }),
               points.end());
  if (points.size() < 3) return points;
  std::vector<Vec2> hull(2 * points.size());
  std::size_t k = 0;
  for (const Vec2& p : points) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= eps) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2& p = points[i];
    while (k >= lower && turn(hull[k - 2], hull[k - 1], p) <= eps) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

bool ConvexHull3::contains(const Vec3& p, double eps) const {
  if (dimension == 3) {
    return std::all_of(facets.begin(), facets.end(), [&](const HullFacet& f) { return f.normal.dot(p) <= f.offset + eps; });
  }
  if (vertices.empty()) return false;
  // Lower-dimensional hulls: minimize distance to the vertex set's span is not
  // needed by callers; treat membership as lying on a vertex.
  return std::any_of(vertices.begin(), vertices.end(), [&](const Vec3& v) { return (v - p).norm() <= eps; });
}

ConvexHull3 convex_hull(const std::vector<Vec3>& input, double eps) {
  ConvexHull3 hull;
  const std::vector<Vec3> pts = unique_points(input, eps);
  if (pts.empty()) return hull;

  Eigen::MatrixXd centered(static_cast<Eigen::Index>(pts.size()), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) centered.row(static_cast<Eigen::Index>(i)) = (pts[i] - pts[0]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  int dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) dim += (s(i) > 1e-10 * scale) ? 1 : 0;
  hull.dimension = dim;

  if (dim == 0) {
    hull.vertices = {pts[0]};
    return hull;
  }
  if (dim == 1) {
    const Vec3 axis = svd.matrixV().col(0);
    auto by_axis = [&](const Vec3& a, const Vec3& b) { return axis.dot(a) < axis.dot(b); };
    hull.vertices = {*std::min_element(pts.begin(), pts.end(), by_axis), *std::max_element(pts.begin(), pts.end(), by_axis)};
    return hull;
  }
  if (dim == 2) {
    const Vec3 u = svd.matrixV().col(0);
    const Vec3 v = svd.matrixV().col(1);
    std::vector<Vec2> flat;
    for (const Vec3& p : pts) flat.emplace_back(u.dot(p - pts[0]), v.dot(p - pts[0]));
    for (const Vec2& q : convex_hull_2d(flat, eps)) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if ((flat[i] - q).norm() <= eps) {
          hull.vertices.push_back(pts[i]);
          break;
        }
      }
    }
    return hull;
  }

  const std::size_t n = pts.size();
  const double tol = 1e-10 * scale;
  std::vector<HullFacet> facets;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 normal = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if (normal.norm() <= tol) continue;
        normal.normalize();
        double offset = normal.dot(pts[i]);
        bool above = false, below = false;
        for (const Vec3& p : pts) {
          const double side = normal.dot(p) - offset;
          above = above || side > tol;
          below = below || side < -tol;
        }
        if (above && below) continue;
        if (above) {
          normal = -normal;
          offset = -offset;
        }
        const bool known = std::any_of(facets.begin(), facets.end(), [&](const HullFacet& f) {
          return (f.normal - normal).norm() < 1e-9 && std::abs(f.offset - offset) < 1e-9 * scale;
        });
        if (known) continue;
        HullFacet f{normal, offset, {}};
        for (std::size_t q = 0; q < n; ++q) {
          if (std::abs(normal.dot(pts[q]) - offset) <= tol) f.vertices.push_back(q);
        }
        facets.push_back(std::move(f));
      }
    }
  }

  // A point is a vertex when the facets through it pin it down (rank 3).
  std::vector<std::size_t> remap(n, static_cast<std::size_t>(-1));
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<Vec3> normals;
    for (const HullFacet& f : facets) {
      if (std::find(f.vertices.begin(), f.vertices.end(), q) != f.vertices.end()) normals.push_back(f.normal);
    }
    if (normals.size() < 3) continue;
    Eigen::MatrixXd N(static_cast<Eigen::Index>(normals.size()), 3);
    for (std::size_t r = 0; r < normals.size(); ++r) N.row(static_cast<Eigen::Index>(r)) = normals[r].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> nsvd(N);
    if (nsvd.singularValues()(2) > 1e-9) {
      remap[q] = hull.vertices.size();
      hull.vertices.push_back(pts[q]);
    }
  }
  for (HullFacet& f : facets) {
    std::vector<std::size_t> vs;
    for (std::size_t q : f.vertices) {
      if (remap[q] != static_cast<std::size_t>(-1)) vs.push_back(remap[q]);
    }
    f.vertices = std::move(vs);
  }
  hull.facets = std::move(facets);
  return hull;
}

}  // namespace graspeq
