#pragma once

#include "gws/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gws {

struct SurfacePoint {
  Vec3 position = Vec3::Zero();
  Vec3 inward_normal = Vec3::UnitZ();  // -(outward pseudo-normal)
  int triangle = -1;
  Vec3 barycentric = Vec3::Zero();
  double distance = 0.0;  // unsigned distance from the query point
};

/// Immutable triangle mesh with a BVH for nearest-point queries. Degenerate
/// triangles are dropped at construction. Signed distance needs a manifold,
/// consistently wound mesh; otherwise the unsigned fallback is used and
/// signed_queries_ok() reports false.
class TriMesh {
 public:
  TriMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

  static TriMesh load_obj(const std::string& path);
  void save_obj(const std::string& path) const;

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int dropped_degenerate() const { return dropped_; }

  Vec3 bounds_min() const { return bmin_; }
  Vec3 bounds_max() const { return bmax_; }
  double bounding_radius() const { return 0.5 * (bmax_ - bmin_).norm(); }
  double area() const { return total_area_; }
  bool signed_queries_ok() const { return manifold_; }
  Vec3 face_normal(int tri) const { return face_normals_[static_cast<std::size_t>(tri)]; }

  /// Globally nearest surface point (BVH-accelerated; ties go to the lowest
  /// triangle id). Edge/vertex hits use angle-weighted pseudo-normals.
  SurfacePoint nearest_point(const Vec3& x) const;

  /// Negative inside, positive outside. Falls back to the unsigned distance
  /// when the mesh is not manifold.
  double signed_distance(const Vec3& x) const;

  /// Area-weighted uniform surface samples; sample k is a pure function of
  /// (seed, k).
  std::vector<SurfacePoint> sample_surface(int n, std::uint64_t seed) const;

 private:
  struct BvhNode {
    Vec3 bmin, bmax;
    int left = -1, right = -1;  // children, or leaf range below
    int first = 0, count = 0;
  };

  void build_bvh();
  int build_node(int first, int count);
  void query(int node, const Vec3& x, SurfacePoint& best, double& bestD2) const;
  Vec3 pseudo_normal(const SurfacePoint& sp) const;

  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Vec3> face_normals_;
  std::vector<Vec3> vertex_normals_;  // angle-weighted
  std::vector<std::array<Vec3, 3>> edge_normals_;  // per tri, edge (i, i+1)
  std::vector<double> tri_areas_;
  std::vector<double> area_cdf_;
  double total_area_ = 0.0;
  bool manifold_ = true;
  int dropped_ = 0;
  Vec3 bmin_ = Vec3::Zero(), bmax_ = Vec3::Zero();
  std::vector<BvhNode> nodes_;
  std::vector<int> tri_order_;  // triangle ids referenced by leaves
};

TriMesh make_icosphere(double radius, int subdivisions);
TriMesh make_box(const Vec3& extents);
TriMesh make_cylinder(double radius, double height, int segments);
TriMesh make_torus(double major_radius, double minor_radius, int major_segments,
                   int minor_segments);

/// Closest point on a single triangle (used by the BVH and the exhaustive
/// test oracle). Returns the point and barycentric coordinates.
void closest_point_on_triangle(const Vec3& x, const Vec3& a, const Vec3& b,
                               const Vec3& c, Vec3& point, Vec3& bary);

}  // namespace gws
