#include "gws/mesh.hpp"

#include "gws/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gws {

namespace {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

double corner_angle(const Vec3& at, const Vec3& p1, const Vec3& p2) {
  Vec3 u = p1 - at;
  Vec3 v = p2 - at;
  const double nu = u.norm(), nv = v.norm();
  if (nu < 1e-300 || nv < 1e-300) return 0.0;
  return std::acos(std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0));
}

}  // namespace

void closest_point_on_triangle(const Vec3& x, const Vec3& a, const Vec3& b,
                               const Vec3& c, Vec3& point, Vec3& bary) {
  // Ericson, Real-Time Collision Detection, 5.1.5.
  const Vec3 ab = b - a, ac = c - a, ax = x - a;
  const double d1 = ab.dot(ax), d2 = ac.dot(ax);
  if (d1 <= 0.0 && d2 <= 0.0) {
    point = a;
    bary = Vec3(1, 0, 0);
    return;
  }
  const Vec3 bx = x - b;
  const double d3 = ab.dot(bx), d4 = ac.dot(bx);
  if (d3 >= 0.0 && d4 <= d3) {
    point = b;
    bary = Vec3(0, 1, 0);
    return;
  }
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    point = a + v * ab;
    bary = Vec3(1 - v, v, 0);
    return;
  }
  const Vec3 cx = x - c;
  const double d5 = ab.dot(cx), d6 = ac.dot(cx);
  if (d6 >= 0.0 && d5 <= d6) {
    point = c;
    bary = Vec3(0, 0, 1);
    return;
  }
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    point = a + w * ac;
    bary = Vec3(1 - w, 0, w);
    return;
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    point = b + w * (c - b);
    bary = Vec3(0, 1 - w, w);
    return;
  }
  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  point = a + v * ab + w * ac;
  bary = Vec3(1 - v - w, v, w);
}

TriMesh::TriMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("TriMesh: no vertices");

  bmin_ = bmax_ = vertices_[0];
  for (const auto& v : vertices_) {
    bmin_ = bmin_.cwiseMin(v);
    bmax_ = bmax_.cwiseMax(v);
  }
  const double scale2 = (bmax_ - bmin_).squaredNorm();
  const double areaTol = 1e-14 * std::max(scale2, 1e-300);

  const int nv = static_cast<int>(vertices_.size());
  triangles_.reserve(triangles.size());
  for (const auto& t : triangles) {
    for (int i : t)
      if (i < 0 || i >= nv) throw std::invalid_argument("TriMesh: vertex index out of range");
    if (triangle_area(vertices_[static_cast<std::size_t>(t[0])],
                      vertices_[static_cast<std::size_t>(t[1])],
                      vertices_[static_cast<std::size_t>(t[2])]) < areaTol) {
      ++dropped_;
      continue;
    }
    triangles_.push_back(t);
  }
  if (triangles_.empty()) throw std::invalid_argument("TriMesh: no non-degenerate triangles");

  const std::size_t nt = triangles_.size();
  face_normals_.resize(nt);
  tri_areas_.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const auto& t = triangles_[i];
    const Vec3& a = vertices_[static_cast<std::size_t>(t[0])];
    const Vec3& b = vertices_[static_cast<std::size_t>(t[1])];
    const Vec3& c = vertices_[static_cast<std::size_t>(t[2])];
    const Vec3 cr = (b - a).cross(c - a);
    face_normals_[i] = cr / cr.norm();
    tri_areas_[i] = 0.5 * cr.norm();
  }
  total_area_ = std::accumulate(tri_areas_.begin(), tri_areas_.end(), 0.0);
  area_cdf_.resize(nt);
  std::partial_sum(tri_areas_.begin(), tri_areas_.end(), area_cdf_.begin());

  // Angle-weighted vertex normals.
  vertex_normals_.assign(vertices_.size(), Vec3::Zero());
  for (std::size_t i = 0; i < nt; ++i) {
    const auto& t = triangles_[i];
    for (int k = 0; k < 3; ++k) {
      const Vec3& at = vertices_[static_cast<std::size_t>(t[k])];
      const Vec3& p1 = vertices_[static_cast<std::size_t>(t[(k + 1) % 3])];
      const Vec3& p2 = vertices_[static_cast<std::size_t>(t[(k + 2) % 3])];
      vertex_normals_[static_cast<std::size_t>(t[k])] +=
          corner_angle(at, p1, p2) * face_normals_[i];
    }
  }
  for (auto& n : vertex_normals_) {
    const double l = n.norm();
    if (l > 1e-300) n /= l;
  }

  // Edge pseudo-normals: sum of the two adjacent face normals. Edges with a
  // face count other than 2 mark the mesh non-manifold.
  struct EdgeAcc {
    Vec3 n = Vec3::Zero();
    int count = 0;
  };
  std::map<std::pair<int, int>, EdgeAcc> edgeMap;
  auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (std::size_t i = 0; i < nt; ++i) {
    const auto& t = triangles_[i];
    for (int k = 0; k < 3; ++k) {
      auto& entry = edgeMap[key(t[k], t[(k + 1) % 3])];
      entry.n += face_normals_[i];
      entry.count += 1;
    }
  }
  for (const auto& [k, v] : edgeMap) {
    if (v.count != 2) manifold_ = false;
  }
  edge_normals_.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const auto& t = triangles_[i];
    for (int k = 0; k < 3; ++k) {
      Vec3 n = edgeMap[key(t[k], t[(k + 1) % 3])].n;
      const double l = n.norm();
      edge_normals_[i][static_cast<std::size_t>(k)] = l > 1e-300 ? Vec3(n / l) : face_normals_[i];
    }
  }

  build_bvh();
}

void TriMesh::build_bvh() {
  tri_order_.resize(triangles_.size());
  std::iota(tri_order_.begin(), tri_order_.end(), 0);
  nodes_.reserve(2 * triangles_.size());
  build_node(0, static_cast<int>(triangles_.size()));
}

int TriMesh::build_node(int first, int count) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Vec3 bmin = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 bmax = -bmin;
  for (int i = first; i < first + count; ++i) {
    const auto& t = triangles_[static_cast<std::size_t>(tri_order_[static_cast<std::size_t>(i)])];
    for (int k = 0; k < 3; ++k) {
      const Vec3& v = vertices_[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])];
      bmin = bmin.cwiseMin(v);
      bmax = bmax.cwiseMax(v);
    }
  }
  nodes_[static_cast<std::size_t>(id)].bmin = bmin;
  nodes_[static_cast<std::size_t>(id)].bmax = bmax;

  if (count <= 4) {
    nodes_[static_cast<std::size_t>(id)].first = first;
    nodes_[static_cast<std::size_t>(id)].count = count;
    return id;
  }

  int axis;
  (bmax - bmin).maxCoeff(&axis);
  const int mid = first + count / 2;
  std::nth_element(tri_order_.begin() + first, tri_order_.begin() + mid,
                   tri_order_.begin() + first + count, [&](int a, int b) {
                     auto centroid = [&](int tri) {
                       const auto& t = triangles_[static_cast<std::size_t>(tri)];
                       return vertices_[static_cast<std::size_t>(t[0])][axis] +
                              vertices_[static_cast<std::size_t>(t[1])][axis] +
                              vertices_[static_cast<std::size_t>(t[2])][axis];
                     };
                     const double ca = centroid(a), cb = centroid(b);
                     return ca < cb || (ca == cb && a < b);
                   });
  const int left = build_node(first, count / 2);
  const int right = build_node(mid, count - count / 2);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

namespace {
double box_distance2(const Vec3& x, const Vec3& bmin, const Vec3& bmax) {
  double d2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double d = std::max({bmin[i] - x[i], 0.0, x[i] - bmax[i]});
    d2 += d * d;
  }
  return d2;
}
}  // namespace

void TriMesh::query(int node, const Vec3& x, SurfacePoint& best, double& bestD2) const {
  const BvhNode& n = nodes_[static_cast<std::size_t>(node)];
  if (n.left < 0) {
    for (int i = n.first; i < n.first + n.count; ++i) {
      const int tri = tri_order_[static_cast<std::size_t>(i)];
      const auto& t = triangles_[static_cast<std::size_t>(tri)];
      Vec3 p, bary;
      closest_point_on_triangle(x, vertices_[static_cast<std::size_t>(t[0])],
                                vertices_[static_cast<std::size_t>(t[1])],
                                vertices_[static_cast<std::size_t>(t[2])], p, bary);
      const double d2 = (p - x).squaredNorm();
      if (d2 < bestD2 || (d2 == bestD2 && tri < best.triangle)) {
        bestD2 = d2;
        best.position = p;
        best.barycentric = bary;
        best.triangle = tri;
      }
    }
    return;
  }
  const double dl = box_distance2(x, nodes_[static_cast<std::size_t>(n.left)].bmin,
                                  nodes_[static_cast<std::size_t>(n.left)].bmax);
  const double dr = box_distance2(x, nodes_[static_cast<std::size_t>(n.right)].bmin,
                                  nodes_[static_cast<std::size_t>(n.right)].bmax);
  const int firstChild = dl <= dr ? n.left : n.right;
  const int secondChild = dl <= dr ? n.right : n.left;
  const double firstD = std::min(dl, dr), secondD = std::max(dl, dr);
  if (firstD <= bestD2) query(firstChild, x, best, bestD2);
  if (secondD <= bestD2) query(secondChild, x, best, bestD2);
}

Vec3 TriMesh::pseudo_normal(const SurfacePoint& sp) const {
  const std::size_t tri = static_cast<std::size_t>(sp.triangle);
  const auto& t = triangles_[tri];
  constexpr double kBaryTol = 1e-12;
  int zeros = 0;
  for (int k = 0; k < 3; ++k)
    if (sp.barycentric[k] <= kBaryTol) ++zeros;
  if (zeros == 0) return face_normals_[tri];
  if (zeros == 2) {
    for (int k = 0; k < 3; ++k)
      if (sp.barycentric[k] > kBaryTol) return vertex_normals_[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])];
  }
  // Edge hit: the zero barycentric identifies the opposite vertex; the edge
  // is the one not touching it, i.e. (k+1, k+2) for zero at k.
  for (int k = 0; k < 3; ++k) {
    if (sp.barycentric[k] <= kBaryTol) return edge_normals_[tri][static_cast<std::size_t>((k + 1) % 3)];
  }
  return face_normals_[tri];
}

SurfacePoint TriMesh::nearest_point(const Vec3& x) const {
  SurfacePoint best;
  best.triangle = std::numeric_limits<int>::max();
  double bestD2 = std::numeric_limits<double>::infinity();
  query(0, x, best, bestD2);
  best.distance = std::sqrt(bestD2);
  best.inward_normal = -pseudo_normal(best);
  return best;
}

double TriMesh::signed_distance(const Vec3& x) const {
  const SurfacePoint sp = nearest_point(x);
  if (!manifold_) return sp.distance;  // unsigned fallback
  const Vec3 outward = -sp.inward_normal;
  return outward.dot(x - sp.position) < 0.0 ? -sp.distance : sp.distance;
}

std::vector<SurfacePoint> TriMesh::sample_surface(int n, std::uint64_t seed) const {
  std::vector<SurfacePoint> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    SplitMix64 g(substream(seed ^ 0x5u, static_cast<std::uint64_t>(k)));
    const double r = g.next_unit() * total_area_;
    const auto it = std::lower_bound(area_cdf_.begin(), area_cdf_.end(), r);
    const std::size_t tri = std::min(static_cast<std::size_t>(it - area_cdf_.begin()),
                                     triangles_.size() - 1);
    const auto& t = triangles_[tri];
    double su = std::sqrt(g.next_unit());
    double v = g.next_unit();
    const double b0 = 1.0 - su, b1 = su * (1.0 - v), b2 = su * v;
    SurfacePoint& sp = out[static_cast<std::size_t>(k)];
    sp.position = b0 * vertices_[static_cast<std::size_t>(t[0])] +
                  b1 * vertices_[static_cast<std::size_t>(t[1])] +
                  b2 * vertices_[static_cast<std::size_t>(t[2])];
    sp.barycentric = Vec3(b0, b1, b2);
    sp.triangle = static_cast<int>(tri);
    sp.inward_normal = -face_normals_[tri];
  }
  return out;
}

TriMesh TriMesh::load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_obj: cannot open " + path);
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      Vec3 v;
      if (!(ss >> v[0] >> v[1] >> v[2])) fail("malformed vertex line");
      verts.push_back(v);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ss >> tok) {
        // Accept i, i/j, i/j/k, i//k.
        const std::size_t slash = tok.find('/');
        const std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
        int i = 0;
        try {
          i = std::stoi(head);
        } catch (...) {
          fail("malformed face index '" + tok + "'");
        }
        if (i == 0) fail("face index 0 is invalid");
        if (i < 0) i = static_cast<int>(verts.size()) + i + 1;
        if (i < 1 || i > static_cast<int>(verts.size())) fail("face index out of range");
        idx.push_back(i - 1);
      }
      if (idx.size() < 3) fail("face needs at least 3 vertices");
      for (std::size_t k = 1; k + 1 < idx.size(); ++k)
        tris.push_back({idx[0], idx[k], idx[k + 1]});
    }
    // other records (vn, vt, mtllib, ...) are ignored
  }
  if (verts.empty()) throw std::runtime_error("load_obj: no vertices in " + path);
  return TriMesh(std::move(verts), std::move(tris));
}

void TriMesh::save_obj(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_obj: cannot open " + path);
  out.precision(17);
  for (const auto& v : vertices_) out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& t : triangles_)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

TriMesh make_icosphere(double radius, int subdivisions) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : v) p = radius * p.normalized();
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto k = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(k);
      if (it != midpoint.end()) return it->second;
      const Vec3 m = radius * (v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)]).normalized();
      v.push_back(m);
      const int id = static_cast<int>(v.size()) - 1;
      midpoint.emplace(k, id);
      return id;
    };
    std::vector<std::array<int, 3>> nf;
    nf.reserve(f.size() * 4);
    for (const auto& t : f) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      nf.push_back({t[0], ab, ca});
      nf.push_back({t[1], bc, ab});
      nf.push_back({t[2], ca, bc});
      nf.push_back({ab, bc, ca});
    }
    f = std::move(nf);
  }
  return TriMesh(std::move(v), std::move(f));
}

TriMesh make_box(const Vec3& extents) {
  const Vec3 h = extents / 2.0;
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i)
    v.emplace_back((i & 1) ? h[0] : -h[0], (i & 2) ? h[1] : -h[1], (i & 4) ? h[2] : -h[2]);
  // Outward-wound quads split into triangles.
  const int quads[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                           {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  std::vector<std::array<int, 3>> f;
  for (const auto& q : quads) {
    f.push_back({q[0], q[1], q[2]});
    f.push_back({q[0], q[2], q[3]});
  }
  return TriMesh(std::move(v), std::move(f));
}

TriMesh make_cylinder(double radius, double height, int segments) {
  std::vector<Vec3> v;
  const double hz = height / 2.0;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * kPi * i / segments;
    v.emplace_back(radius * std::cos(a), radius * std::sin(a), -hz);
    v.emplace_back(radius * std::cos(a), radius * std::sin(a), hz);
  }
  const int bottomCenter = static_cast<int>(v.size());
  v.emplace_back(0, 0, -hz);
  const int topCenter = static_cast<int>(v.size());
  v.emplace_back(0, 0, hz);

  std::vector<std::array<int, 3>> f;
  for (int i = 0; i < segments; ++i) {
    const int j = (i + 1) % segments;
    const int b0 = 2 * i, t0 = 2 * i + 1, b1 = 2 * j, t1 = 2 * j + 1;
    f.push_back({b0, b1, t1});
    f.push_back({b0, t1, t0});
    f.push_back({bottomCenter, b1, b0});
    f.push_back({topCenter, t0, t1});
  }
  return TriMesh(std::move(v), std::move(f));
}

TriMesh make_torus(double major_radius, double minor_radius, int major_segments,
                   int minor_segments) {
  std::vector<Vec3> v;
  for (int i = 0; i < major_segments; ++i) {
    const double a = 2.0 * kPi * i / major_segments;
    const Vec3 center(major_radius * std::cos(a), major_radius * std::sin(a), 0.0);
    const Vec3 radial(std::cos(a), std::sin(a), 0.0);
    for (int j = 0; j < minor_segments; ++j) {
      const double b = 2.0 * kPi * j / minor_segments;
      v.push_back(center + minor_radius * (std::cos(b) * radial + std::sin(b) * Vec3::UnitZ()));
    }
  }
  std::vector<std::array<int, 3>> f;
  auto id = [&](int i, int j) {
    return (i % major_segments) * minor_segments + (j % minor_segments);
  };
  for (int i = 0; i < major_segments; ++i) {
    for (int j = 0; j < minor_segments; ++j) {
      f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return TriMesh(std::move(v), std::move(f));
}

}  // namespace gws
