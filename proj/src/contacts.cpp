#include "gws/contacts.hpp"

#include <cmath>
#include <stdexcept>

namespace gws {

std::pair<Vec3, Vec3> tangent_frame(const Vec3& n) {
  const double len = n.norm();
  if (len < 1e-12) throw std::invalid_argument("tangent_frame: zero-length normal");
  const Vec3 nn = n / len;

  // Axis with the smallest |component| is the farthest from parallel.
  int axis = 0;
  double best = std::abs(nn[0]);
  for (int i = 1; i < 3; ++i) {
    const double a = std::abs(nn[i]);
    if (a < best) {
      best = a;
      axis = i;
    }
  }
  const Vec3 a = Vec3::Unit(axis);
  Vec3 d = a.cross(nn);
  d /= d.norm();
  const Vec3 e = nn.cross(d);  // d x e = d x (n x d) = n
  return {d, e};
}

Contact make_contact(const Vec3& p, const Vec3& n, const FrictionModel& fm) {
  Contact c;
  c.p = p;
  c.n = n / n.norm();
  auto [d, e] = tangent_frame(c.n);
  c.d = d;
  c.e = e;
  c.friction = fm;
  return c;
}

Mat63 grasp_matrix_pcf(const Contact& c) {
  Mat63 g;
  g.block<3, 1>(0, 0) = c.n;
  g.block<3, 1>(0, 1) = c.d;
  g.block<3, 1>(0, 2) = c.e;
  g.block<3, 1>(3, 0) = c.p.cross(c.n);
  g.block<3, 1>(3, 1) = c.p.cross(c.d);
  g.block<3, 1>(3, 2) = c.p.cross(c.e);
  return g;
}

Mat64 grasp_matrix_sfc(const Contact& c) {
  Mat64 g;
  g.block<6, 3>(0, 0) = grasp_matrix_pcf(c);
  g.block<3, 1>(0, 3) = Vec3::Zero();
  g.block<3, 1>(3, 3) = c.n;
  return g;
}

Eigen::MatrixXd grasp_matrix(const Contact& c) {
  if (c.friction.kind == ContactModel::SFC) return grasp_matrix_sfc(c);
  return grasp_matrix_pcf(c);
}

NormalizedContacts normalize_contacts(const std::vector<Contact>& contacts) {
  NormalizedContacts out;
  out.contacts = contacts;
  if (contacts.empty()) return out;

  Vec3 mean = Vec3::Zero();
  for (const auto& c : contacts) mean += c.p;
  mean /= static_cast<double>(contacts.size());

  double d = 0.0;
  for (const auto& c : contacts) d += (c.p - mean).norm();
  d /= static_cast<double>(contacts.size());

  out.center = mean;
  if (d < 1e-9) {
    out.degenerate = true;
    out.scale = 1.0;
  } else {
    out.scale = d;
  }
  for (auto& c : out.contacts) c.p = (c.p - mean) / out.scale;
  return out;
}

}  // namespace gws
