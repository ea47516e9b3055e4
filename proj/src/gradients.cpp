#include "gws/gradients.hpp"

#include "gws/support.hpp"

#include <cmath>

namespace gws {

namespace {

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v[2], v[1], v[2], 0, -v[0], -v[1], v[0], 0;
  return m;
}

/// Gradient of phi = z . (G x) w.r.t. contact position and (unit) normal,
/// with the tangent frame d, e treated as the deterministic function of n.
void grasp_matrix_pullback(const Contact& c, const Vec6& z, const Vec3& x,
                           Vec3& dp, Vec3& dn) {
  const Vec3 zf = z.head<3>();
  const Vec3 zt = z.tail<3>();
  const Vec3 m = zf + zt.cross(c.p);
  const Vec3 rx = x[0] * c.n + x[1] * c.d + x[2] * c.e;

  dp += rx.cross(zt);

  // Tangent frame derivative: d = (a x n)/|a x n|, e = n x d, with a the
  // axis picked by tangent_frame (piecewise constant in n).
  int axis = 0;
  double best = std::abs(c.n[0]);
  for (int i = 1; i < 3; ++i) {
    if (std::abs(c.n[i]) < best) {
      best = std::abs(c.n[i]);
      axis = i;
    }
  }
  const Vec3 a = Vec3::Unit(axis);
  const double hlen = a.cross(c.n).norm();
  const Mat3 dd_dn = ((Mat3::Identity() - c.d * c.d.transpose()) / hlen) * skew(a);
  const Mat3 de_dn = -skew(c.d) + skew(c.n) * dd_dn;

  Vec3 g = x[0] * m + dd_dn.transpose() * (x[1] * m) + de_dn.transpose() * (x[2] * m);
  // Renormalization of n projects the raw-normal perturbation onto the sphere.
  dn += (Mat3::Identity() - c.n * c.n.transpose()) * g;
}

void pullback_pcf(const Vec6& u, const Contact& c, double delta, const Vec6& z,
                  ContactGrad& acc) {
  const Mat63 g = grasp_matrix_pcf(c);
  const Vec3 y = g.transpose() * u;
  const Vec3 s = support_pcf(y, c.friction.mu, delta);
  const Mat3 J = support_pcf_jacobian(y, c.friction.mu, delta);
  const Vec3 a = g.transpose() * z;
  const Vec3 b = J.transpose() * a;

  // z . dw = z . (dG s) + u . (dG b)
  grasp_matrix_pullback(c, z, s, acc.dp, acc.dn);
  grasp_matrix_pullback(c, u, b, acc.dp, acc.dn);
}

void pullback_fd(const Vec6& u, const Contact& c, double delta, const Vec6& z,
                 ContactGrad& acc) {
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Contact cp = c;
    Contact cm = c;
    cp.p[i] += h;
    cm.p[i] -= h;
    acc.dp[i] += z.dot(support_contact_wrench(u, cp, delta) -
                       support_contact_wrench(u, cm, delta)) /
                 (2.0 * h);
  }
  for (int i = 0; i < 3; ++i) {
    Contact cp = make_contact(c.p, (c.n + h * Vec3::Unit(i)).eval(), c.friction);
    Contact cm = make_contact(c.p, (c.n - h * Vec3::Unit(i)).eval(), c.friction);
    acc.dn[i] += z.dot(support_contact_wrench(u, cp, delta) -
                       support_contact_wrench(u, cm, delta)) /
                 (2.0 * h);
  }
}

}  // namespace

void accumulate_boundary_pullback(const Vec6& u, std::span<const Contact> contacts,
                                  double delta, const Vec6& z,
                                  std::vector<ContactGrad>& acc) {
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    if (contacts[i].friction.kind == ContactModel::PCF) {
      pullback_pcf(u, contacts[i], delta, z, acc[i]);
    } else {
      pullback_fd(u, contacts[i], delta, z, acc[i]);
    }
  }
}

std::vector<ContactGrad> cpn_chain(const NormalizedContacts& norm,
                                   const std::vector<ContactGrad>& grads) {
  const std::size_t m = norm.contacts.size();
  std::vector<ContactGrad> out = grads;
  if (m == 0) return out;

  Vec3 gmean = Vec3::Zero();
  double inner = 0.0;  // sum_i g'_i . p'_i
  Vec3 ubar = Vec3::Zero();
  std::vector<Vec3> uhat(m, Vec3::Zero());
  for (std::size_t i = 0; i < m; ++i) {
    gmean += grads[i].dp;
    inner += grads[i].dp.dot(norm.contacts[i].p);
    const double len = norm.contacts[i].p.norm();
    if (len > 1e-12) uhat[i] = norm.contacts[i].p / len;
    ubar += uhat[i];
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  gmean *= inv_m;
  ubar *= inv_m;

  for (std::size_t j = 0; j < m; ++j) {
    Vec3 g = grads[j].dp - gmean;
    if (!norm.degenerate) g -= inner * inv_m * (uhat[j] - ubar);
    out[j].dp = g / norm.scale;
  }
  return out;
}

}  // namespace gws
