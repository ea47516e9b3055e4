#include "gws/support.hpp"

#include "gws/contacts.hpp"

#include <algorithm>
#include <cmath>

namespace gws {

namespace {
constexpr double kDirTol = 1e-12;

double clamp_delta(double delta, double alpha) {
  return std::clamp(delta, 0.0, 0.5 * alpha * (1.0 - 1e-9));
}
}  // namespace

Vec3 support_pcf(const Vec3& u3, double mu, double delta) {
  const double rho = u3.norm();
  if (rho < kDirTol) return Vec3::Zero();

  const double alpha = pcf_cone_angle(mu);
  const double del = clamp_delta(delta, alpha);

  const double y1 = u3[0];
  const Eigen::Vector2d yt(u3[1], u3[2]);
  const double r = yt.norm();

  if (r < kDirTol * rho) {
    // On the cone axis: tip for the forward direction, origin otherwise.
    return (y1 > 0.0) ? Vec3(1.0, 0.0, 0.0) : Vec3::Zero();
  }

  const double theta = std::atan2(r, y1);
  const Eigen::Vector2d that = yt / r;

  if (theta >= alpha) return Vec3::Zero();

  const Vec3 v(1.0, mu * that[0], mu * that[1]);
  if (del > 0.0 && theta < del) {
    // Interpolate tip -> rim: c + theta/delta (v - c).
    const double k = theta / del;
    return Vec3(1.0, k * mu * that[0], k * mu * that[1]);
  }
  if (theta <= alpha - del) return v;
  // Interpolate rim -> origin.
  return ((alpha - theta) / del) * v;
}

Mat3 support_pcf_jacobian(const Vec3& u3, double mu, double delta) {
  Mat3 J = Mat3::Zero();
  const double rho = u3.norm();
  if (rho < kDirTol) return J;

  const double alpha = pcf_cone_angle(mu);
  const double del = clamp_delta(delta, alpha);

  const double y1 = u3[0];
  const Eigen::Vector2d yt(u3[1], u3[2]);
  const double r = yt.norm();
  if (r < kDirTol * rho) return J;  // axis branch is locally constant

  const double theta = std::atan2(r, y1);
  if (theta >= alpha) return J;

  const double rho2 = rho * rho;
  const Eigen::Vector2d that = yt / r;
  const Eigen::Matrix2d proj = (Eigen::Matrix2d::Identity() - that * that.transpose()) / r;

  // dtheta/dy = (-r/rho^2, (y1/rho^2) that)
  Vec3 dtheta;
  dtheta << -r / rho2, (y1 / rho2) * that;

  if (del > 0.0 && theta < del) {
    // s_t = (mu theta / del) that
    const Eigen::Vector2d st_coeff = (mu / del) * that;
    J.block<2, 1>(1, 0) = st_coeff * dtheta[0];
    J.block<2, 2>(1, 1) =
        (mu / del) * (that * ((y1 / rho2) * that).transpose() + theta * proj);
    return J;
  }
  if (theta <= alpha - del) {
    J.block<2, 2>(1, 1) = mu * proj;
    return J;
  }
  // s = k v, k = (alpha - theta)/del, v = (1, mu that)
  const double k = (alpha - theta) / del;
  Vec3 v(1.0, mu * that[0], mu * that[1]);
  J = v * (-(1.0 / del) * dtheta.transpose());
  J.block<2, 2>(1, 1) += k * mu * proj;
  return J;
}

Vec4 support_sfc(const Vec4& u4, double mu1, double mu2, double delta) {
  const double rho = u4.norm();
  if (rho < kDirTol) return Vec4::Zero();

  const double y1 = u4[0];
  const Eigen::Vector3d yt(u4[1], u4[2], u4[3]);
  const double r = yt.norm();

  if (r < kDirTol * rho) {
    return (y1 > 0.0) ? Vec4(1.0, 0.0, 0.0, 0.0) : Vec4::Zero();
  }

  // Support value per unit f1 along this tangential direction.
  const double sval =
      std::sqrt(mu1 * mu1 * (yt[0] * yt[0] + yt[1] * yt[1]) + mu2 * mu2 * yt[2] * yt[2]);
  const double sigma = sval / r;
  const double alpha = kPi / 2.0 + std::atan(sigma);
  const double del = clamp_delta(delta, alpha);

  const double theta = std::atan2(r, y1);
  if (theta >= alpha) return Vec4::Zero();

  const Vec4 v(1.0, mu1 * mu1 * yt[0] / sval, mu1 * mu1 * yt[1] / sval,
               mu2 * mu2 * yt[2] / sval);
  if (del > 0.0 && theta < del) {
    Vec4 s = (theta / del) * v;
    s[0] = 1.0;
    return s;
  }
  if (theta <= alpha - del) return v;
  return ((alpha - theta) / del) * v;
}

Vec6 support_contact_wrench(const Vec6& u, const Contact& c, double delta) {
  if (c.friction.kind == ContactModel::SFC) {
    const Mat64 g = grasp_matrix_sfc(c);
    const Vec4 y = g.transpose() * u;
    return g * support_sfc(y, c.friction.mu, c.friction.mu_torsion, delta);
  }
  const Mat63 g = grasp_matrix_pcf(c);
  const Vec3 y = g.transpose() * u;
  return g * support_pcf(y, c.friction.mu, delta);
}

}  // namespace gws
