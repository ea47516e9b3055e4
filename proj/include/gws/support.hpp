#pragma once

#include "gws/types.hpp"

namespace gws {

/// Half-opening of the support-positive region of the unit-height Coulomb
/// cone: arctan(mu) + pi/2.
inline double pcf_cone_angle(double mu) { return std::atan(mu) + kPi / 2.0; }

/// Support point of the unit-height PCF cone for direction u3 expressed in
/// the (n, d, e) contact frame. u3 may be non-unit (it is G^T u); the zero
/// direction maps to the origin. delta >= 0 interpolates across the
/// otherwise measure-zero tip and rim branches; the near-origin branch is
/// never relaxed.
Vec3 support_pcf(const Vec3& u3, double mu, double delta);

/// Jacobian d support_pcf / d u3 (3x3, contact-frame coordinates).
/// Zero on the constant branches; undefined exactly on branch boundaries.
Mat3 support_pcf_jacobian(const Vec3& u3, double mu, double delta);

/// Support point of the unit-height SFC cone (4D, elliptic cross section
/// with radii mu1, mu1, mu2) for direction u4 = G^T u. The relaxation
/// mirrors the PCF interpolation with the cone angle taken per tangential
/// direction from the support-value zero crossing.
Vec4 support_sfc(const Vec4& u4, double mu1, double mu2, double delta);

/// Support point of the contact's wrench set for 6D direction u: G s_F(G^T u).
Vec6 support_contact_wrench(const Vec6& u, const Contact& c, double delta);

}  // namespace gws
