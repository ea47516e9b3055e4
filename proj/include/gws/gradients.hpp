#pragma once

#include "gws/contacts.hpp"
#include "gws/types.hpp"

#include <span>
#include <vector>

namespace gws {

/// Gradient of a scalar with respect to one contact's position and normal.
/// dn is expressed for a raw (renormalized-on-use) normal: it is tangent to
/// the unit sphere at n.
struct ContactGrad {
  Vec3 dp = Vec3::Zero();
  Vec3 dn = Vec3::Zero();
};

/// Accumulate gradients of z . w(u), where w(u) = sum_i G_i s_F(G_i^T u),
/// into acc (one slot per contact). PCF contacts use the analytic chain
/// through the grasp matrix, tangent frame, and support interpolant; SFC
/// contacts fall back to central finite differences on the contact wrench.
void accumulate_boundary_pullback(const Vec6& u, std::span<const Contact> contacts,
                                  double delta, const Vec6& z,
                                  std::vector<ContactGrad>& acc);

/// Map position gradients taken w.r.t. CPN-normalized positions p' back to
/// gradients w.r.t. the raw positions. Normal gradients pass through.
std::vector<ContactGrad> cpn_chain(const NormalizedContacts& norm,
                                   const std::vector<ContactGrad>& grads);

}  // namespace gws
