#pragma once

#include "gws/contacts.hpp"
#include "gws/types.hpp"

#include <span>
#include <vector>

namespace gws {

/// Boundary point of the grasp wrench space along sampling direction u:
/// sum over contacts of G_i s_F(G_i^T u). Exact for delta = 0.
Vec6 support_gws(const Vec6& u, std::span<const Contact> contacts, double delta);

/// K boundary samples for uniformly drawn directions. Contact position
/// normalization is applied first when config.cpn is set; sample k is a pure
/// function of (config.seed, k), so the result is independent of scheduling.
/// OpenMP-parallel over samples.
BoundarySampleSet estimate_boundary(const std::vector<Contact>& contacts,
                                    const EstimatorConfig& config);

/// Single-threaded reference implementation; must agree bitwise with
/// estimate_boundary.
BoundarySampleSet estimate_boundary_serial(const std::vector<Contact>& contacts,
                                           const EstimatorConfig& config);

}  // namespace gws
