#pragma once

#include "gws/types.hpp"

#include <utility>
#include <vector>

namespace gws {

/// Deterministic orthonormal right-handed frame with n = d x e.
/// Built from the coordinate axis least aligned with n, so it is continuous
/// except on the measure-zero set where the selected axis switches.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& n);

/// Contact with tangent frame derived from n.
Contact make_contact(const Vec3& p, const Vec3& n, const FrictionModel& fm);

/// 6x3 map from contact-frame force (f_n, f_d, f_e) to object wrench.
Mat63 grasp_matrix_pcf(const Contact& c);

/// 6x4 map; fourth column adds the torsional moment about n.
Mat64 grasp_matrix_sfc(const Contact& c);

/// Generic form, 6x3 or 6x4 depending on the contact's friction model.
Eigen::MatrixXd grasp_matrix(const Contact& c);

struct NormalizedContacts {
  std::vector<Contact> contacts;
  Vec3 center = Vec3::Zero();  // mean contact position
  double scale = 1.0;          // mean distance to the mean
  bool degenerate = false;     // all contacts coincident; scale forced to 1
};

/// Contact position normalization: p' = (p - mean) / mean-distance.
/// Normals and tangents are untouched.
NormalizedContacts normalize_contacts(const std::vector<Contact>& contacts);

}  // namespace gws
