#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <numbers>
#include <vector>

namespace gws {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat63 = Eigen::Matrix<double, 6, 3>;
using Mat64 = Eigen::Matrix<double, 6, 4>;

inline constexpr double kPi = std::numbers::pi;

/// Wrench ordering: (force_x, force_y, force_z, torque_x, torque_y, torque_z).
inline Vec6 wrench(const Vec3& force, const Vec3& torque) {
  Vec6 w;
  w << force, torque;
  return w;
}

enum class ContactModel { PCF, SFC };

/// Friction cone parameters. PCF uses mu only; SFC adds a torsional
/// coefficient mu_torsion bounding the normal-axis friction moment.
struct FrictionModel {
  ContactModel kind = ContactModel::PCF;
  double mu = 0.5;
  double mu_torsion = 0.0;

  static FrictionModel pcf(double mu) { return {ContactModel::PCF, mu, 0.0}; }
  static FrictionModel sfc(double mu1, double mu2) {
    return {ContactModel::SFC, mu1, mu2};
  }
};

/// One contact on the object surface, in the object frame.
/// Invariants: n, d, e unit length, n = d x e.
struct Contact {
  Vec3 p = Vec3::Zero();
  Vec3 n = Vec3::UnitZ();
  Vec3 d = Vec3::UnitX();
  Vec3 e = Vec3::UnitY();
  FrictionModel friction;
};

struct EstimatorConfig {
  int K = 100;
  double delta = 15.0 * kPi / 180.0;  // radians
  bool cpn = true;
  std::uint64_t seed = 0;
};

/// A GWB point together with the unit direction that produced it.
struct WrenchSample {
  Vec6 w = Vec6::Zero();
  Vec6 u = Vec6::Zero();
};

struct BoundarySampleSet {
  std::vector<WrenchSample> samples;
  Vec3 cpn_center = Vec3::Zero();
  double cpn_scale = 1.0;
  bool cpn_applied = false;
  bool cpn_degenerate = false;
  EstimatorConfig config;
};

}  // namespace gws
