#pragma once

#include "gws/types.hpp"

#include <Eigen/Geometry>
#include <string>
#include <vector>

namespace gws {

enum class JointType { Fixed, Revolute, Prismatic };

struct RigLink {
  std::string name;
  int parent = -1;  // index into links, -1 attaches to the floating root
  JointType joint = JointType::Fixed;
  Vec3 axis = Vec3::UnitZ();
  Eigen::Isometry3d origin = Eigen::Isometry3d::Identity();
  double limit_lo = 0.0, limit_hi = 0.0;
  std::vector<std::pair<Vec3, double>> spheres;  // (center in link frame, radius)
  std::vector<Vec3> contact_points;              // designated x_rest, link frame
};

/// Tree-structured articulated rig: a floating 6-DoF root carrying fixed,
/// revolute, and prismatic links with collision spheres and designated
/// fingertip contact points.
struct RigSpec {
  std::string name;
  std::vector<RigLink> links;  // parents precede children

  int joint_count() const;
  int contact_count() const;

  static RigSpec from_json_file(const std::string& path);
  static RigSpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct RigState {
  Vec3 root_translation = Vec3::Zero();
  Eigen::Quaterniond root_rotation = Eigen::Quaterniond::Identity();
  Eigen::VectorXd joints;  // one entry per non-fixed joint, spec order
};

struct RigPose {
  std::vector<Eigen::Isometry3d> link_transforms;  // world, per link
  std::vector<Vec3> contact_points;                // posed x_rest, world
  std::vector<std::pair<Vec3, double>> spheres;    // posed centers, world
  std::vector<int> sphere_link;                    // owning link per sphere
  bool clamped = false;  // some joint value was outside its limits
};

/// Joint values outside limits are clamped (and flagged) before posing.
RigPose forward_kinematics(const RigSpec& spec, const RigState& state);

RigState make_initial_state(const RigSpec& spec);

/// Bundled rigs: every finger is a two-revolute-link chain on the root.
RigSpec make_pinch_rig();    // 2 fingers
RigSpec make_tripod_rig();   // 3 fingers
RigSpec make_fan_rig();      // 5 fingers

}  // namespace gws
