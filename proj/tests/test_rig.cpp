#include "gws/rig.hpp"

#include "doctest.h"

#include <cmath>

using namespace gws;

TEST_SUITE_BEGIN("rig");

TEST_CASE("bundled rigs are well formed") {
  for (const RigSpec& spec : {make_pinch_rig(), make_tripod_rig(), make_fan_rig()}) {
    CHECK(spec.links.size() > 1);
    CHECK(spec.contact_count() >= 1);
    CHECK(spec.joint_count() >= 2);
    for (std::size_t i = 0; i < spec.links.size(); ++i) {
      const auto& link = spec.links[i];
      CHECK(link.parent < static_cast<int>(i));  // parents precede children
      CHECK(link.limit_lo <= link.limit_hi);
    }
  }
  CHECK(make_pinch_rig().contact_count() == 2);
  CHECK(make_tripod_rig().contact_count() == 3);
  CHECK(make_fan_rig().contact_count() == 5);
}

TEST_CASE("identity state poses contacts through origin transforms") {
  const RigSpec spec = make_pinch_rig();
  const RigState state = make_initial_state(spec);
  const RigPose pose = forward_kinematics(spec, state);
  REQUIRE(pose.contact_points.size() == 2);
  CHECK_FALSE(pose.clamped);
  // Hand-compose the chain for contact 0 and compare.
  Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
  std::vector<int> chain;
  int li = -1;
  for (std::size_t i = 0; i < spec.links.size(); ++i)
    if (!spec.links[i].contact_points.empty()) {
      li = static_cast<int>(i);
      break;
    }
  for (int i = li; i >= 0; i = spec.links[static_cast<std::size_t>(i)].parent)
    chain.insert(chain.begin(), i);
  for (int i : chain) T = T * spec.links[static_cast<std::size_t>(i)].origin;
  const Vec3 want = T * spec.links[static_cast<std::size_t>(li)].contact_points[0];
  bool found = false;
  for (const auto& x : pose.contact_points)
    if ((x - want).norm() < 1e-12) found = true;
  CHECK(found);
}

TEST_CASE("pure root translation shifts every point") {
  const RigSpec spec = make_tripod_rig();
  RigState a = make_initial_state(spec);
  RigState b = a;
  const Vec3 t(0.3, -0.1, 0.25);
  b.root_translation += t;
  const RigPose pa = forward_kinematics(spec, a);
  const RigPose pb = forward_kinematics(spec, b);
  for (std::size_t i = 0; i < pa.contact_points.size(); ++i)
    CHECK((pb.contact_points[i] - pa.contact_points[i] - t).norm() < 1e-12);
  for (std::size_t i = 0; i < pa.spheres.size(); ++i) {
    CHECK((pb.spheres[i].first - pa.spheres[i].first - t).norm() < 1e-12);
    CHECK(pb.spheres[i].second == pa.spheres[i].second);
  }
}

TEST_CASE("single revolute joint matches the closed form") {
  RigSpec spec;
  spec.name = "one-joint";
  RigLink base;
  base.name = "base";
  spec.links.push_back(base);
  RigLink arm;
  arm.name = "arm";
  arm.parent = 0;
  arm.joint = JointType::Revolute;
  arm.axis = Vec3::UnitZ();
  arm.origin = Eigen::Isometry3d(Eigen::Translation3d(1, 0, 0));
  arm.limit_lo = -kPi;
  arm.limit_hi = kPi;
  arm.contact_points.push_back(Vec3(1, 0, 0));
  spec.links.push_back(arm);

  RigState state = make_initial_state(spec);
  state.joints[0] = kPi / 2.0;
  const RigPose pose = forward_kinematics(spec, state);
  // Joint frame at (1,0,0); rotating the local point (1,0,0) by 90 deg about
  // z gives (0,1,0) there, i.e. (1,1,0) in the world.
  CHECK((pose.contact_points[0] - Vec3(1, 1, 0)).norm() < 1e-12);
}

TEST_CASE("prismatic joint translates along its axis") {
  RigSpec spec;
  RigLink base;
  base.name = "base";
  spec.links.push_back(base);
  RigLink slider;
  slider.name = "slider";
  slider.parent = 0;
  slider.joint = JointType::Prismatic;
  slider.axis = Vec3::UnitY();
  slider.limit_lo = -1.0;
  slider.limit_hi = 1.0;
  slider.contact_points.push_back(Vec3::Zero());
  spec.links.push_back(slider);

  RigState state = make_initial_state(spec);
  state.joints[0] = 0.4;
  const RigPose pose = forward_kinematics(spec, state);
  CHECK((pose.contact_points[0] - Vec3(0, 0.4, 0)).norm() < 1e-12);
}

TEST_CASE("out-of-limit joints are clamped and flagged") {
  const RigSpec spec = make_pinch_rig();
  RigState state = make_initial_state(spec);
  state.joints[0] = 100.0;
  const RigPose pose = forward_kinematics(spec, state);
  CHECK(pose.clamped);
  RigState clamped = state;
  clamped.joints[0] = spec.links[1].limit_hi;  // first finger's first joint
  // Clamped pose must equal the pose at the limit.
  const RigPose ref = forward_kinematics(spec, clamped);
  for (std::size_t i = 0; i < pose.contact_points.size(); ++i)
    CHECK((pose.contact_points[i] - ref.contact_points[i]).norm() < 1e-12);
}

TEST_CASE("root rotation spins the whole rig") {
  const RigSpec spec = make_fan_rig();
  RigState a = make_initial_state(spec);
  RigState b = a;
  const Eigen::AngleAxisd aa(0.6, Vec3(0, 1, 0));
  b.root_rotation = Eigen::Quaterniond(aa);
  const RigPose pa = forward_kinematics(spec, a);
  const RigPose pb = forward_kinematics(spec, b);
  for (std::size_t i = 0; i < pa.contact_points.size(); ++i)
    CHECK((pb.contact_points[i] - aa * pa.contact_points[i]).norm() < 1e-12);
}

TEST_CASE("json round trip preserves the rig") {
  const RigSpec spec = make_tripod_rig();
  const RigSpec back = RigSpec::from_json_text(spec.to_json_text());
  REQUIRE(back.links.size() == spec.links.size());
  CHECK(back.joint_count() == spec.joint_count());
  CHECK(back.contact_count() == spec.contact_count());
  RigState state = make_initial_state(spec);
  for (int j = 0; j < spec.joint_count(); ++j) state.joints[j] = 0.1 * (j + 1);
  const RigPose pa = forward_kinematics(spec, state);
  const RigPose pb = forward_kinematics(back, state);
  for (std::size_t i = 0; i < pa.contact_points.size(); ++i)
    CHECK((pa.contact_points[i] - pb.contact_points[i]).norm() < 1e-9);
  for (std::size_t i = 0; i < pa.spheres.size(); ++i)
    CHECK((pa.spheres[i].first - pb.spheres[i].first).norm() < 1e-9);
}

TEST_SUITE_END();
