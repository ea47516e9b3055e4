#include "gws/rig.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gws {

using json = nlohmann::json;

int RigSpec::joint_count() const {
  int n = 0;
  for (const auto& l : links)
    if (l.joint != JointType::Fixed) ++n;
  return n;
}

int RigSpec::contact_count() const {
  int n = 0;
  for (const auto& l : links) n += static_cast<int>(l.contact_points.size());
  return n;
}

namespace {

Eigen::Isometry3d origin_from_xyz_rpy(const Vec3& xyz, const Vec3& rpy) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translation() = xyz;
  t.linear() = (Eigen::AngleAxisd(rpy[2], Vec3::UnitZ()) *
                Eigen::AngleAxisd(rpy[1], Vec3::UnitY()) *
                Eigen::AngleAxisd(rpy[0], Vec3::UnitX()))
                   .toRotationMatrix();
  return t;
}

Vec3 get_vec3(const json& j, const char* field) {
  const auto& a = j.at(field);
  if (!a.is_array() || a.size() != 3)
    throw std::runtime_error(std::string("rig json: '") + field + "' must be a 3-array");
  return Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

JointType joint_type_from_string(const std::string& s) {
  if (s == "fixed") return JointType::Fixed;
  if (s == "revolute") return JointType::Revolute;
  if (s == "prismatic") return JointType::Prismatic;
  throw std::runtime_error("rig json: unknown joint type '" + s + "'");
}

const char* joint_type_name(JointType t) {
  switch (t) {
    case JointType::Fixed: return "fixed";
    case JointType::Revolute: return "revolute";
    default: return "prismatic";
  }
}

}  // namespace

RigSpec RigSpec::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  RigSpec spec;
  spec.name = j.value("name", "rig");
  std::vector<std::string> names;
  for (const auto& jl : j.at("links")) {
    RigLink link;
    link.name = jl.at("name").get<std::string>();
    if (jl.contains("parent") && !jl["parent"].is_null()) {
      const std::string pname = jl["parent"].get<std::string>();
      auto it = std::find(names.begin(), names.end(), pname);
      if (it == names.end())
        throw std::runtime_error("rig json: parent '" + pname +
                                 "' of '" + link.name + "' must be declared first");
      link.parent = static_cast<int>(it - names.begin());
    }
    const auto& jj = jl.at("joint");
    link.joint = joint_type_from_string(jj.at("type").get<std::string>());
    if (link.joint != JointType::Fixed) {
      link.axis = get_vec3(jj, "axis").normalized();
      const auto& lim = jj.at("limits");
      link.limit_lo = lim[0].get<double>();
      link.limit_hi = lim[1].get<double>();
      if (link.limit_lo > link.limit_hi)
        throw std::runtime_error("rig json: limits lo > hi on '" + link.name + "'");
    }
    if (jl.contains("origin")) {
      const Vec3 xyz = jl["origin"].contains("xyz") ? get_vec3(jl["origin"], "xyz") : Vec3::Zero();
      const Vec3 rpy = jl["origin"].contains("rpy") ? get_vec3(jl["origin"], "rpy") : Vec3::Zero();
      link.origin = origin_from_xyz_rpy(xyz, rpy);
    }
    for (const auto& js : jl.value("spheres", json::array()))
      link.spheres.emplace_back(get_vec3(js, "center"), js.at("radius").get<double>());
    for (const auto& jc : jl.value("contacts", json::array())) {
      if (!jc.is_array() || jc.size() != 3)
        throw std::runtime_error("rig json: contact entries must be 3-arrays");
      link.contact_points.emplace_back(jc[0].get<double>(), jc[1].get<double>(),
                                       jc[2].get<double>());
    }
    names.push_back(link.name);
    spec.links.push_back(std::move(link));
  }
  if (spec.contact_count() < 1)
    throw std::runtime_error("rig json: at least one designated contact point required");
  return spec;
}

RigSpec RigSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("rig: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string RigSpec::to_json_text() const {
  json j;
  j["name"] = name;
  j["links"] = json::array();
  for (const auto& l : links) {
    json jl;
    jl["name"] = l.name;
    jl["parent"] = l.parent < 0 ? json(nullptr) : json(links[static_cast<std::size_t>(l.parent)].name);
    jl["joint"]["type"] = joint_type_name(l.joint);
    if (l.joint != JointType::Fixed) {
      jl["joint"]["axis"] = {l.axis[0], l.axis[1], l.axis[2]};
      jl["joint"]["limits"] = {l.limit_lo, l.limit_hi};
    }
    const Vec3 xyz = l.origin.translation();
    const Vec3 ea = l.origin.rotation().eulerAngles(2, 1, 0);  // yaw, pitch, roll
    jl["origin"]["xyz"] = {xyz[0], xyz[1], xyz[2]};
    jl["origin"]["rpy"] = {ea[2], ea[1], ea[0]};
    jl["spheres"] = json::array();
    for (const auto& [c, r] : l.spheres)
      jl["spheres"].push_back({{"center", {c[0], c[1], c[2]}}, {"radius", r}});
    jl["contacts"] = json::array();
    for (const auto& c : l.contact_points) jl["contacts"].push_back({c[0], c[1], c[2]});
    j["links"].push_back(std::move(jl));
  }
  return j.dump(2) + "\n";
}

RigPose forward_kinematics(const RigSpec& spec, const RigState& state) {
  RigPose pose;
  pose.link_transforms.resize(spec.links.size());

  Eigen::Isometry3d root = Eigen::Isometry3d::Identity();
  root.translation() = state.root_translation;
  root.linear() = state.root_rotation.normalized().toRotationMatrix();

  int joint_idx = 0;
  for (std::size_t i = 0; i < spec.links.size(); ++i) {
    const RigLink& link = spec.links[i];
    const Eigen::Isometry3d& parentT =
        link.parent < 0 ? root : pose.link_transforms[static_cast<std::size_t>(link.parent)];

    Eigen::Isometry3d jointT = Eigen::Isometry3d::Identity();
    if (link.joint != JointType::Fixed) {
      double q = state.joints[joint_idx++];
      if (q < link.limit_lo || q > link.limit_hi) {
        q = std::clamp(q, link.limit_lo, link.limit_hi);
        pose.clamped = true;
      }
      if (link.joint == JointType::Revolute) {
        jointT.linear() = Eigen::AngleAxisd(q, link.axis).toRotationMatrix();
      } else {
        jointT.translation() = q * link.axis;
      }
    }
    pose.link_transforms[i] = parentT * link.origin * jointT;

    for (const auto& c : link.contact_points)
      pose.contact_points.push_back(pose.link_transforms[i] * c);
    for (const auto& [c, r] : link.spheres) {
      pose.spheres.emplace_back(pose.link_transforms[i] * c, r);
      pose.sphere_link.push_back(static_cast<int>(i));
    }
  }
  return pose;
}

RigState make_initial_state(const RigSpec& spec) {
  RigState s;
  s.joints = Eigen::VectorXd::Zero(spec.joint_count());
  return s;
}

namespace {

RigSpec make_radial_rig(const std::string& name, int fingers, double base_radius) {
  RigSpec spec;
  spec.name = name;

  RigLink palm;
  palm.name = "palm";
  palm.spheres.emplace_back(Vec3(0, 0, 0.01), 0.02);
  spec.links.push_back(palm);

  const double l1 = 0.06, l2 = 0.05;
  for (int f = 0; f < fingers; ++f) {
    const double phi = 2.0 * kPi * f / fingers;
    RigLink prox;
    prox.name = "finger" + std::to_string(f) + "_prox";
    prox.parent = 0;
    prox.joint = JointType::Revolute;
    prox.axis = Vec3::UnitY();
    prox.limit_lo = -1.6;
    prox.limit_hi = 1.6;
    // Base on a circle, local z pointing down so fingers extend below the palm.
    Eigen::Isometry3d origin = Eigen::Isometry3d::Identity();
    origin.translation() = Vec3(base_radius * std::cos(phi), base_radius * std::sin(phi), 0.0);
    origin.linear() = (Eigen::AngleAxisd(phi, Vec3::UnitZ()) *
                       Eigen::AngleAxisd(kPi, Vec3::UnitY()))
                          .toRotationMatrix();
    prox.origin = origin;
    prox.spheres.emplace_back(Vec3(0, 0, 0.02), 0.009);
    prox.spheres.emplace_back(Vec3(0, 0, 0.045), 0.009);
    spec.links.push_back(prox);

    RigLink dist;
    dist.name = "finger" + std::to_string(f) + "_dist";
    dist.parent = static_cast<int>(spec.links.size()) - 1;
    dist.joint = JointType::Revolute;
    dist.axis = Vec3::UnitY();
    dist.limit_lo = -1.8;
    dist.limit_hi = 1.8;
    dist.origin = Eigen::Isometry3d(Eigen::Translation3d(0, 0, l1));
    dist.spheres.emplace_back(Vec3(0, 0, 0.02), 0.008);
    dist.spheres.emplace_back(Vec3(0, 0, l2 - 0.008), 0.008);
    dist.contact_points.emplace_back(0, 0, l2);
    spec.links.push_back(dist);
  }
  return spec;
}

}  // namespace

RigSpec make_pinch_rig() { return make_radial_rig("pinch", 2, 0.045); }
RigSpec make_tripod_rig() { return make_radial_rig("tripod", 3, 0.045); }
RigSpec make_fan_rig() { return make_radial_rig("fan", 5, 0.05); }

}  // namespace gws
