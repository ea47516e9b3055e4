#include "gws/synthesis.hpp"

#include "gws/estimator.hpp"
#include "gws/metrics.hpp"
#include "gws/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace gws {

std::vector<Contact> contact_projection(const TriMesh& mesh,
                                        const std::vector<Vec3>& points,
                                        const FrictionModel& friction) {
  std::vector<Contact> out;
  out.reserve(points.size());
  for (const auto& x : points) {
    const SurfacePoint sp = mesh.nearest_point(x);
    out.push_back(make_contact(sp.position, sp.inward_normal, friction));
  }
  return out;
}

double distance_energy(const std::vector<Vec3>& points,
                       const std::vector<Contact>& projected) {
  double e = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    e += (points[i] - projected[i].p).squaredNorm();
  return e;
}

double penetration_energy(const RigPose& pose, const TriMesh& mesh) {
  double e = 0.0;
  for (const auto& [center, radius] : pose.spheres) {
    const double depth = radius - mesh.signed_distance(center);
    if (depth > 0.0) e += depth * depth;
  }
  return e;
}

namespace {
bool links_adjacent(const RigSpec& spec, int a, int b) {
  if (a == b) return true;
  return spec.links[static_cast<std::size_t>(a)].parent == b ||
         spec.links[static_cast<std::size_t>(b)].parent == a;
}
}  // namespace

double self_penetration_energy(const RigSpec& spec, const RigPose& pose) {
  double e = 0.0;
  const std::size_t n = pose.spheres.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (links_adjacent(spec, pose.sphere_link[i], pose.sphere_link[j])) continue;
      const double overlap = pose.spheres[i].second + pose.spheres[j].second -
                             (pose.spheres[i].first - pose.spheres[j].first).norm();
      if (overlap > 0.0) e += overlap * overlap;
    }
  }
  return e;
}

EnergyBreakdown total_energy(const RigSpec& spec, const RigState& state,
                             const TriMesh& mesh, const TaskWrenchSpace& tws,
                             const SynthesisConfig& cfg) {
  const RigPose pose = forward_kinematics(spec, state);
  const auto contacts = contact_projection(mesh, pose.contact_points, cfg.friction);

  EnergyBreakdown e;
  if (cfg.w_task != 0.0) {
    const BoundarySampleSet samples = estimate_boundary_serial(contacts, cfg.estimator);
    // Mean cosine energy (in [-1, 1]) rather than the raw sum over K samples,
    // so the task weight is comparable across estimator resolutions and can be
    // balanced against the metric-scale geometry terms.
    e.task = task_energy(samples, tws).value / static_cast<double>(cfg.estimator.K);
  }
  e.dist = distance_energy(pose.contact_points, contacts);
  e.pen = penetration_energy(pose, mesh);
  e.selfpen = self_penetration_energy(spec, pose);
  e.total = cfg.w_task * e.task + cfg.w_dist * e.dist + cfg.w_pen * e.pen +
            cfg.w_selfpen * e.selfpen;
  return e;
}

RigState apply_step(const RigSpec& spec, const RigState& state,
                    const Eigen::VectorXd& delta) {
  RigState out = state;
  out.root_translation += delta.head<3>();
  const Vec3 rv = delta.segment<3>(3);
  const double angle = rv.norm();
  if (angle > 0.0) {
    out.root_rotation =
        (Eigen::Quaterniond(Eigen::AngleAxisd(angle, rv / angle)) * state.root_rotation)
            .normalized();
  }
  int j = 0;
  for (const auto& link : spec.links) {
    if (link.joint == JointType::Fixed) continue;
    out.joints[j] = std::clamp(state.joints[j] + delta[6 + j], link.limit_lo, link.limit_hi);
    ++j;
  }
  return out;
}

Eigen::VectorXd energy_gradient(const RigSpec& spec, const RigState& state,
                                const TriMesh& mesh, const TaskWrenchSpace& tws,
                                const SynthesisConfig& cfg) {
  const int dim = 6 + spec.joint_count();
  const double h = cfg.fd_step_rel * mesh.bounding_radius();

  // Analytic task gradient w.r.t. the current contacts.
  const RigPose pose = forward_kinematics(spec, state);
  const auto contacts = contact_projection(mesh, pose.contact_points, cfg.friction);
  std::vector<ContactGrad> taskGrad;
  if (cfg.w_task != 0.0) taskGrad = task_energy_grad(contacts, tws, cfg.estimator);

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(dim);
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(dim);
    delta[k] = h;
    const RigState sp = apply_step(spec, state, delta);
    delta[k] = -h;
    const RigState sm = apply_step(spec, state, delta);

    const RigPose pp = forward_kinematics(spec, sp);
    const RigPose pm = forward_kinematics(spec, sm);
    const auto cp = contact_projection(mesh, pp.contact_points, cfg.friction);
    const auto cm = contact_projection(mesh, pm.contact_points, cfg.friction);

    double g = 0.0;
    if (cfg.w_task != 0.0) {
      // Same 1/K normalization as the task term in total_energy.
      const double wk = cfg.w_task / static_cast<double>(cfg.estimator.K);
      for (std::size_t i = 0; i < contacts.size(); ++i) {
        g += wk *
             (taskGrad[i].dp.dot(cp[i].p - cm[i].p) + taskGrad[i].dn.dot(cp[i].n - cm[i].n)) /
             (2.0 * h);
      }
    }
    const double geoP = cfg.w_dist * distance_energy(pp.contact_points, cp) +
                        cfg.w_pen * penetration_energy(pp, mesh) +
                        cfg.w_selfpen * self_penetration_energy(spec, pp);
    const double geoM = cfg.w_dist * distance_energy(pm.contact_points, cm) +
                        cfg.w_pen * penetration_energy(pm, mesh) +
                        cfg.w_selfpen * self_penetration_energy(spec, pm);
    grad[k] = g + (geoP - geoM) / (2.0 * h);
  }
  return grad;
}

RigState make_perturbed(const RigSpec& spec, const Vec3& root_translation,
                        const Eigen::Quaterniond& root_rotation,
                        const SynthesisConfig& cfg) {
  RigState s = make_initial_state(spec);
  SplitMix64 g(substream(cfg.seed, 0x9e37ULL));
  Vec3 dt, rv;
  for (int i = 0; i < 3; ++i) dt[i] = cfg.perturb_translation * g.next_normal();
  for (int i = 0; i < 3; ++i) rv[i] = cfg.perturb_rotation * g.next_normal();
  s.root_translation = root_translation + dt;
  const double angle = rv.norm();
  s.root_rotation = angle > 0.0
                        ? (Eigen::Quaterniond(Eigen::AngleAxisd(angle, rv / angle)) *
                           root_rotation)
                              .normalized()
                        : root_rotation;
  return s;
}

SynthesisResult optimize(const RigSpec& spec, const TriMesh& mesh,
                         const TaskWrenchSpace& tws, const SynthesisConfig& cfg,
                         const RigState& initial) {
  SynthesisResult result;
  RigState q = initial;
  EnergyBreakdown e = total_energy(spec, q, mesh, tws, cfg);
  result.trace.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
  result.trace.push_back(e.total);

  int consecutive_fails = 0;
  for (int it = 0; it < cfg.iterations; ++it) {
    const Eigen::VectorXd g = energy_gradient(spec, q, mesh, tws, cfg);
    const double gnorm = g.norm();
    if (gnorm < 1e-14) break;
    // Line search along the normalized direction: the task and geometry terms
    // have very different natural scales, so initial_step is a trust-region
    // size in state units rather than a gradient multiplier.
    const Eigen::VectorXd dir = g / gnorm;
    bool accepted = false;
    double step = cfg.initial_step;
    for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
      const RigState cand = apply_step(spec, q, (-step * dir).eval());
      const EnergyBreakdown ce = total_energy(spec, cand, mesh, tws, cfg);
      if (ce.total < e.total) {
        q = cand;
        e = ce;
        accepted = true;
        break;
      }
      step *= cfg.shrink;
    }
    result.trace.push_back(e.total);
    if (accepted) {
      consecutive_fails = 0;
    } else if (++consecutive_fails >= 10) {
      result.early_stop = true;
      break;
    }
  }

  result.state = q;
  result.final_energy = e;
  const RigPose pose = forward_kinematics(spec, q);
  result.joint_clamped = pose.clamped;
  result.contacts = contact_projection(mesh, pose.contact_points, cfg.friction);
  for (const auto& [center, radius] : pose.spheres) {
    const double depth = radius - mesh.signed_distance(center);
    result.max_penetration = std::max(result.max_penetration, depth);
  }
  result.max_penetration = std::max(result.max_penetration, 0.0);

  // The reported eps_t uses a denser boundary sample than the per-iteration
  // energy budget: the sampled-hull support badly under-covers tight sectors
  // at the small K used during optimization.
  EstimatorConfig finalEst = cfg.estimator;
  finalEst.K = std::max(finalEst.K, 5000);
  const BoundarySampleSet samples = estimate_boundary_serial(result.contacts, finalEst);
  result.eps_t = epsilon_t_from_samples(samples, tws).value_or(0.0);
  return result;
}

}  // namespace gws
