#pragma once

#include "gws/mesh.hpp"
#include "gws/rig.hpp"
#include "gws/taskspace.hpp"
#include "gws/types.hpp"

#include <vector>

namespace gws {

struct SynthesisConfig {
  int iterations = 500;
  double initial_step = 1e-2;
  double shrink = 0.5;
  int max_backtracks = 8;
  // The task term is the mean cosine energy (range [-1, 1]); the geometry
  // terms are squared meters, so desk-scale violations (~1 cm -> 1e-4) need
  // weights around 1e4 to trade off against cosine-scale task changes.
  double w_task = 1.0;
  double w_dist = 1e4;
  double w_pen = 2e4;
  double w_selfpen = 1e4;
  EstimatorConfig estimator{100, 15.0 * kPi / 180.0, true, 0};
  double fd_step_rel = 1e-4;  // finite-difference step, times bounding radius
  std::uint64_t seed = 0;
  double perturb_translation = 0.02;  // meters
  double perturb_rotation = 0.2;      // radians
  FrictionModel friction = FrictionModel::pcf(0.5);
};

struct EnergyBreakdown {
  double task = 0.0;
  double dist = 0.0;
  double pen = 0.0;
  double selfpen = 0.0;
  double total = 0.0;  // weighted sum of the four terms
};

struct SynthesisResult {
  RigState state;
  std::vector<double> trace;  // accepted total energy per iteration
  std::vector<Contact> contacts;
  double eps_t = 0.0;
  double max_penetration = 0.0;
  bool early_stop = false;
  bool joint_clamped = false;
  EnergyBreakdown final_energy;
};

/// Project posed rig contact points to the mesh surface; contacts get inward
/// normals and derived tangent frames.
std::vector<Contact> contact_projection(const TriMesh& mesh,
                                        const std::vector<Vec3>& points,
                                        const FrictionModel& friction);

/// Sum of squared gaps between posed contact points and their projections.
double distance_energy(const std::vector<Vec3>& points,
                       const std::vector<Contact>& projected);

/// Rig-sphere vs object penetration: sum max(0, r - sd(center))^2.
double penetration_energy(const RigPose& pose, const TriMesh& mesh);

/// Non-adjacent sphere pairs: sum max(0, r_i + r_j - dist)^2. Pairs on the
/// same link or on parent-child links are skipped.
double self_penetration_energy(const RigSpec& spec, const RigPose& pose);

EnergyBreakdown total_energy(const RigSpec& spec, const RigState& state,
                             const TriMesh& mesh, const TaskWrenchSpace& tws,
                             const SynthesisConfig& cfg);

/// Hybrid gradient over (root translation, root rotation tangent, joints):
/// analytic task gradient chained through finite differences of the
/// FK + nearest-point contact map; geometric terms fully finite-differenced.
Eigen::VectorXd energy_gradient(const RigSpec& spec, const RigState& state,
                                const TriMesh& mesh, const TaskWrenchSpace& tws,
                                const SynthesisConfig& cfg);

RigState apply_step(const RigSpec& spec, const RigState& state,
                    const Eigen::VectorXd& delta);

/// Gradient descent with greedy backtracking line search from the given
/// initial state (callers add the random perturbation; see make_perturbed).
SynthesisResult optimize(const RigSpec& spec, const TriMesh& mesh,
                         const TaskWrenchSpace& tws, const SynthesisConfig& cfg,
                         const RigState& initial);

/// Initial state: given root pose, zero joints, seeded random perturbation of
/// root translation and rotation.
RigState make_perturbed(const RigSpec& spec, const Vec3& root_translation,
                        const Eigen::Quaterniond& root_rotation,
                        const SynthesisConfig& cfg);

}  // namespace gws
