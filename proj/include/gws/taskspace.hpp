#pragma once

#include "gws/gradients.hpp"
#include "gws/types.hpp"

#include <vector>

namespace gws {

/// Hyper-spherical sector of unit wrenches within angle gamma of w_t.
/// gamma = pi makes the sector the whole sphere (force closure).
struct TaskWrenchSpace {
  Vec6 w_t = (Vec6() << 0, 0, 1, 0, 0, 0).finished();
  double gamma = kPi;
};

/// Maximizer of u . t over the sector: u itself when inside, otherwise the
/// unit vector at angle gamma from w_t in span(w_t, u) nearest u. The
/// antipodal tie is broken by the smallest-component axis convention.
Vec6 tws_support(const Vec6& u, const TaskWrenchSpace& tws);

struct TaskEnergyReport {
  double value = 0.0;                  // E_t = -sum cos beta_k
  std::vector<double> per_sample_cos;  // cos beta_k, -1 for skipped samples
  int skipped = 0;                     // samples with near-zero GWS wrench
};

/// E_t = -sum_k cos angle(s_Wt(u_k), s_Wg(u_k)). Samples whose boundary
/// wrench is below 1e-9 in norm are counted as skipped and scored as
/// cos = -1 (worst-case misalignment), so collapsing coverage cannot pay.
TaskEnergyReport task_energy(const BoundarySampleSet& samples,
                             const TaskWrenchSpace& tws);

/// Ablation variant: sum of squared L2 distances between the sample pairs.
/// Sensitive to GWS magnitude, unlike the cosine energy.
double task_energy_l2(const BoundarySampleSet& samples, const TaskWrenchSpace& tws);

struct TaskEnergyGradResult {
  TaskEnergyReport report;
  std::vector<ContactGrad> grads;  // one per input contact, raw-frame
};

/// E_t and its analytic gradient w.r.t. each contact's (p, n), chained
/// through the boundary estimator (and CPN when enabled in config).
TaskEnergyGradResult task_energy_with_grad(const std::vector<Contact>& contacts,
                                           const TaskWrenchSpace& tws,
                                           const EstimatorConfig& config);

std::vector<ContactGrad> task_energy_grad(const std::vector<Contact>& contacts,
                                          const TaskWrenchSpace& tws,
                                          const EstimatorConfig& config);

}  // namespace gws
