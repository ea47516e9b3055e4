#include "gws/taskspace.hpp"

#include "gws/estimator.hpp"
#include "gws/sampling.hpp"
#include "gws/support.hpp"

#include <algorithm>
#include <cmath>

namespace gws {

namespace {
constexpr double kZeroWrenchTol = 1e-9;

Vec6 deterministic_perpendicular(const Vec6& w_t) {
  int axis = 0;
  double best = std::abs(w_t[0]);
  for (int i = 1; i < 6; ++i) {
    if (std::abs(w_t[i]) < best) {
      best = std::abs(w_t[i]);
      axis = i;
    }
  }
  Vec6 q = Vec6::Unit(axis) - w_t[axis] * w_t;
  return q / q.norm();
}
}  // namespace

Vec6 tws_support(const Vec6& u, const TaskWrenchSpace& tws) {
  if (tws.gamma >= kPi) return u;
  const double c = std::clamp(u.dot(tws.w_t), -1.0, 1.0);
  if (std::acos(c) <= tws.gamma) return u;

  Vec6 perp = u - c * tws.w_t;
  const double plen = perp.norm();
  if (plen < 1e-9) {
    perp = deterministic_perpendicular(tws.w_t);
  } else {
    perp /= plen;
  }
  return std::cos(tws.gamma) * tws.w_t + std::sin(tws.gamma) * perp;
}

TaskEnergyReport task_energy(const BoundarySampleSet& samples,
                             const TaskWrenchSpace& tws) {
  TaskEnergyReport report;
  report.per_sample_cos.resize(samples.samples.size(), 0.0);

  const int K = static_cast<int>(samples.samples.size());
#pragma omp parallel for schedule(static)
  for (int k = 0; k < K; ++k) {
    const auto& s = samples.samples[static_cast<std::size_t>(k)];
    const double wn = s.w.norm();
    if (wn < kZeroWrenchTol) {
      // A direction the grasp cannot cover at all is worst-case misalignment,
      // not a free pass: score it as cos = -1 so degenerate configurations
      // that collapse coverage cannot lower the energy.
      report.per_sample_cos[static_cast<std::size_t>(k)] = -1.0;
      continue;
    }
    const Vec6 t = tws_support(s.u, tws);
    report.per_sample_cos[static_cast<std::size_t>(k)] =
        std::clamp(t.dot(s.w) / wn, -1.0, 1.0);
  }

  // Serial reduction in index order keeps the result thread-count invariant.
  double sum = 0.0;
  for (int k = 0; k < K; ++k) {
    const auto& s = samples.samples[static_cast<std::size_t>(k)];
    if (s.w.norm() < kZeroWrenchTol) ++report.skipped;
    sum += report.per_sample_cos[static_cast<std::size_t>(k)];
  }
  report.value = -sum;
  return report;
}

double task_energy_l2(const BoundarySampleSet& samples, const TaskWrenchSpace& tws) {
  double sum = 0.0;
  for (const auto& s : samples.samples) {
    const Vec6 t = tws_support(s.u, tws);
    sum += (t - s.w).squaredNorm();
  }
  return sum;
}

TaskEnergyGradResult task_energy_with_grad(const std::vector<Contact>& contacts,
                                           const TaskWrenchSpace& tws,
                                           const EstimatorConfig& config) {
  TaskEnergyGradResult result;
  result.grads.assign(contacts.size(), ContactGrad{});

  NormalizedContacts norm;
  const std::vector<Contact>* work = &contacts;
  if (config.cpn) {
    norm = normalize_contacts(contacts);
    work = &norm.contacts;
  }

  result.report.per_sample_cos.resize(static_cast<std::size_t>(config.K), 0.0);
  double sum = 0.0;
  for (int k = 0; k < config.K; ++k) {
    const Vec6 u = unit_direction6(config.seed, static_cast<std::uint64_t>(k));
    const Vec6 w = support_gws(u, *work, config.delta);
    const double wn = w.norm();
    if (wn < kZeroWrenchTol) {
      // Same worst-case scoring as task_energy; the gradient contribution is
      // zero since the penalty is constant over the uncovered region.
      ++result.report.skipped;
      result.report.per_sample_cos[static_cast<std::size_t>(k)] = -1.0;
      sum += -1.0;
      continue;
    }
    const Vec6 t = tws_support(u, tws);
    const Vec6 what = w / wn;
    const double cosb = std::clamp(t.dot(what), -1.0, 1.0);
    result.report.per_sample_cos[static_cast<std::size_t>(k)] = cosb;
    sum += cosb;

    // d(-cos beta)/dw = -(t - (t.what) what)/|w|
    const Vec6 z = -(t - t.dot(what) * what) / wn;
    accumulate_boundary_pullback(u, *work, config.delta, z, result.grads);
  }
  result.report.value = -sum;

  if (config.cpn) result.grads = cpn_chain(norm, result.grads);
  return result;
}

std::vector<ContactGrad> task_energy_grad(const std::vector<Contact>& contacts,
                                          const TaskWrenchSpace& tws,
                                          const EstimatorConfig& config) {
  return task_energy_with_grad(contacts, tws, config).grads;
}

}  // namespace gws
