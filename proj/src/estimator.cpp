#include "gws/estimator.hpp"

#include "gws/sampling.hpp"
#include "gws/support.hpp"

#include <stdexcept>

namespace gws {

Vec6 support_gws(const Vec6& u, std::span<const Contact> contacts, double delta) {
  Vec6 w = Vec6::Zero();
  for (const auto& c : contacts) w += support_contact_wrench(u, c, delta);
  return w;
}

namespace {

void validate_config(const EstimatorConfig& config, const std::vector<Contact>& contacts) {
  if (config.K < 1) throw std::invalid_argument("estimate_boundary: K must be >= 1");
  if (config.delta < 0.0) throw std::invalid_argument("estimate_boundary: delta must be >= 0");
  if (contacts.empty()) throw std::invalid_argument("estimate_boundary: need at least one contact");
  for (const auto& c : contacts) {
    const double alpha = c.friction.kind == ContactModel::PCF
                             ? pcf_cone_angle(c.friction.mu)
                             : kPi / 2.0;  // SFC alpha >= pi/2 for any direction
    if (config.delta >= 0.5 * alpha)
      throw std::invalid_argument("estimate_boundary: delta must be < alpha/2");
  }
}

template <bool Parallel>
BoundarySampleSet run_estimator(const std::vector<Contact>& contacts,
                                const EstimatorConfig& config) {
  validate_config(config, contacts);

  BoundarySampleSet out;
  out.config = config;
  std::vector<Contact> work = contacts;
  if (config.cpn) {
    NormalizedContacts norm = normalize_contacts(contacts);
    work = std::move(norm.contacts);
    out.cpn_center = norm.center;
    out.cpn_scale = norm.scale;
    out.cpn_applied = true;
    out.cpn_degenerate = norm.degenerate;
  }

  out.samples.resize(static_cast<std::size_t>(config.K));
  const int K = config.K;
  const double delta = config.delta;
  const Contact* cdata = work.data();
  const std::size_t m = work.size();

#pragma omp parallel for schedule(static) if (Parallel)
  for (int k = 0; k < K; ++k) {
    WrenchSample& slot = out.samples[static_cast<std::size_t>(k)];
    slot.u = unit_direction6(config.seed, static_cast<std::uint64_t>(k));
    slot.w = support_gws(slot.u, std::span<const Contact>(cdata, m), delta);
  }
  return out;
}

}  // namespace

BoundarySampleSet estimate_boundary(const std::vector<Contact>& contacts,
                                    const EstimatorConfig& config) {
  return run_estimator<true>(contacts, config);
}

BoundarySampleSet estimate_boundary_serial(const std::vector<Contact>& contacts,
                                           const EstimatorConfig& config) {
  return run_estimator<false>(contacts, config);
}

}  // namespace gws
