#include "gws/metrics.hpp"

#include "gws/estimator.hpp"
#include "gws/oracle.hpp"
#include "gws/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gws {

std::optional<double> rle(const BoundarySampleSet& samples,
                          std::span<const Contact> contacts, int d_oracle) {
  const int K = static_cast<int>(samples.samples.size());
  std::vector<double> err(static_cast<std::size_t>(K),
                          std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < K; ++k) {
    const Vec6& w = samples.samples[static_cast<std::size_t>(k)].w;
    if (w.norm() < 1e-9) continue;
    const LPResult res = boundary_ray(w, contacts, d_oracle);
    if (res.status == LPStatus::Optimal && res.q > 1e-12)
      err[static_cast<std::size_t>(k)] = (res.q - 1.0) / res.q;
  }
  double sum = 0.0;
  int n = 0;
  for (double e : err) {
    if (!std::isnan(e)) {
      sum += e;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

double baseline_rle(std::span<const Contact> contacts, int d_base, int d_oracle,
                    int n_dirs, std::uint64_t seed) {
  std::vector<double> err(static_cast<std::size_t>(n_dirs),
                          std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n_dirs; ++k) {
    const Vec6 u = unit_direction6(seed ^ 0xb1ULL, static_cast<std::uint64_t>(k));
    // Ray-boundary point of the coarse model, measured against the fine one.
    const LPResult coarse = boundary_ray(u, contacts, d_base);
    if (coarse.status != LPStatus::Optimal || coarse.q < 1e-9) continue;
    const LPResult fine = boundary_ray((coarse.q * u).eval(), contacts, d_oracle);
    if (fine.status == LPStatus::Optimal && fine.q > 1e-12)
      err[static_cast<std::size_t>(k)] = (fine.q - 1.0) / fine.q;
  }
  double sum = 0.0;
  int n = 0;
  for (double e : err) {
    if (!std::isnan(e)) {
      sum += e;
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

double sparsity(const BoundarySampleSet& samples, int probes, std::uint64_t seed) {
  // Normalized sample directions, zero-norm samples excluded.
  std::vector<Vec6> dirs;
  dirs.reserve(samples.samples.size());
  for (const auto& s : samples.samples) {
    const double n = s.w.norm();
    if (n > 1e-12) dirs.push_back(s.w / n);
  }
  if (dirs.empty()) return kPi;
  const int K = static_cast<int>(dirs.size());
  Eigen::MatrixXd D(6, K);
  for (int k = 0; k < K; ++k) D.col(k) = dirs[static_cast<std::size_t>(k)];

  std::vector<double> minAngle(static_cast<std::size_t>(probes));
  constexpr int kProbeBlock = 512;
  constexpr int kSampleBlock = 16384;
#pragma omp parallel for schedule(dynamic)
  for (int p0 = 0; p0 < probes; p0 += kProbeBlock) {
    const int pb = std::min(kProbeBlock, probes - p0);
    Eigen::MatrixXd P(pb, 6);
    for (int i = 0; i < pb; ++i)
      P.row(i) = unit_direction6(seed ^ 0x5aULL,
                                 static_cast<std::uint64_t>(p0 + i))
                     .transpose();
    Eigen::VectorXd best = Eigen::VectorXd::Constant(pb, -1.0);
    for (int s0 = 0; s0 < K; s0 += kSampleBlock) {
      const int sb = std::min(kSampleBlock, K - s0);
      const Eigen::MatrixXd block = P * D.middleCols(s0, sb);  // pb x sb
      best = best.cwiseMax(block.rowwise().maxCoeff());
    }
    for (int i = 0; i < pb; ++i)
      minAngle[static_cast<std::size_t>(p0 + i)] =
          std::acos(std::clamp(best[i], -1.0, 1.0));
  }
  double sum = 0.0;
  for (double a : minAngle) sum += a;
  return sum / probes;
}

double epsilon_from_samples(const BoundarySampleSet& samples, int fc_trials) {
  std::vector<Vec6> ws;
  ws.reserve(samples.samples.size());
  for (const auto& s : samples.samples) ws.push_back(s.w);
  if (!force_closure_simplex_check(ws, fc_trials, samples.config.seed ^ 0xfcULL))
    return 0.0;
  double eps = std::numeric_limits<double>::infinity();
  for (const auto& s : samples.samples) eps = std::min(eps, s.w.norm());
  return std::isfinite(eps) ? eps : 0.0;
}

std::optional<double> epsilon_t_from_samples(const BoundarySampleSet& samples,
                                             const TaskWrenchSpace& tws,
                                             int probes) {
  // Sampled support function of the boundary set.
  auto support = [&](const Vec6& u) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples.samples) best = std::max(best, u.dot(s.w));
    return best;
  };

  if (samples.samples.empty()) return std::nullopt;

  // Probe the sector for uncovered directions (w_t itself is probe 0).
  const std::uint64_t pseed = samples.config.seed ^ 0xe7ULL;
  double minSupport = std::numeric_limits<double>::infinity();
  for (int k = 0; k < probes; ++k) {
    Vec6 u;
    if (k == 0) {
      u = tws.w_t;
    } else {
      SplitMix64 g(substream(pseed, static_cast<std::uint64_t>(k)));
      Vec6 z;
      for (int i = 0; i < 6; ++i) z[i] = g.next_normal();
      Vec6 perp = z - z.dot(tws.w_t) * tws.w_t;
      const double pn = perp.norm();
      if (pn < 1e-12) continue;
      perp /= pn;
      // Bias toward the sector rim, where the angular measure concentrates.
      const double phi = tws.gamma * std::pow(g.next_unit(), 0.2);
      u = std::cos(phi) * tws.w_t + std::sin(phi) * perp;
    }
    const double h = support(u);
    if (h <= 0.0) return 0.0;
    minSupport = std::min(minSupport, h);
  }

  const double cosGamma = std::cos(std::min(tws.gamma, kPi));
  double eps = std::numeric_limits<double>::infinity();
  for (const auto& s : samples.samples) {
    const double n = s.w.norm();
    if (n < 1e-12) continue;
    if (s.w.dot(tws.w_t) / n >= cosGamma - 1e-12) eps = std::min(eps, n);
  }
  // For tight sectors at small K no sample direction may land inside the
  // sector; the min hull support over the probes is a conservative stand-in.
  if (!std::isfinite(eps)) return minSupport;
  return eps;
}

std::vector<Contact> sample_contacts(const TriMesh& mesh, int m,
                                     const FrictionModel& friction,
                                     std::uint64_t seed) {
  const auto pts = mesh.sample_surface(m, seed);
  std::vector<Contact> out;
  out.reserve(pts.size());
  for (const auto& sp : pts) out.push_back(make_contact(sp.position, sp.inward_normal, friction));
  return out;
}

MetricReport run_bench_case(const BenchCase& bc, std::vector<Contact>* picked_contacts) {
  MetricReport r;
  r.case_id = bc.case_id;
  r.mesh_name = bc.mesh_name;
  r.m = bc.m;
  r.mu = bc.friction.mu;
  r.model = bc.friction.kind == ContactModel::PCF ? "pcf" : "sfc";
  r.delta_deg = bc.est.delta * 180.0 / kPi;
  r.K = bc.est.K;
  r.d_oracle = bc.d_oracle;

  std::vector<Contact> contacts;
  BoundarySampleSet samples;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= bc.max_resample)
      throw std::runtime_error("run_bench_case: no force-closure contact set found for " +
                               bc.case_id);
    contacts = sample_contacts(*bc.mesh, bc.m, bc.friction,
                               bc.est.seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b9ULL);
    samples = estimate_boundary(contacts, bc.est);
    std::vector<Vec6> ws;
    ws.reserve(samples.samples.size());
    for (const auto& s : samples.samples) ws.push_back(s.w);
    r.fc = force_closure_simplex_check(ws, bc.fc_trials, bc.est.seed ^ 0xfcULL);
    if (r.fc || !bc.require_fc) break;
  }

  // Timing: median of repeats, estimation only.
  std::vector<double> times;
  for (int rep = 0; rep < bc.time_repeats; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    const BoundarySampleSet tmp = estimate_boundary(contacts, bc.est);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    (void)tmp;
  }
  std::sort(times.begin(), times.end());
  r.time_ms = times[times.size() / 2];

  // RLE on a subsample of boundary points.
  BoundarySampleSet sub = samples;
  if (static_cast<int>(sub.samples.size()) > bc.rle_subsample) {
    const std::size_t stride = sub.samples.size() / static_cast<std::size_t>(bc.rle_subsample);
    std::vector<WrenchSample> picked;
    for (std::size_t i = 0; i < sub.samples.size() && picked.size() < static_cast<std::size_t>(bc.rle_subsample);
         i += stride)
      picked.push_back(sub.samples[i]);
    sub.samples = std::move(picked);
  }
  const auto contactsForOracle = samples.cpn_applied
                                     ? normalize_contacts(contacts).contacts
                                     : contacts;
  if (picked_contacts) *picked_contacts = contactsForOracle;
  r.rle_e2 = rle(sub, contactsForOracle, bc.d_oracle).value_or(0.0) * 100.0;
  r.sp_rad = sparsity(samples, bc.sp_probes, bc.est.seed);
  r.eps = epsilon_from_samples(samples, bc.fc_trials);
  TaskWrenchSpace fcTws;  // whole sphere
  r.eps_t = epsilon_t_from_samples(samples, fcTws).value_or(0.0);
  return r;
}

std::string metric_csv_header() {
  return "case_id,mesh,m,mu,model,delta_deg,K,d_oracle,rle_e2,sp_rad,eps,eps_t,time_ms,fc";
}

std::string metric_csv_row(const MetricReport& r) {
  std::ostringstream ss;
  ss.precision(12);
  ss << r.case_id << ',' << r.mesh_name << ',' << r.m << ',' << r.mu << ',' << r.model
     << ',' << r.delta_deg << ',' << r.K << ',' << r.d_oracle << ',' << r.rle_e2 << ','
     << r.sp_rad << ',' << r.eps << ',' << r.eps_t << ',' << r.time_ms << ','
     << (r.fc ? 1 : 0);
  return ss.str();
}

}  // namespace gws
