#include "gws/taskspace.hpp"

#include "gws/contacts.hpp"
#include "gws/estimator.hpp"
#include "gws/oracle.hpp"
#include "gws/sampling.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace gws;

namespace {

std::vector<Contact> tetra_contacts(double mu) {
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Vec3> ps = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::vector<Contact> cs;
  for (const auto& p : ps) cs.push_back(make_contact(p, (-p).eval(), FrictionModel::pcf(mu)));
  return cs;
}

Vec6 force_dir(double x, double y, double z) {
  Vec6 u = Vec6::Zero();
  u[0] = x;
  u[1] = y;
  u[2] = z;
  return u;
}

}  // namespace

TEST_SUITE_BEGIN("taskspace");

TEST_CASE("whole-sphere sector is the identity") {
  TaskWrenchSpace tws;
  tws.gamma = kPi;
  for (int k = 0; k < 100; ++k) {
    const Vec6 u = unit_direction6(801, static_cast<std::uint64_t>(k));
    CHECK((tws_support(u, tws) - u).norm() == 0.0);
  }
}

TEST_CASE("interior directions map to themselves") {
  TaskWrenchSpace tws;
  tws.w_t = force_dir(0, 0, 1);
  tws.gamma = 0.5;
  CHECK((tws_support(tws.w_t, tws) - tws.w_t).norm() < 1e-15);
}

TEST_CASE("exterior direction clamps to the sector rim") {
  TaskWrenchSpace tws;
  tws.w_t = force_dir(0, 0, 1);
  tws.gamma = 30.0 * kPi / 180.0;
  const Vec6 u = force_dir(1, 0, 0);
  const Vec6 t = tws_support(u, tws);
  const Vec6 want = force_dir(0.5, 0, std::sqrt(3.0) / 2.0);
  CHECK((t - want).norm() < 1e-12);
}

TEST_CASE("rim point beats a brute-force sector search") {
  TaskWrenchSpace tws;
  tws.w_t = unit_direction6(802, 0);
  tws.gamma = 40.0 * kPi / 180.0;
  const Vec6 u = unit_direction6(802, 1);
  const Vec6 t = tws_support(u, tws);
  double best = -2.0;
  // 10^6 sector samples cannot beat the analytic maximizer.
  for (int k = 0; k < 1000000; ++k) {
    SplitMix64 g(substream(803, static_cast<std::uint64_t>(k)));
    Vec6 z;
    for (int i = 0; i < 6; ++i) z[i] = g.next_normal();
    Vec6 perp = (z - z.dot(tws.w_t) * tws.w_t).normalized();
    const double phi = tws.gamma * g.next_unit();
    const Vec6 cand = std::cos(phi) * tws.w_t + std::sin(phi) * perp;
    best = std::max(best, u.dot(cand));
  }
  CHECK(u.dot(t) >= best - 1e-9);
}

TEST_CASE("support stays inside the sector and on the sphere") {
  TaskWrenchSpace tws;
  tws.w_t = unit_direction6(804, 0);
  tws.gamma = 1.0;
  for (int k = 0; k < 2000; ++k) {
    const Vec6 u = unit_direction6(805, static_cast<std::uint64_t>(k));
    const Vec6 t = tws_support(u, tws);
    CHECK(std::abs(t.norm() - 1.0) < 1e-9);
    CHECK(std::acos(std::clamp(t.dot(tws.w_t), -1.0, 1.0)) <= tws.gamma + 1e-9);
  }
}

TEST_CASE("antipodal tie is deterministic") {
  TaskWrenchSpace tws;
  tws.w_t = force_dir(0, 0, 1);
  tws.gamma = 0.3;
  const Vec6 u = -tws.w_t;
  const Vec6 a = tws_support(u, tws);
  const Vec6 b = tws_support(u, tws);
  CHECK((a - b).norm() == 0.0);
  CHECK(std::abs(a.norm() - 1.0) < 1e-9);
}

TEST_CASE("perfect alignment gives minus K") {
  BoundarySampleSet set;
  TaskWrenchSpace tws;
  tws.gamma = kPi;
  for (int k = 0; k < 64; ++k) {
    WrenchSample s;
    s.u = unit_direction6(806, static_cast<std::uint64_t>(k));
    s.w = 3.7 * s.u;  // parallel to its own target tws_support(u) = u
    set.samples.push_back(s);
  }
  const auto rep = task_energy(set, tws);
  CHECK(rep.value == doctest::Approx(-64.0).epsilon(1e-12));
  CHECK(rep.skipped == 0);
}

TEST_CASE("all-zero samples score as worst-case misalignment") {
  BoundarySampleSet set;
  for (int k = 0; k < 10; ++k) {
    WrenchSample s;
    s.u = unit_direction6(807, static_cast<std::uint64_t>(k));
    s.w = Vec6::Zero();
    set.samples.push_back(s);
  }
  const auto rep = task_energy(set, TaskWrenchSpace{});
  CHECK(rep.value == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(rep.skipped == 10);
  for (double c : rep.per_sample_cos) CHECK(c == -1.0);
}

TEST_CASE("force-closure tetra grasp scores strongly") {
  const auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.K = 4000;
  cfg.delta = 0.0;
  cfg.seed = 3;
  const auto out = estimate_boundary(cs, cfg);
  TaskWrenchSpace tws;
  tws.gamma = kPi;
  const auto rep = task_energy(out, tws);
  CHECK(rep.value / cfg.K <= -0.8);
}

TEST_CASE("cosine energy is invariant to wrench scaling, l2 is not") {
  const auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.K = 500;
  cfg.seed = 8;
  auto out = estimate_boundary(cs, cfg);
  TaskWrenchSpace tws;
  tws.gamma = kPi;
  const double e0 = task_energy(out, tws).value;
  const double l0 = task_energy_l2(out, tws);
  for (auto& s : out.samples) s.w *= 5.0;
  CHECK(task_energy(out, tws).value == doctest::Approx(e0).epsilon(1e-9));
  CHECK(std::abs(task_energy_l2(out, tws) - l0) > 1e-3);
}

TEST_CASE("energy bounds hold") {
  const auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.K = 300;
  cfg.seed = 12;
  const auto out = estimate_boundary(cs, cfg);
  TaskWrenchSpace tws;
  tws.w_t = unit_direction6(808, 0);
  tws.gamma = 0.4;
  const auto rep = task_energy(out, tws);
  CHECK(rep.value >= -static_cast<double>(cfg.K));
  CHECK(rep.value <= static_cast<double>(cfg.K));
  for (double c : rep.per_sample_cos) {
    CHECK(c >= -1.0);
    CHECK(c <= 1.0);
  }
  double sum = 0.0;
  for (double c : rep.per_sample_cos) sum += c;
  CHECK(rep.value == doctest::Approx(-sum).epsilon(1e-12));
}

TEST_CASE("rotation equivariance of the task energy") {
  // Rotating contacts, w_t, and the sample directions by the same block
  // rotation leaves E_t unchanged.
  const Eigen::AngleAxisd aa(0.7, Vec3(0.3, -1.0, 0.5).normalized());
  const Mat3 R = aa.toRotationMatrix();
  auto blockRotate = [&](const Vec6& v) {
    Vec6 out;
    out.head<3>() = R * v.head<3>();
    out.tail<3>() = R * v.tail<3>();
    return out;
  };

  const auto cs = tetra_contacts(0.5);
  std::vector<Contact> rcs;
  for (const auto& c : cs)
    rcs.push_back(make_contact(R * c.p, R * c.n, c.friction));

  TaskWrenchSpace tws;
  tws.w_t = unit_direction6(809, 0);
  tws.gamma = 0.8;
  TaskWrenchSpace rtws;
  rtws.w_t = blockRotate(tws.w_t);
  rtws.gamma = tws.gamma;

  const int K = 400;
  double e = 0.0, re = 0.0;
  for (int k = 0; k < K; ++k) {
    const Vec6 u = unit_direction6(810, static_cast<std::uint64_t>(k));
    const Vec6 ru = blockRotate(u);
    const Vec6 w = support_gws(u, cs, 0.1);
    const Vec6 rw = support_gws(ru, rcs, 0.1);
    CHECK((rw - blockRotate(w)).norm() < 1e-9);
    if (w.norm() > 1e-9) {
      e += tws_support(u, tws).dot(w) / w.norm();
      re += tws_support(ru, rtws).dot(rw) / rw.norm();
    }
  }
  CHECK(re == doctest::Approx(e).epsilon(1e-9));
}

TEST_SUITE_END();
