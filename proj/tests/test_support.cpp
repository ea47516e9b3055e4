#include "gws/support.hpp"

#include "gws/contacts.hpp"
#include "gws/estimator.hpp"
#include "gws/sampling.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

using namespace gws;

namespace {

// Independent oracle: brute-force argmax of u.f over a dense discretization of
// the unit-height Coulomb cone boundary (rim circle, axis tip, origin).
double brute_support_pcf(const Vec3& u, double mu, int n = 100000) {
  double best = 0.0;  // origin is always a candidate
  best = std::max(best, u[0]);  // axis tip (1,0,0)
  for (int j = 0; j < n; ++j) {
    const double phi = 2.0 * kPi * j / n;
    const Vec3 f(1.0, mu * std::cos(phi), mu * std::sin(phi));
    best = std::max(best, u.dot(f));
  }
  return best;
}

// Dense discretization of the 4D SFC cone boundary: the f1 = 1 ellipsoid
// (radii mu1, mu1, mu2), plus tip and origin.
double brute_support_sfc(const Vec4& u, double mu1, double mu2, int n = 400) {
  double best = std::max(0.0, u[0]);
  for (int a = 0; a <= n; ++a) {
    const double th = kPi * a / n;
    for (int b = 0; b < 2 * n; ++b) {
      const double ph = kPi * b / n;
      const Vec4 f(1.0, mu1 * std::sin(th) * std::cos(ph),
                   mu1 * std::sin(th) * std::sin(ph), mu2 * std::cos(th));
      best = std::max(best, u.dot(f));
    }
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("support");

TEST_CASE("opposite axis direction maps to the origin") {
  for (double mu : {0.2, 0.5, 1.0, 3.0})
    CHECK(support_pcf(Vec3(-1, 0, 0), mu, 0.0).norm() == 0.0);
}

TEST_CASE("pure tangential direction picks the rim point") {
  const Vec3 s = support_pcf(Vec3(0, 1, 0), 0.5, 0.0);
  CHECK((s - Vec3(1, 0.5, 0)).norm() < 1e-12);
}

TEST_CASE("axis direction returns the tip even when relaxed") {
  const Vec3 s = support_pcf(Vec3(1, 0, 0), 1.0, 15.0 * kPi / 180.0);
  CHECK((s - Vec3(1, 0, 0)).norm() < 1e-12);
}

TEST_CASE("exact pcf support matches the brute-force oracle") {
  for (int k = 0; k < 200; ++k) {
    const Vec3 u = unit_direction3(101, static_cast<std::uint64_t>(k));
    const double mu = 0.2 + 0.8 * (k % 5) / 4.0;
    const Vec3 s = support_pcf(u, mu, 0.0);
    const double got = u.dot(s);
    const double want = brute_support_pcf(u, mu);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
    CHECK(got >= -1e-12);
  }
}

TEST_CASE("pcf support is homogeneous of degree zero in u") {
  const Vec3 u(0.3, -0.8, 0.2);
  const Vec3 a = support_pcf(u, 0.7, 0.1);
  const Vec3 b = support_pcf((42.0 * u).eval(), 0.7, 0.1);
  CHECK((a - b).norm() < 1e-12);
}

TEST_CASE("vanishing direction gives the origin") {
  CHECK(support_pcf(Vec3::Zero(), 0.5, 0.2).norm() == 0.0);
  CHECK(support_sfc(Vec4::Zero(), 0.5, 0.2, 0.2).norm() == 0.0);
}

TEST_CASE("relaxation only shrinks the support value") {
  const std::vector<double> deltas = {0.0, 5.0, 15.0, 30.0, 45.0};
  for (int k = 0; k < 500; ++k) {
    const Vec3 u = unit_direction3(55, static_cast<std::uint64_t>(k));
    double prev = std::numeric_limits<double>::infinity();
    for (double deg : deltas) {
      const double val = u.dot(support_pcf(u, 0.5, deg * kPi / 180.0));
      CHECK(val <= prev + 1e-12);
      CHECK(val >= -1e-12);
      prev = val;
    }
  }
}

TEST_CASE("the origin branch is never relaxed") {
  // Directions with theta >= alpha must map to o for every delta.
  const double mu = 0.5;
  const double alpha = pcf_cone_angle(mu);
  for (double deg : {0.0, 15.0, 30.0}) {
    for (double extra : {0.0, 0.1, 0.5}) {
      const double theta = alpha + extra;
      const Vec3 u(std::cos(theta), std::sin(theta), 0.0);
      CHECK(support_pcf(u, mu, deg * kPi / 180.0).norm() == 0.0);
    }
  }
}

TEST_CASE("relaxed pcf interpolates continuously across the tip band") {
  const double mu = 0.5, del = 15.0 * kPi / 180.0;
  auto at = [&](double theta) {
    const Vec3 u(std::cos(theta), std::sin(theta), 0.0);
    return support_pcf(u, mu, del);
  };
  CHECK((at(1e-9) - Vec3(1, 0, 0)).norm() < 1e-6);          // matches tip
  CHECK((at(del - 1e-9) - at(del + 1e-9)).norm() < 1e-6);   // matches rim side
  const double alpha = pcf_cone_angle(mu);
  CHECK(at(alpha - 1e-9).norm() < 1e-6);                    // shrinks to origin
}

TEST_CASE("sfc axis direction returns the tip") {
  const Vec4 s = support_sfc(Vec4(1, 0, 0, 0), 0.5, 0.2, 0.0);
  CHECK((s - Vec4(1, 0, 0, 0)).norm() < 1e-12);
}

TEST_CASE("sfc pure tangential direction saturates mu1") {
  const Vec4 s = support_sfc(Vec4(0, 1, 0, 0), 0.5, 0.2, 0.0);
  CHECK((s - Vec4(1, 0.5, 0, 0)).norm() < 1e-12);
  CHECK(Vec4(0, 1, 0, 0).dot(s) == doctest::Approx(0.5));
}

TEST_CASE("exact sfc support matches the brute-force oracle") {
  for (int k = 0; k < 60; ++k) {
    SplitMix64 g(substream(202, static_cast<std::uint64_t>(k)));
    Vec4 u;
    for (int i = 0; i < 4; ++i) u[i] = g.next_normal();
    u.normalize();
    const double mu1 = 0.3 + 0.4 * g.next_unit();
    const double mu2 = 0.1 + 0.2 * g.next_unit();
    const double got = u.dot(support_sfc(u, mu1, mu2, 0.0));
    const double want = brute_support_sfc(u, mu1, mu2);
    CHECK(got == doctest::Approx(want).epsilon(2e-4));
    CHECK(got >= want - 1e-9);  // discretized oracle only undershoots
  }
}

TEST_CASE("interior sfc support points sit on the ellipsoid rim") {
  for (int k = 0; k < 300; ++k) {
    SplitMix64 g(substream(203, static_cast<std::uint64_t>(k)));
    Vec4 u;
    for (int i = 0; i < 4; ++i) u[i] = g.next_normal();
    const double mu1 = 0.5, mu2 = 0.2;
    const Vec4 v = support_sfc(u, mu1, mu2, 0.0);
    if (v.norm() < 1e-9 || (v - Vec4(1, 0, 0, 0)).norm() < 1e-9) continue;
    const double lhs = (v[1] * v[1] + v[2] * v[2]) / (mu1 * mu1) + v[3] * v[3] / (mu2 * mu2);
    CHECK(lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("support point maximality over random interior points") {
  // Prop 1: u.s(u) >= u.x for any x in the set.
  for (int k = 0; k < 50; ++k) {
    const Vec3 u = unit_direction3(303, static_cast<std::uint64_t>(k));
    const double mu = 0.6;
    const Vec3 s = support_pcf(u, mu, 0.0);
    SplitMix64 g(substream(304, static_cast<std::uint64_t>(k)));
    for (int j = 0; j < 1000; ++j) {
      const double f1 = g.next_unit();
      const double rad = mu * f1 * std::sqrt(g.next_unit());
      const double phi = 2.0 * kPi * g.next_unit();
      const Vec3 x(f1, rad * std::cos(phi), rad * std::sin(phi));
      CHECK(u.dot(s) >= u.dot(x) - 1e-9);
    }
  }
}

TEST_CASE("minkowski additivity of contact supports") {
  // Prop 3: the support of the two-contact sum is the sum of supports.
  const Contact c1 = make_contact(Vec3(0.2, 0.1, -0.3), unit_direction3(401, 0),
                                  FrictionModel::pcf(0.5));
  const Contact c2 = make_contact(Vec3(-0.4, 0.3, 0.2), unit_direction3(401, 1),
                                  FrictionModel::pcf(0.8));
  const std::vector<Contact> both = {c1, c2};
  for (int k = 0; k < 1000; ++k) {
    const Vec6 u = unit_direction6(402, static_cast<std::uint64_t>(k));
    const Vec6 lhs = support_gws(u, both, 0.0);
    const Vec6 rhs = support_contact_wrench(u, c1, 0.0) + support_contact_wrench(u, c2, 0.0);
    CHECK((lhs - rhs).norm() < 1e-9);
  }
}

TEST_CASE("linear-image rule for support mappings") {
  // Prop 4: s_{C(A)}(u) = C s_A(C^T u) on finite point clouds.
  for (int rep = 0; rep < 1000; ++rep) {
    SplitMix64 g(substream(505, static_cast<std::uint64_t>(rep)));
    Eigen::Matrix<double, 6, 3> C;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 3; ++j) C(i, j) = g.next_normal();
    std::vector<Vec3> A(12);
    for (auto& a : A)
      a = Vec3(g.next_normal(), g.next_normal(), g.next_normal());
    const Vec6 u = unit_direction6(506, static_cast<std::uint64_t>(rep));

    // Left side: argmax of u . (C a) over the image.
    double bestVal = -std::numeric_limits<double>::infinity();
    Vec6 bestPt = Vec6::Zero();
    for (const auto& a : A) {
      const Vec6 ca = C * a;
      if (u.dot(ca) > bestVal) {
        bestVal = u.dot(ca);
        bestPt = ca;
      }
    }
    // Right side: C applied to the argmax of (C^T u) . a.
    const Vec3 y = C.transpose() * u;
    double bestVal2 = -std::numeric_limits<double>::infinity();
    Vec3 bestA = Vec3::Zero();
    for (const auto& a : A) {
      if (y.dot(a) > bestVal2) {
        bestVal2 = y.dot(a);
        bestA = a;
      }
    }
    CHECK(std::abs(bestVal - u.dot(C * bestA)) < 1e-9);
    CHECK((bestPt - C * bestA).norm() < 1e-9);
  }
}

TEST_SUITE_END();
