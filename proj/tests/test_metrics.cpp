#include "gws/metrics.hpp"

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

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("exact samples have near-zero rle") {
  const auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.K = 100;
  cfg.delta = 0.0;
  cfg.cpn = false;
  cfg.seed = 2;
  const auto out = estimate_boundary(cs, cfg);
  const auto r = rle(out, cs, 64);
  REQUIRE(r.has_value());
  CHECK(std::abs(*r) <= 0.2e-2);
  CHECK(*r <= 1e-12);  // inscribed oracle can only undershoot
}

TEST_CASE("relaxation pushes rle positive") {
  const auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.K = 100;
  cfg.cpn = false;
  cfg.seed = 2;
  cfg.delta = 30.0 * kPi / 180.0;
  const auto r = rle(estimate_boundary(cs, cfg), cs, 64);
  REQUIRE(r.has_value());
  CHECK(*r > 0.0);
}

TEST_CASE("all-zero samples give no rle") {
  BoundarySampleSet set;
  set.samples.resize(5);
  CHECK_FALSE(rle(set, tetra_contacts(0.5), 8).has_value());
}

TEST_CASE("coarse baseline is worse than the estimator") {
  const auto cs = tetra_contacts(0.5);
  const double base = baseline_rle(cs, 8, 64, 100, 3);
  CHECK(base > 0.2e-2);

  EstimatorConfig cfg;
  cfg.K = 100;
  cfg.delta = 0.0;
  cfg.cpn = false;
  cfg.seed = 4;
  const auto ours = rle(estimate_boundary(cs, cfg), cs, 64);
  REQUIRE(ours.has_value());
  CHECK(std::abs(*ours) < base);
}

TEST_CASE("sparsity decreases with k") {
  const auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.seed = 5;
  double prev = kPi;
  for (int K : {1000, 10000, 100000}) {
    cfg.K = K;
    const double sp = sparsity(estimate_boundary(cs, cfg), 500, 6);
    CHECK(sp > 0.0);
    CHECK(sp < prev);
    prev = sp;
  }
}

TEST_CASE("epsilon from samples respects the fc filter") {
  // A single contact cannot be force closure.
  const std::vector<Contact> one = {
      make_contact(Vec3::Zero(), Vec3(0, 0, 1), FrictionModel::pcf(0.5))};
  EstimatorConfig cfg;
  cfg.K = 500;
  cfg.cpn = false;
  cfg.seed = 7;
  CHECK(epsilon_from_samples(estimate_boundary(one, cfg)) == 0.0);

  const auto cs = tetra_contacts(0.5);
  const auto out = estimate_boundary(cs, cfg);
  const double eps = epsilon_from_samples(out);
  CHECK(eps > 0.0);
  // Sampled min magnitude can only overestimate the oracle min support.
  const double oracleEps = epsilon_oracle(cs, 64, 50000, 8);
  CHECK(eps >= oracleEps - 1e-6);
}

TEST_CASE("adding a contact never decreases epsilon") {
  auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.K = 2000;
  cfg.cpn = false;
  cfg.delta = 0.0;
  cfg.seed = 9;
  const double before = epsilon_from_samples(estimate_boundary(cs, cfg));
  cs.push_back(make_contact(Vec3(0, 0, 1), Vec3(0, 0, -1), FrictionModel::pcf(0.5)));
  const double after = epsilon_from_samples(estimate_boundary(cs, cfg));
  // Per-direction supports only grow under a Minkowski sum; with matched
  // sampling directions the min can only move up.
  CHECK(after >= before - 1e-9);
}

TEST_CASE("whole-sphere epsilon_t matches epsilon") {
  const auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.K = 2000;
  cfg.cpn = false;
  cfg.seed = 11;
  const auto out = estimate_boundary(cs, cfg);
  TaskWrenchSpace tws;
  tws.gamma = kPi;
  const auto et = epsilon_t_from_samples(out, tws);
  REQUIRE(et.has_value());
  CHECK(*et == doctest::Approx(epsilon_from_samples(out)).epsilon(1e-9));
}

TEST_CASE("uncovered sector drives epsilon_t to zero") {
  // A single +z contact cannot push in -z, so a sector around -z fails.
  const std::vector<Contact> one = {
      make_contact(Vec3::Zero(), Vec3(0, 0, 1), FrictionModel::pcf(0.5))};
  EstimatorConfig cfg;
  cfg.K = 3000;
  cfg.cpn = false;
  cfg.delta = 15.0 * kPi / 180.0;
  cfg.seed = 12;
  const auto out = estimate_boundary(one, cfg);
  TaskWrenchSpace tws;
  tws.w_t = Vec6::Zero();
  tws.w_t[2] = -1.0;  // demand -z force
  tws.gamma = 15.0 * kPi / 180.0;
  const auto et = epsilon_t_from_samples(out, tws);
  REQUIRE(et.has_value());
  CHECK(*et == 0.0);
}

TEST_CASE("axis-aligned single contact has unit epsilon_t") {
  const std::vector<Contact> one = {
      make_contact(Vec3::Zero(), Vec3(0, 0, 1), FrictionModel::pcf(0.5))};
  EstimatorConfig cfg;
  cfg.K = 30000;
  cfg.cpn = false;
  cfg.delta = 15.0 * kPi / 180.0;
  cfg.seed = 13;
  const auto out = estimate_boundary(one, cfg);
  TaskWrenchSpace tws;
  tws.w_t = Vec6::Zero();
  tws.w_t[2] = 1.0;
  tws.gamma = 15.0 * kPi / 180.0;
  const auto et = epsilon_t_from_samples(out, tws);
  REQUIRE(et.has_value());
  CHECK(*et >= 1.0 - 1e-9);
  CHECK(*et <= 1.06);
}

TEST_CASE("tight sector at small K falls back to probe support") {
  // With K = 200 no sample direction lands inside a 15-degree 6D sector, so
  // the estimate comes from the hull support over the sector probes and must
  // still be positive for a force-closure grasp.
  const auto cs = tetra_contacts(0.5);
  EstimatorConfig cfg;
  cfg.K = 200;
  cfg.cpn = false;
  cfg.seed = 14;
  const auto out = estimate_boundary(cs, cfg);
  TaskWrenchSpace tws;
  tws.w_t = Vec6::Zero();
  tws.w_t[2] = 1.0;
  tws.gamma = 15.0 * kPi / 180.0;
  const auto et = epsilon_t_from_samples(out, tws);
  REQUIRE(et.has_value());
  CHECK(*et > 0.0);
}

TEST_CASE("bench runner is deterministic") {
  const TriMesh mesh = make_icosphere(1.0, 2);
  BenchCase bc;
  bc.case_id = "det";
  bc.mesh = &mesh;
  bc.mesh_name = "sphere";
  bc.m = 5;
  bc.est.K = 2000;
  bc.est.seed = 21;
  bc.rle_subsample = 20;
  bc.sp_probes = 100;
  bc.time_repeats = 1;
  const auto a = run_bench_case(bc);
  const auto b = run_bench_case(bc);
  CHECK(a.rle_e2 == b.rle_e2);
  CHECK(a.sp_rad == b.sp_rad);
  CHECK(a.eps == b.eps);
  CHECK(a.fc == b.fc);
  const std::string rowA = metric_csv_row(a);
  const std::string rowB = metric_csv_row(b);
  // All columns except the timing one must match byte for byte.
  CHECK(rowA.substr(0, rowA.rfind(',', rowA.rfind(',') - 1)) ==
        rowB.substr(0, rowB.rfind(',', rowB.rfind(',') - 1)));
}

TEST_CASE("csv header matches the documented columns") {
  CHECK(metric_csv_header() ==
        "case_id,mesh,m,mu,model,delta_deg,K,d_oracle,rle_e2,sp_rad,eps,eps_t,time_ms,fc");
}

TEST_SUITE_END();
