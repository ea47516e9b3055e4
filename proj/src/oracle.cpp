#include "gws/oracle.hpp"

#include "gws/contacts.hpp"
#include "gws/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace gws {

DiscretizedCone cone_edges(const FrictionModel& friction, int d) {
  if (d < 3) throw std::invalid_argument("cone_edges: d must be >= 3");
  DiscretizedCone cone;
  if (friction.kind == ContactModel::PCF) {
    cone.edges.resize(3, d);
    for (int j = 0; j < d; ++j) {
      const double a = 2.0 * kPi * j / d;
      cone.edges.col(j) =
          Vec3(1.0, friction.mu * std::cos(a), friction.mu * std::sin(a));
    }
  } else {
    // Fibonacci points on the unit 2-sphere, stretched to the SFC boundary
    // ellipsoid (radii mu1, mu1, mu2) at f1 = 1.
    cone.edges.resize(4, d);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < d; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / d;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * j;
      cone.edges.col(j) = Vec4(1.0, friction.mu * r * std::cos(a),
                               friction.mu * r * std::sin(a), friction.mu_torsion * z);
    }
  }
  return cone;
}

std::vector<Eigen::Matrix<double, 6, Eigen::Dynamic>> wrench_edges(
    std::span<const Contact> contacts, int d) {
  std::vector<Eigen::Matrix<double, 6, Eigen::Dynamic>> out;
  out.reserve(contacts.size());
  for (const auto& c : contacts) {
    const DiscretizedCone cone = cone_edges(c.friction, d);
    out.push_back(grasp_matrix(c) * cone.edges);
  }
  return out;
}

double oracle_support(const Vec6& u,
                      const std::vector<Eigen::Matrix<double, 6, Eigen::Dynamic>>& edges) {
  double total = 0.0;
  for (const auto& we : edges) {
    const double best = (u.transpose() * we).maxCoeff();
    if (best > 0.0) total += best;
  }
  return total;
}

LPResult boundary_ray(const Vec6& w, std::span<const Contact> contacts, int d) {
  if (w.norm() <= 0.0) throw std::invalid_argument("boundary_ray: zero wrench");
  const auto edges = wrench_edges(contacts, d);
  const int m = static_cast<int>(contacts.size());
  int nLambda = 0;
  for (const auto& we : edges) nLambda += static_cast<int>(we.cols());

  // Variables: [q, lambda...]. Maximize q with q w = sum_i W_i lambda_i.
  LinearProgram lp;
  const int n = 1 + nLambda;
  lp.A_eq = Eigen::MatrixXd::Zero(6, n);
  lp.b_eq = Eigen::VectorXd::Zero(6);
  lp.A_eq.col(0) = w;
  int col = 1;
  for (const auto& we : edges) {
    lp.A_eq.block(0, col, 6, we.cols()) = -we;
    col += static_cast<int>(we.cols());
  }
  lp.A_ub = Eigen::MatrixXd::Zero(m, n);
  lp.b_ub = Eigen::VectorXd::Ones(m);
  col = 1;
  for (int i = 0; i < m; ++i) {
    const int di = static_cast<int>(edges[static_cast<std::size_t>(i)].cols());
    lp.A_ub.block(i, col, 1, di).setOnes();
    col += di;
  }
  lp.c = Eigen::VectorXd::Zero(n);
  lp.c[0] = 1.0;

  const SimplexSolution sol = solve_lp(lp);
  LPResult out;
  out.status = sol.status;
  if (sol.status != LPStatus::Optimal) return out;
  out.q = sol.x[0];
  out.dual_objective = sol.dual_eq.dot(lp.b_eq) + sol.dual_ub.dot(lp.b_ub);
  col = 1;
  for (int i = 0; i < m; ++i) {
    const int di = static_cast<int>(edges[static_cast<std::size_t>(i)].cols());
    out.multipliers.push_back(sol.x.segment(col, di));
    col += di;
  }
  return out;
}

double epsilon_oracle(std::span<const Contact> contacts, int d, int n_dirs,
                      std::uint64_t seed) {
  const auto edges = wrench_edges(contacts, d);
  std::vector<double> h(static_cast<std::size_t>(n_dirs));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n_dirs; ++k) {
    const Vec6 u = unit_direction6(seed, static_cast<std::uint64_t>(k));
    h[static_cast<std::size_t>(k)] = oracle_support(u, edges);
  }
  double eps = std::numeric_limits<double>::infinity();
  for (double v : h) eps = std::min(eps, v);
  return eps > 0.0 ? eps : 0.0;
}

bool force_closure_simplex_check(std::span<const Vec6> samples, int trials,
                                 std::uint64_t seed) {
  if (samples.size() < 6) return false;
  std::array<bool, 12> covered{};
  int remaining = 12;
  const std::size_t n = samples.size();

  for (int t = 0; t < trials && remaining > 0; ++t) {
    SplitMix64 g(substream(seed, static_cast<std::uint64_t>(t)));
    Eigen::Matrix<double, 6, 6> M;
    std::array<std::size_t, 6> idx{};
    for (int j = 0; j < 6; ++j) {
      idx[static_cast<std::size_t>(j)] = static_cast<std::size_t>(g.next_u64() % n);
      M.col(j) = samples[idx[static_cast<std::size_t>(j)]];
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(M);
    if (!lu.isInvertible()) continue;
    for (int b = 0; b < 12; ++b) {
      if (covered[static_cast<std::size_t>(b)]) continue;
      Vec6 target = Vec6::Zero();
      target[b / 2] = (b % 2 == 0) ? 1.0 : -1.0;
      const Vec6 lambda = lu.solve(target);
      if ((lambda.array() >= -1e-9).all()) {
        covered[static_cast<std::size_t>(b)] = true;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

}  // namespace gws
