#pragma once

#include "gws/simplex.hpp"
#include "gws/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gws {

/// Edge generators of a discretized friction cone, unit normal component.
struct DiscretizedCone {
  Eigen::MatrixXd edges;  // (3 or 4) x d, each column on the cone surface with f1 = 1
};

/// PCF: d edges on the rim circle. SFC: d points on the boundary ellipsoid
/// (Fibonacci-distributed over the (f2, f3, f4) surface).
DiscretizedCone cone_edges(const FrictionModel& friction, int d);

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double q = 0.0;                                   // boundary scale along w
  std::vector<Eigen::VectorXd> multipliers;         // per-contact edge weights
  double dual_objective = 0.0;
};

/// Max q such that q.w lies in the discretized-cone GWS (L-inf bound:
/// per-contact edge weights sum to at most 1). q = 0 when the direction is
/// not achievable.
LPResult boundary_ray(const Vec6& w, std::span<const Contact> contacts, int d);

/// Per-contact wrench-space edge vectors G_i e_ij, used by the support oracle.
std::vector<Eigen::Matrix<double, 6, Eigen::Dynamic>> wrench_edges(
    std::span<const Contact> contacts, int d);

/// Discretized GWS support value h(u) = sum_i max(0, max_j u . G_i e_ij).
double oracle_support(const Vec6& u,
                      const std::vector<Eigen::Matrix<double, 6, Eigen::Dynamic>>& edges);

/// Lower-bound estimate of the epsilon metric of the discretized model:
/// min over sampled unit directions of h(u); 0 as soon as some direction has
/// non-positive support (not force closure).
double epsilon_oracle(std::span<const Contact> contacts, int d, int n_dirs,
                      std::uint64_t seed);

/// Randomized simplex-containment force-closure test on boundary samples:
/// true iff each of the 12 signed wrench basis vectors is a nonnegative
/// combination of some sampled 6-subset.
bool force_closure_simplex_check(std::span<const Vec6> samples, int trials,
                                 std::uint64_t seed);

}  // namespace gws
