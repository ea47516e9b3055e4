#pragma once

#include <Eigen/Dense>

namespace gws {

enum class LPStatus { Optimal, Infeasible, Unbounded };

/// maximize c.x subject to A_eq x = b_eq, A_ub x <= b_ub, x >= 0.
struct LinearProgram {
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd A_ub;
  Eigen::VectorXd b_ub;
  Eigen::VectorXd c;
};

struct SimplexSolution {
  LPStatus status = LPStatus::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd dual_eq;  // multipliers for equality rows
  Eigen::VectorXd dual_ub;  // multipliers for inequality rows
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule.
/// Intended for small problems (a few hundred variables).
SimplexSolution solve_lp(const LinearProgram& lp);

}  // namespace gws
