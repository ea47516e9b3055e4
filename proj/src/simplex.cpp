#include "gws/simplex.hpp"

#include <vector>

namespace gws {

namespace {
constexpr double kPivotTol = 1e-9;

struct Tableau {
  Eigen::MatrixXd M;          // rows x cols working matrix
  Eigen::VectorXd rhs;        // row values
  std::vector<int> basis;     // basic variable per row
  std::vector<bool> rowLive;  // redundant rows get disabled

  void pivot(int row, int col) {
    const double p = M(row, col);
    M.row(row) /= p;
    rhs[row] /= p;
    for (int r = 0; r < M.rows(); ++r) {
      if (r == row || !rowLive[static_cast<std::size_t>(r)]) continue;
      const double f = M(r, col);
      if (f != 0.0) {
        M.row(r) -= f * M.row(row);
        rhs[r] -= f * rhs[row];
      }
    }
    basis[static_cast<std::size_t>(row)] = col;
  }
};

/// Simplex iterations maximizing obj over the live columns: Dantzig pricing
/// (most positive reduced cost) normally, falling back to Bland's smallest-
/// index rule after a run of degenerate pivots so cycling is impossible.
/// Returns false if unbounded.
bool iterate(Tableau& t, Eigen::RowVectorXd& obj, double& objValue,
             const std::vector<bool>& colLive) {
  const int rows = static_cast<int>(t.M.rows());
  const int cols = static_cast<int>(t.M.cols());
  constexpr int kBlandTrigger = 40;  // consecutive non-improving pivots
  int stalled = 0;
  for (;;) {
    int enter = -1;
    if (stalled < kBlandTrigger) {
      double best = kPivotTol;
      for (int j = 0; j < cols; ++j) {
        if (colLive[static_cast<std::size_t>(j)] && obj[j] > best) {
          best = obj[j];
          enter = j;
        }
      }
    } else {
      for (int j = 0; j < cols; ++j) {
        if (colLive[static_cast<std::size_t>(j)] && obj[j] > kPivotTol) {
          enter = j;
          break;  // Bland: smallest index
        }
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double bestRatio = 0.0;
    for (int r = 0; r < rows; ++r) {
      if (!t.rowLive[static_cast<std::size_t>(r)]) continue;
      const double a = t.M(r, enter);
      if (a > kPivotTol) {
        const double ratio = t.rhs[r] / a;
        if (leave < 0 || ratio < bestRatio - kPivotTol ||
            (ratio < bestRatio + kPivotTol &&
             t.basis[static_cast<std::size_t>(r)] < t.basis[static_cast<std::size_t>(leave)])) {
          leave = r;
          bestRatio = ratio;
        }
      }
    }
    if (leave < 0) return false;  // unbounded

    const double before = objValue;
    t.pivot(leave, enter);
    const double f = obj[enter];
    obj -= f * t.M.row(leave);
    objValue += f * t.rhs[leave];
    stalled = objValue > before + 1e-12 ? 0 : stalled + 1;
  }
}

}  // namespace

SimplexSolution solve_lp(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int nEq = static_cast<int>(lp.b_eq.size());
  const int nUb = static_cast<int>(lp.b_ub.size());
  const int rows = nEq + nUb;

  // Standard form columns: structural | ub slacks | artificials.
  // Every row gets an artificial so the initial basis is trivial; slack
  // columns make most of them leave immediately during phase 1.
  const int nSlack = nUb;
  const int nArt = rows;
  const int cols = n + nSlack + nArt;

  Tableau t;
  t.M = Eigen::MatrixXd::Zero(rows, cols);
  t.rhs = Eigen::VectorXd::Zero(rows);
  t.basis.resize(static_cast<std::size_t>(rows));
  t.rowLive.assign(static_cast<std::size_t>(rows), true);

  for (int r = 0; r < nEq; ++r) {
    double sign = lp.b_eq[r] < 0.0 ? -1.0 : 1.0;
    t.M.block(r, 0, 1, n) = sign * lp.A_eq.row(r);
    t.rhs[r] = sign * lp.b_eq[r];
  }
  for (int r = 0; r < nUb; ++r) {
    const int row = nEq + r;
    double sign = lp.b_ub[r] < 0.0 ? -1.0 : 1.0;
    t.M.block(row, 0, 1, n) = sign * lp.A_ub.row(r);
    t.M(row, n + r) = sign;
    t.rhs[row] = sign * lp.b_ub[r];
  }
  for (int r = 0; r < rows; ++r) {
    t.M(r, n + nSlack + r) = 1.0;
    t.basis[static_cast<std::size_t>(r)] = n + nSlack + r;
  }

  SimplexSolution sol;

  // Phase 1: maximize -sum(artificials).
  {
    Eigen::RowVectorXd obj = Eigen::RowVectorXd::Zero(cols);
    obj.segment(n + nSlack, nArt).setConstant(-1.0);
    double objValue = 0.0;
    // Price out the initial artificial basis (cost -1 each, value rhs).
    for (int r = 0; r < rows; ++r) {
      obj += t.M.row(r);
      objValue -= t.rhs[r];
    }
    std::vector<bool> live(static_cast<std::size_t>(cols), true);
    if (!iterate(t, obj, objValue, live)) {
      sol.status = LPStatus::Infeasible;  // phase 1 cannot be unbounded
      return sol;
    }
    if (objValue < -1e-7) {
      sol.status = LPStatus::Infeasible;
      return sol;
    }
    // Drive leftover zero-level artificials out of the basis.
    for (int r = 0; r < rows; ++r) {
      if (t.basis[static_cast<std::size_t>(r)] < n + nSlack) continue;
      int col = -1;
      for (int j = 0; j < n + nSlack; ++j) {
        if (std::abs(t.M(r, j)) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        t.pivot(r, col);
      } else {
        t.rowLive[static_cast<std::size_t>(r)] = false;  // redundant row
      }
    }
  }

  // Phase 2: real objective, artificial columns barred.
  Eigen::RowVectorXd obj = Eigen::RowVectorXd::Zero(cols);
  obj.head(n) = lp.c.transpose();
  double objValue = 0.0;
  for (int r = 0; r < rows; ++r) {
    if (!t.rowLive[static_cast<std::size_t>(r)]) continue;
    const int b = t.basis[static_cast<std::size_t>(r)];
    const double cb = obj[b];
    if (cb != 0.0) {
      obj -= cb * t.M.row(r);
      objValue += cb * t.rhs[r];
    }
  }
  std::vector<bool> live(static_cast<std::size_t>(cols), true);
  for (int j = n + nSlack; j < cols; ++j) live[static_cast<std::size_t>(j)] = false;
  if (!iterate(t, obj, objValue, live)) {
    sol.status = LPStatus::Unbounded;
    return sol;
  }

  sol.status = LPStatus::Optimal;
  sol.objective = objValue;
  sol.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < rows; ++r) {
    if (!t.rowLive[static_cast<std::size_t>(r)]) continue;
    const int b = t.basis[static_cast<std::size_t>(r)];
    if (b < n) sol.x[b] = t.rhs[r];
  }

  // Duals: y solves B^T y = c_B against the original standard-form matrix.
  Eigen::MatrixXd A0 = Eigen::MatrixXd::Zero(rows, n + nSlack);
  Eigen::VectorXd rowSign = Eigen::VectorXd::Ones(rows);
  for (int r = 0; r < nEq; ++r) {
    rowSign[r] = lp.b_eq[r] < 0.0 ? -1.0 : 1.0;
    A0.block(r, 0, 1, n) = rowSign[r] * lp.A_eq.row(r);
  }
  for (int r = 0; r < nUb; ++r) {
    const int row = nEq + r;
    rowSign[row] = lp.b_ub[r] < 0.0 ? -1.0 : 1.0;
    A0.block(row, 0, 1, n) = rowSign[row] * lp.A_ub.row(r);
    A0(row, n + r) = rowSign[row];
  }
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(rows, rows);
  Eigen::VectorXd cB = Eigen::VectorXd::Zero(rows);
  Eigen::RowVectorXd cFull = Eigen::RowVectorXd::Zero(n + nSlack);
  cFull.head(n) = lp.c.transpose();
  for (int r = 0; r < rows; ++r) {
    const int b = t.basis[static_cast<std::size_t>(r)];
    if (t.rowLive[static_cast<std::size_t>(r)] && b < n + nSlack) {
      B.col(r) = A0.col(b);
      cB[r] = cFull[b];
    } else {
      B.col(r) = Eigen::VectorXd::Unit(rows, r);  // redundant row, dual free = 0
      cB[r] = 0.0;
    }
  }
  Eigen::VectorXd y = B.transpose().colPivHouseholderQr().solve(cB);
  y.array() *= rowSign.array();
  sol.dual_eq = y.head(nEq);
  sol.dual_ub = y.tail(nUb);
  return sol;
}

}  // namespace gws
