#pragma once

#include <Eigen/Dense>

#include <limits>

namespace graspeq::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status { Optimal, Infeasible, Unbounded };

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-11;
  /// Phase-one objective above this (scaled by max(1, |b|_inf)) means infeasible.
  double feasibility_tolerance = 1e-9;
  int max_iterations = 50000;
};

/// minimize c^T z  s.t.  A z = b,  z >= 0.
struct StandardForm {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct StandardResult {
  Status status = Status::Infeasible;
  Eigen::VectorXd z;
  double objective = 0.0;
  int iterations = 0;
};

/// Dense two-phase tableau simplex with Bland's rule, so pivoting is
/// deterministic and cycling cannot occur. The final basic solution is
/// recomputed from the original data to keep equality residuals small.
StandardResult solve_standard(const StandardForm& lp, const SimplexOptions& opts = {});

/// maximize objective^T x  s.t.  eq x = eq_rhs,  ge x >= ge_rhs,  lower <= x <= upper.
/// Bounds may be infinite. Empty matrices are allowed for absent blocks.
struct Problem {
  Eigen::MatrixXd eq;
  Eigen::VectorXd eq_rhs;
  Eigen::MatrixXd ge;
  Eigen::VectorXd ge_rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  Eigen::VectorXd objective;

  explicit Problem(Eigen::Index n = 0);
  Eigen::Index variables() const { return objective.size(); }
  void add_equality(const Eigen::RowVectorXd& row, double rhs);
  void add_inequality(const Eigen::RowVectorXd& row, double rhs);
};

struct Solution {
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

Solution maximize(const Problem& problem, const SimplexOptions& opts = {});

}  // namespace graspeq::lp
