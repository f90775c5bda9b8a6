#pragma once

#include "graspeq/arrangement.hpp"
#include "graspeq/grasp_model.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace graspeq {

struct SolverTolerances {
  double equality = 1e-9;     ///< max equality residual accepted
  double inequality = 1e-8;   ///< min inequality slack accepted (as -value)
  double singular = 1e-10;    ///< sigma_min / sigma_max below this uses the LP
  double box = 1e6;           ///< |x|_inf cap in the feasibility program
};

enum class RowFamily : std::uint8_t {
  Equilibrium,
  Constitutive,
  SlipFriction,
  StickMotion,
  DetachedForce,
  NormalNonNegative,
  StickCone,
  SlipDirection,
  Separating,
};
const char* to_string(RowFamily family);

/// Linear system for one slip state over x = (d_x, d_y, d_r, c_1n, c_1t, ..., c_mn, c_mt).
struct StateSystem {
  Eigen::MatrixXd eq;
  Eigen::VectorXd eq_rhs;
  std::vector<RowFamily> eq_family;
  std::vector<std::size_t> eq_contact;  ///< contact index, or npos for equilibrium rows

  Eigen::MatrixXd ge;  ///< ge x >= ge_rhs
  Eigen::VectorXd ge_rhs;
  std::vector<RowFamily> ge_family;
  std::vector<std::size_t> ge_contact;

  std::size_t slipping = 0;

  Eigen::Index unknowns() const { return eq.cols(); }
  std::size_t count(RowFamily family) const;
};

inline constexpr std::size_t kNoContact = static_cast<std::size_t>(-1);

inline Eigen::Index motion_var(int k) { return k; }
inline Eigen::Index normal_var(std::size_t i) { return static_cast<Eigen::Index>(3 + 2 * i); }
inline Eigen::Index tangent_var(std::size_t i) { return static_cast<Eigen::Index>(4 + 2 * i); }

/// Throws std::invalid_argument on a state/model mismatch (wrong length, or a
/// detached label on a contact that cannot detach).
StateSystem assemble_state_system(const GraspModel& model, const Wrench& w, const SlipState& state,
                                  const AnalysisOptions& options = {});

struct EquilibriumSolution {
  Vec3 motion = Vec3::Zero();
  std::vector<ContactForce> forces;
  std::vector<ContactLabel> labels;
  std::size_t state_index = 0;
  double max_equality_residual = 0.0;
  double min_inequality_slack = 0.0;
  bool used_linear_program = false;
};

/// Point satisfying a state system, found by maximizing the smallest
/// normalized inequality slack subject to the equalities and |x|_inf <= box.
/// Returns nullopt if that optimum is below -tolerance.
std::optional<Eigen::VectorXd> linear_feasibility(const StateSystem& sys, const SolverTolerances& tol = {});

std::optional<EquilibriumSolution> solve_state(const GraspModel& model, const Wrench& w, const SlipState& state,
                                               const AnalysisOptions& options = {}, const SolverTolerances& tol = {});

/// Largest violation of each physical condition, recomputed from the contact
/// geometry alone.
struct ResidualReport {
  double equilibrium = 0.0;
  double unilateral = 0.0;
  double cone = 0.0;
  double constitutive = 0.0;
  double dissipation = 0.0;
  double stick_motion = 0.0;
  double detachment = 0.0;

  double worst() const;
  bool ok(double tolerance = 1e-9) const { return worst() <= tolerance; }
};

ResidualReport check_solution(const GraspModel& model, const Wrench& w, const EquilibriumSolution& sol);

}  // namespace graspeq
