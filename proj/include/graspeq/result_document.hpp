#pragma once

#include "graspeq/equilibrium.hpp"
#include "graspeq/stability.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graspeq {

/// Outcome of one stability query as written by the command-line tool.
struct ResultDocument {
  std::string command;
  std::string method;  ///< "arrangement", "brute-force" or "linear-compliance"
  std::string grasp;
  Wrench wrench;
  bool detachment = true;
  bool strict_eq4 = false;

  bool stable = false;
  std::vector<ContactLabel> state;       ///< empty when unstable or unlabelled
  std::vector<ContactForce> forces;      ///< contact frame
  std::vector<Vec3> world_forces;        ///< (f_x, f_y, torque) on the object
  std::optional<Vec3> motion;
  std::optional<ResidualReport> residuals;

  std::size_t slip_states = 0;
  std::size_t states_tried = 0;
  double timing_ms = 0.0;
};

ResultDocument make_result_document(std::string command, std::string method, const GraspModel& model, const Wrench& w,
                                    const Verdict& verdict, std::size_t slip_states);

/// Pretty-printed JSON; doubles use shortest round-trip form (17 significant digits at most).
std::string serialize(const ResultDocument& doc);

/// Inverse of serialize(). Throws std::invalid_argument on malformed input.
ResultDocument parse_result_document(std::string_view text);

}  // namespace graspeq
