#pragma once

#include "graspeq/grasp_model.hpp"

#include <cstdint>
#include <random>

namespace graspeq {

struct RandomGraspOptions {
  std::size_t contacts = 3;
  bool preload = false;
  double mu_min = 0.2;
  double mu_max = 0.9;
  double stiffness_min = 1.0;
  double stiffness_max = 1.0;
  /// Reject draws whose tangent planes are not in general position (any two
  /// parallel or any three through a common line, judged by |det| below this).
  double general_position = 1e-3;
};

/// Contacts at uniform positions in [-1, 1]^2 with uniform normal directions.
/// With preload set, the preload is a random convex combination of two extreme
/// self-balanced force sets with 0 <= c_n <= 1, so some contacts may carry none.
GraspModel random_grasp(std::mt19937_64& rng, const RandomGraspOptions& options);

/// Convenience seed-only overload.
GraspModel random_grasp(std::uint64_t seed, const RandomGraspOptions& options);

/// Random self-balanced preload inside the friction cones with 0 <= c_n <= 1.
std::vector<ContactForce> random_balanced_preload(std::mt19937_64& rng, const GraspModel& model);

/// Whether the tangent planes of the model are in general position at the given threshold.
bool tangent_planes_in_general_position(const GraspModel& model, double threshold);

}  // namespace graspeq
