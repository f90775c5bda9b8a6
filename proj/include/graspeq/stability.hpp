#pragma once

#include "graspeq/arrangement.hpp"
#include "graspeq/equilibrium.hpp"

#include <optional>
#include <vector>

namespace graspeq {

struct Verdict {
  bool stable = false;
  std::optional<EquilibriumSolution> witness;
  /// States examined in canonical order up to the witness (all of them when unstable).
  std::size_t states_tried = 0;
  AnalysisOptions mode;
};

/// Holds the slip-state set of one grasp. Enumeration depends only on the
/// geometry and preload, so the same analyzer answers queries for any wrench.
class StabilityAnalyzer {
 public:
  explicit StabilityAnalyzer(GraspModel model, AnalysisOptions options = {}, SolverTolerances tolerances = {});

  const GraspModel& model() const { return model_; }
  const AnalysisOptions& options() const { return options_; }
  const SlipStateSet& slip_states() const { return states_; }

  /// First state in canonical order that admits a solution. With threads > 1
  /// states are solved concurrently; the reported witness is still the
  /// feasible state of lowest canonical index.
  Verdict check(const Wrench& w, unsigned threads = 1) const;

 private:
  GraspModel model_;
  AnalysisOptions options_;
  SolverTolerances tolerances_;
  SlipStateSet states_;
};

Verdict check_stability(const GraspModel& model, const Wrench& w, const AnalysisOptions& options = {});

struct ResistibleForce {
  double magnitude = 0.0;
  bool at_least_cap = false;
  double stable_bound = 0.0;    ///< largest magnitude seen stable
  double unstable_bound = 0.0;  ///< smallest magnitude seen unstable
  bool non_monotone = false;    ///< the final bracket check disagreed with bisection
  int probes = 0;
};

/// Largest force magnitude along a planar direction (zero torque) the grasp
/// resists, by bisection on [0, cap] to absolute tolerance tol. Stability is
/// assumed to be radially monotone; the returned bracket is re-probed and any
/// disagreement is flagged.
ResistibleForce max_resistible(const StabilityAnalyzer& analyzer, const Vec2& direction, double tol, double cap);

struct DirectionResult {
  Vec2 direction;
  ResistibleForce force;
};

struct RegionSweep {
  std::size_t directions = 0;
  double tolerance = 0.0;
  double cap = 0.0;
  std::vector<DirectionResult> results;
};

/// Uniformly spaced unit directions, starting at +x and turning counter-clockwise.
std::vector<Vec2> sweep_directions(std::size_t n);

/// Throws std::invalid_argument for fewer than four directions or non-positive tol/cap.
RegionSweep resistible_region(const StabilityAnalyzer& analyzer, std::size_t n_directions, double tol, double cap,
                              unsigned threads = 1);

}  // namespace graspeq
