#pragma once

#include "graspeq/convex_hull.hpp"
#include "graspeq/stability.hpp"

#include <stdexcept>
#include <vector>

namespace graspeq {

/// Largest contact count the brute-force search accepts (4^12 states).
inline constexpr std::size_t kBruteForceMaxContacts = 12;

/// Stability by trying every label vector ({stick, slip-, slip+} per contact,
/// plus detached where allowed) in lexicographic order. Shares no enumeration
/// code with the arrangement path. Throws std::length_error above the limit.
Verdict brute_force_verdict(const GraspModel& model, const Wrench& w, const AnalysisOptions& options = {});

/// Hull of the origin and both friction-cone edge wrenches of every contact at
/// unit normal force.
ConvexHull3 gws_l1(const GraspModel& model);

struct WrenchSlice {
  double torque = 0.0;
  std::vector<Vec2> polygon;  ///< counter-clockwise (f_x, f_y)
  bool degenerate = false;    ///< fewer than three vertices or zero area
};

/// Cross-section of a wrench hull at a fixed torque. Throws std::domain_error
/// when the torque lies outside the hull.
WrenchSlice gws_slice(const ConvexHull3& hull, double torque);

/// Signed distance from the origin to the nearest polygon edge; positive inside.
double origin_clearance(const std::vector<Vec2>& polygon);

/// Whether some contact forces within the friction cones and 0 <= c_n <= max_normal
/// produce exactly the given wrench on the object.
bool wrench_achievable(const GraspModel& model, const Vec3& wrench, double max_normal);

/// Linear spring model in both directions: c_n = c0_n + k delta_n and
/// c_t = c0_t - k_t delta_t, solved with every contact attached. Stable when
/// the resulting forces satisfy c_n >= 0 and |c_t| <= mu c_n. The witness
/// carries no slip labels.
Verdict linear_compliance_verdict(const GraspModel& model, const Wrench& w, const std::vector<double>& tangent_stiffness);
Verdict linear_compliance_verdict(const GraspModel& model, const Wrench& w, double tangent_stiffness = 1.0);

}  // namespace graspeq
