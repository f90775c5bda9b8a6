#include "doctest.h"
#include "support.hpp"

#include "graspeq/random_grasp.hpp"
#include "graspeq/stability.hpp"

#include <random>

using namespace graspeq;
using namespace graspeq::testing;

TEST_CASE("verdicts on the fixtures") {
  CHECK(check_stability(three_contact(false), {0, -1, 0}).stable);
  CHECK_FALSE(check_stability(three_contact(false), {0, 1, 0}).stable);
  CHECK(check_stability(three_contact(true), {0, 1, 0}).stable);
  CHECK_FALSE(check_stability(three_contact(true), {0, 1.1, 0}).stable);

  const Verdict v = check_stability(four_contact(false), {0, 0, 3});
  REQUIRE(v.stable);
  CHECK(v.witness->labels[1] == ContactLabel::Detached);
  CHECK(v.witness->labels[3] == ContactLabel::Detached);
  CHECK(check_solution(four_contact(false), {0, 0, 3}, *v.witness).ok());
}

TEST_CASE("zero wrench is held by the all-stick state") {
  for (const GraspModel& g : {three_contact(false), three_contact(true), four_contact(false), four_contact(true)}) {
    const Verdict v = check_stability(g, {});
    REQUIRE(v.stable);
    CHECK(v.states_tried == 1);
    CHECK(v.witness->motion.norm() < 1e-12);
  }
}

TEST_CASE("unstable verdicts try every state") {
  const StabilityAnalyzer a(three_contact(false));
  const Verdict v = a.check({0, 1, 0});
  CHECK_FALSE(v.stable);
  CHECK(v.states_tried == a.slip_states().size());
  for (const SlipState& s : a.slip_states().states) CHECK_FALSE(solve_state(a.model(), {0, 1, 0}, s).has_value());
}

TEST_CASE("threaded and cached queries agree with sequential fresh ones") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    RandomGraspOptions o;
    o.contacts = 2 + static_cast<std::size_t>(trial % 4);
    o.preload = trial % 2 == 0;
    const GraspModel g = random_grasp(rng, o);
    const StabilityAnalyzer cached(g);
    for (int q = 0; q < 3; ++q) {
      const Wrench w{u(rng), u(rng), u(rng)};
      const Verdict fresh = check_stability(g, w);
      const Verdict seq = cached.check(w);
      const Verdict par = cached.check(w, 3);
      CHECK(fresh.stable == seq.stable);
      CHECK(seq.stable == par.stable);
      CHECK(seq.states_tried == par.states_tried);
      if (seq.stable) {
        CHECK(seq.witness->state_index == par.witness->state_index);
        CHECK(seq.witness->state_index == fresh.witness->state_index);
        CHECK(check_solution(g, w, *seq.witness).ok());
      }
    }
  }
}

TEST_CASE("maximum resistible force along the axes") {
  const StabilityAnalyzer three(three_contact(true));
  ResistibleForce r = max_resistible(three, {0, 1}, 1e-3, 1e3);
  CHECK_FALSE(r.at_least_cap);
  CHECK(std::abs(r.magnitude - 1.0) <= 1e-3);
  CHECK_FALSE(r.non_monotone);
  CHECK(three.check({0, r.stable_bound, 0}).stable);
  CHECK_FALSE(three.check({0, r.unstable_bound, 0}).stable);

  const StabilityAnalyzer four(four_contact(true));
  CHECK(std::abs(max_resistible(four, {0, 1}, 1e-3, 1e3).magnitude - 2.0) <= 1e-3);
  CHECK(std::abs(max_resistible(four, {0, -1}, 1e-3, 1e3).magnitude - 2.0) <= 1e-3);
  // Lateral load: x balance gives d_x = w_x / 4, so the two trailing springs
  // unload completely at |w_x| = 4.
  CHECK(std::abs(max_resistible(four, {1, 0}, 1e-3, 1e3).magnitude - 4.0) <= 1e-3);

  const StabilityAnalyzer passive(three_contact(false));
  CHECK(max_resistible(passive, {0, -1}, 1e-3, 1e3).at_least_cap);

  CHECK_THROWS_AS(max_resistible(passive, {0, 1}, 0.0, 1e3), std::invalid_argument);
  CHECK_THROWS_AS(max_resistible(passive, {0, 1}, 1e-3, -1.0), std::invalid_argument);
}

TEST_CASE("sweep directions") {
  const auto dirs = sweep_directions(8);
  REQUIRE(dirs.size() == 8);
  CHECK(dirs[0] == Vec2(1, 0));
  CHECK(dirs[2] == Vec2(0, 1));
  CHECK(dirs[4] == Vec2(-1, 0));
  CHECK(dirs[6] == Vec2(0, -1));
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    CHECK(dirs[k].norm() == doctest::Approx(1.0));
    const double step = std::atan2(cross2(dirs[k], dirs[(k + 1) % 8]), dirs[k].dot(dirs[(k + 1) % 8]));
    CHECK(step == doctest::Approx(std::acos(-1.0) / 4));
  }
}

TEST_CASE("resistible region of the unloaded three-contact grasp") {
  const StabilityAnalyzer a(three_contact(false));
  CHECK_THROWS_AS(resistible_region(a, 3, 1e-3, 1e3), std::invalid_argument);
  const RegionSweep sweep = resistible_region(a, 8, 1e-3, 1e3, 2);
  REQUIRE(sweep.results.size() == 8);
  for (const auto& r : sweep.results) {
    CHECK(r.force.magnitude >= 0.0);
    if (r.direction.y() <= 0.0) {
      CHECK(r.force.at_least_cap);
    } else {
      CHECK_FALSE(r.force.at_least_cap);
      CHECK(r.force.magnitude <= 1e-3);
    }
  }
}
