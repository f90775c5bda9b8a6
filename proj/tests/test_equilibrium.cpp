#include "doctest.h"
#include "support.hpp"

#include "graspeq/equilibrium.hpp"
#include "graspeq/random_grasp.hpp"

#include <random>

using namespace graspeq;
using namespace graspeq::testing;

namespace {

constexpr auto D = ContactLabel::Detached;
constexpr auto N = ContactLabel::SlipNegative;
constexpr auto S = ContactLabel::Stick;
constexpr auto P = ContactLabel::SlipPositive;

SlipState state(std::vector<ContactLabel> labels) {
  SlipState s;
  s.labels = std::move(labels);
  return s;
}

void check_forces(const EquilibriumSolution& sol, const std::vector<ContactForce>& expected, double tol = 1e-9) {
  REQUIRE(sol.forces.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(sol.forces[i].normal - expected[i].normal) < tol);
    CHECK(std::abs(sol.forces[i].tangential - expected[i].tangential) < tol);
  }
}

}  // namespace

TEST_CASE("row bookkeeping") {
  const GraspModel g = three_contact(false);
  for (const auto& labels : std::vector<std::vector<ContactLabel>>{{S, S, S}, {N, S, P}, {D, S, P}, {D, D, D}}) {
    const StateSystem sys = assemble_state_system(g, {0, -1, 0}, state(labels));
    CHECK(sys.eq.rows() == 9);
    CHECK(sys.eq.cols() == 9);
    CHECK(sys.count(RowFamily::Equilibrium) == 3);
  }
  const StateSystem sys = assemble_state_system(g, {}, state({N, S, P}));
  CHECK(sys.slipping == 2);
  CHECK(sys.count(RowFamily::SlipFriction) == 2);
  CHECK(sys.count(RowFamily::StickMotion) == 1);
  CHECK(sys.count(RowFamily::StickCone) == 2);
  CHECK(sys.count(RowFamily::SlipDirection) == 2);
  CHECK(sys.count(RowFamily::Constitutive) == 3);

  CHECK_THROWS_AS(assemble_state_system(g, {}, state({S, S})), std::invalid_argument);
  CHECK_THROWS_AS(assemble_state_system(three_contact(true), {}, state({D, S, S})), std::invalid_argument);
  AnalysisOptions strict;
  strict.strict_eq4 = true;
  CHECK_THROWS_AS(assemble_state_system(g, {}, state({D, S, S}), strict), std::invalid_argument);
}

TEST_CASE("three-contact object pushed down") {
  // Hand solution: contacts 1 and 3 slide along the side fingers with zero
  // load, the support takes the full unit load, d = (0, -1, 0).
  const auto sol = solve_state(three_contact(false), {0, -1, 0}, state({N, S, P}));
  REQUIRE(sol.has_value());
  check_forces(*sol, {{0, 0}, {1, 0}, {0, 0}});
  CHECK(max_abs_diff(sol->motion, {0, -1, 0}) < 1e-9);
  CHECK(check_solution(three_contact(false), {0, -1, 0}, *sol).ok());
  CHECK_FALSE(sol->used_linear_program);

  // Twice the load doubles everything (linear in w inside one state).
  const auto twice = solve_state(three_contact(false), {0, -2, 0}, state({N, S, P}));
  REQUIRE(twice.has_value());
  check_forces(*twice, {{0, 0}, {2, 0}, {0, 0}});

  // Pushing up cannot be resisted in this state: contact 2 would pull.
  CHECK_FALSE(solve_state(three_contact(false), {0, 1, 0}, state({N, S, P})).has_value());
}

TEST_CASE("preloaded three-contact object pulled up") {
  // Support unloads completely; side fingers slide at the cone edge, d = (0, 1, 0).
  const GraspModel g = three_contact(true);
  const auto sol = solve_state(g, {0, 1, 0}, state({P, S, N}));
  REQUIRE(sol.has_value());
  check_forces(*sol, {{1, -0.5}, {0, 0}, {1, 0.5}});
  CHECK(max_abs_diff(sol->motion, {0, 1, 0}) < 1e-9);
  CHECK(check_solution(g, {0, 1, 0}, *sol).ok());
  CHECK_FALSE(solve_state(g, {0, 1.1, 0}, state({P, S, N})).has_value());
}

TEST_CASE("coincident tangent planes go through the feasibility program") {
  // Four-contact, unit preload, torque 3: contacts 1/2 and 3/4 share tangent
  // planes, so the square system is singular. Normal springs fix x = 0 and
  // r = 0.25; cone-edge friction then fixes every force.
  const GraspModel g = four_contact(true);
  const auto sol = solve_state(g, {0, 0, 3}, state({N, N, S, S}));
  REQUIRE(sol.has_value());
  CHECK(sol->used_linear_program);
  check_forces(*sol, {{1.25, 0.625}, {0.75, 0.375}, {1.25, 0.625}, {0.75, 0.375}}, 1e-8);
  CHECK(max_abs_diff(sol->motion, {0, -0.25, 0.25}) < 1e-8);
  CHECK(check_solution(g, {0, 0, 3}, *sol).ok());
}

TEST_CASE("detached contacts carry nothing and move away") {
  // Four-contact without preload under torque 3: contacts 2 and 4 separate.
  const GraspModel g = four_contact(false);
  const auto sol = solve_state(g, {0, 0, 3}, state({N, D, S, D}));
  REQUIRE(sol.has_value());
  check_forces(*sol, {{1, 0.5}, {0, 0}, {1, 0.5}, {0, 0}}, 1e-8);
  CHECK(max_abs_diff(sol->motion, {0, -1, 1}) < 1e-8);
  CHECK(check_solution(g, {0, 0, 3}, *sol).ok());
}

TEST_CASE("verifier detects perturbed solutions") {
  const GraspModel g = three_contact(false);
  auto sol = *solve_state(g, {0, -1, 0}, state({N, S, P}));
  auto bad = sol;
  bad.forces[1].normal += 1e-6;
  CHECK(check_solution(g, {0, -1, 0}, bad).equilibrium > 5e-7);
  bad = sol;
  bad.motion.x() += 1e-3;
  CHECK_FALSE(check_solution(g, {0, -1, 0}, bad).ok());
  bad = sol;
  bad.labels[1] = ContactLabel::SlipPositive;
  bad.forces[1].tangential = 0.1;
  CHECK_FALSE(check_solution(g, {0, -1, 0}, bad).ok());
}

TEST_CASE("every solved state passes the verifier") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int solved = 0;
  for (int trial = 0; trial < 150; ++trial) {
    RandomGraspOptions o;
    o.contacts = 2 + static_cast<std::size_t>(trial % 4);
    o.preload = trial % 3 != 0;
    o.stiffness_min = 0.5;
    o.stiffness_max = 2.0;
    const GraspModel g = random_grasp(rng, o);
    const Wrench w{u(rng), u(rng), u(rng)};
    const SlipStateSet set = enumerate_slip_states(g);
    for (const SlipState& s : set.states) {
      if (auto sol = solve_state(g, w, s)) {
        ++solved;
        const ResidualReport r = check_solution(g, w, *sol);
        CHECK(r.ok());
        CHECK(sol->state_index == s.index);
      }
    }
  }
  CHECK(solved > 20);
}
