#include "doctest.h"
#include "support.hpp"

#include "graspeq/arrangement.hpp"
#include "graspeq/random_grasp.hpp"

#include <map>
#include <random>
#include <set>

using namespace graspeq;
using namespace graspeq::testing;

namespace {

std::vector<Vec3> normals_of(const PlaneArrangement& arr) {
  std::vector<Vec3> out;
  for (const auto& p : arr.planes()) out.push_back(p.normal);
  return out;
}

void check_cells_against_oracles(const PlaneArrangement& arr, std::mt19937_64& rng, int samples) {
  const ArrangementCells cells = enumerate_cells(arr);
  const auto normals = normals_of(arr);
  const auto rays = oracle_rays(normals);
  CHECK(cells.faces() == rays.size());
  CHECK(cells.edges() == oracle_facets(normals, rays));

  // Euler characteristic of the dual polyhedron (a sphere).
  CHECK(static_cast<long>(cells.vertices()) - static_cast<long>(cells.edges()) + static_cast<long>(cells.faces()) == 2);

  // Partial cube: adjacent regions differ in exactly the crossed plane.
  for (std::size_t e = 0; e < cells.dual.graph.edges.size(); ++e) {
    const auto [a, b] = cells.dual.graph.edges[e];
    std::size_t diff = 0, where = 0;
    for (std::size_t p = 0; p < arr.size(); ++p) {
      if (cells.dual.regions[a].signs[p] != cells.dual.regions[b].signs[p]) {
        ++diff;
        where = p;
      }
    }
    CHECK(diff == 1);
    CHECK(where == cells.dual.edge_plane[e]);
  }

  // Every cell's witness realizes its sign vector.
  auto realizes = [&](const CellState& c) { return sign_of(arr, c.witness) == c.signs || c.kind == CellKind::Line; };
  for (const auto& c : cells.dual.regions) CHECK(realizes(c));
  for (const auto& c : cells.dual.facets) CHECK(realizes(c));
  for (const auto& c : cells.lines) {
    // Rays: signs at the unit ray direction agree up to numerical zeros.
    CHECK(c.witness.norm() > 0.0);
    for (std::size_t p = 0; p < arr.size(); ++p) {
      const double v = arr[p].normal.dot(c.witness.normalized());
      if (c.signs[p] == 0) CHECK(std::abs(v) < 1e-9);
      else CHECK(v * c.signs[p] > 0.0);
    }
  }

  // Sign-pattern completeness by sampling.
  std::set<SignVector> regions;
  for (const auto& c : cells.dual.regions) regions.insert(c.signs);
  for (int s = 0; s < samples; ++s) CHECK(regions.count(sign_of(arr, random_direction(rng))) == 1);
}

}  // namespace

TEST_CASE("planes of the three-contact grasp") {
  const GraspModel g = three_contact(false);
  const PlaneArrangement no_sep = build_arrangement(g, no_detach());
  CHECK(no_sep.size() == 3);
  CHECK(no_sep.rank() == 3);
  // Tangent motion of contact 1 is y - r (tau = (0,1) at r = (-1,0)).
  const PlaneRef t1 = no_sep.tangent(0);
  CHECK((t1.orientation * no_sep[t1.plane].normal).isApprox(Vec3(0, 1, -1).normalized()));

  // With detachment the separation plane of contact 2 is the tangent plane
  // direction of contacts 1 and 3 (all contain the x axis).
  const PlaneArrangement with_sep = build_arrangement(g);
  CHECK(with_sep.size() == 5);
  CHECK(with_sep.separation(1).has_value());
  CHECK_FALSE(build_arrangement(three_contact(true)).separation(1).has_value());
}

TEST_CASE("four-contact planes merge to two") {
  const PlaneArrangement arr = build_arrangement(four_contact(false), no_detach());
  CHECK(arr.size() == 2);
  CHECK(arr.rank() == 2);
  CHECK(arr.tangent(0).plane == arr.tangent(1).plane);
  CHECK(arr.tangent(2).plane == arr.tangent(3).plane);
  const SlipStateSet set = enumerate_slip_states(four_contact(false), no_detach());
  CHECK(set.census.regions == 4);
  CHECK(set.census.facets == 4);
  CHECK(set.census.lines == 2);
  CHECK(set.census.total() == 10);
  // Both rays of the shared line carry the all-stick labels of the origin.
  CHECK(set.size() == 9);

  // Separation planes of contacts 1/4 and 2/3 coincide up to sign.
  const PlaneArrangement det = build_arrangement(four_contact(false));
  CHECK(det.size() == 4);
  CHECK(enumerate_slip_states(four_contact(false)).census.total() == 50);
}

TEST_CASE("single contact") {
  GraspModel g;
  g.contacts = {{{0, -1}, {0, -1}, 0.5}};
  g.stiffness = {1};
  const SlipStateSet set = enumerate_slip_states(g, no_detach());
  CHECK(set.census.regions == 2);
  CHECK(set.census.facets == 1);
  CHECK(set.census.lines == 0);
  REQUIRE(set.size() == 3);
  CHECK(set.states[0].code() == "0");
  CHECK(set.states[0].provenance == CellKind::Origin);
  CHECK(set.count_excluding_origin() == 2);
}

TEST_CASE("slip labels follow tangent orientation and detachment") {
  const GraspModel g = three_contact(false);
  const PlaneArrangement arr = build_arrangement(g);
  // Motion straight down: contact 1 slides toward -tau, 3 toward +tau, 2 compresses.
  const Vec3 d(0, -1, 0);
  auto labels = labels_of(sign_of(arr, d), arr, true);
  CHECK(labels[0] == ContactLabel::SlipNegative);
  CHECK(labels[1] == ContactLabel::Stick);
  CHECK(labels[2] == ContactLabel::SlipPositive);
  // Motion up: contact 2 separates.
  labels = labels_of(sign_of(arr, Vec3(0, 1, 0)), arr, true);
  CHECK(labels[1] == ContactLabel::Detached);
  labels = labels_of(sign_of(arr, Vec3(0, 1, 0)), arr, false);
  CHECK(labels[1] == ContactLabel::Stick);
}

TEST_CASE("slip-state set ordering") {
  const SlipStateSet set = enumerate_slip_states(three_contact(false));
  REQUIRE(set.size() > 1);
  CHECK(set.states[0].code() == "000");
  for (std::size_t k = 0; k < set.size(); ++k) CHECK(set.states[k].index == k);
  for (std::size_t k = 2; k < set.size(); ++k) CHECK(set.states[k - 1].labels < set.states[k].labels);
  CHECK(set.contains({ContactLabel::Detached, ContactLabel::Stick, ContactLabel::SlipPositive}));
}

TEST_CASE("Zaslavsky bound values") {
  // n planes through the origin of R^3 in general position, d = 3.
  CHECK(zaslavsky_bound(3, 3, 3) == 8);
  CHECK(zaslavsky_bound(4, 3, 3) == 15);
  CHECK(zaslavsky_bound(4, 3, 2) == 4 * 7);
  CHECK(zaslavsky_bound(4, 3, 1) == 6 * 3);
  CHECK(zaslavsky_bound(4, 3, 0) == 4);
  CHECK_THROWS_AS(zaslavsky_bound(3, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(zaslavsky_bound(-1, 3, 1), std::invalid_argument);
}

TEST_CASE("general-position census") {
  std::mt19937_64 rng(17);
  for (std::size_t m = 2; m <= 7; ++m) {
    RandomGraspOptions o;
    o.contacts = m;
    for (int trial = 0; trial < 5; ++trial) {
      const GraspModel g = random_grasp(rng, o);
      const SlipStateSet set = enumerate_slip_states(g, no_detach());
      CHECK(set.census.regions == m * (m - 1) + 2);
      CHECK(set.census.facets == 2 * m * (m - 1));
      CHECK(set.census.lines == m * (m - 1));
      CHECK(set.census.total() == 4 * m * m - 4 * m + 2);
      if (m >= 3) CHECK(set.count_excluding_origin() == set.census.total());
    }
  }
}

TEST_CASE("cells agree with direct geometric enumeration") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    RandomGraspOptions o;
    o.contacts = 2 + static_cast<std::size_t>(trial % 5);
    o.preload = trial % 2 == 0;
    const GraspModel g = random_grasp(rng, o);
    check_cells_against_oracles(build_arrangement(g), rng, 300);
  }
  check_cells_against_oracles(build_arrangement(three_contact(false)), rng, 1000);
  check_cells_against_oracles(build_arrangement(four_contact(false)), rng, 1000);
  check_cells_against_oracles(build_arrangement(four_contact(false), no_detach()), rng, 1000);
}

TEST_CASE("regions are found incrementally") {
  std::mt19937_64 rng(29);
  RandomGraspOptions o;
  o.contacts = 5;
  const PlaneArrangement arr = build_arrangement(random_grasp(rng, o), no_detach());
  const auto regions = enumerate_regions(arr);
  CHECK(regions.size() == 22);
  for (const auto& r : regions) {
    CHECK(region_feasible(r.signs, arr));
    SignVector flipped = r.signs;
    for (auto& s : flipped) s = static_cast<std::int8_t>(-s);
    CHECK(region_feasible(flipped, arr));  // central symmetry
  }
  // Realizing a single zero sign returns a point on that plane.
  SignVector partial = {0};
  const auto p = realize_signs(partial, arr);
  REQUIRE(p.has_value());
  CHECK(std::abs(arr[0].normal.dot(*p)) < 1e-9);
}

TEST_CASE("planes sharing a line") {
  // Three planes through the rotation axis plus the plane d_r = 0.
  PlaneArrangement arr(4);
  arr.add({1, 0, 0}, 0, PlaneRole::Tangent, 1e-9);
  arr.add({0, 1, 0}, 1, PlaneRole::Tangent, 1e-9);
  arr.add(Vec3(1, 1, 0).normalized(), 2, PlaneRole::Tangent, 1e-9);
  arr.add({0, 0, 1}, 3, PlaneRole::Tangent, 1e-9);
  const ArrangementCells cells = enumerate_cells(arr);
  CHECK(cells.vertices() == 12);
  CHECK(cells.edges() == 18);
  CHECK(cells.faces() == 8);  // the axis, plus three lines in d_r = 0
  std::mt19937_64 rng(29);
  check_cells_against_oracles(arr, rng, 2000);

  // Four planes through one axis and a fifth across it.
  PlaneArrangement fan(5);
  for (std::size_t k = 0; k < 4; ++k) {
    const double a = std::acos(-1.0) * static_cast<double>(k) / 4.0;
    fan.add({std::cos(a), std::sin(a), 0.0}, k, PlaneRole::Tangent, 1e-9);
  }
  fan.add(Vec3(0.2, -0.1, 1.0).normalized(), 4, PlaneRole::Tangent, 1e-9);
  check_cells_against_oracles(fan, rng, 2000);
}

TEST_CASE("bundles of planes through common lines, up to round-off") {
  // Normals built as cross products with an axis are coplanar only to
  // round-off; the shared rays must still be found.
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  auto random_vec = [&] { return Vec3(gauss(rng), gauss(rng), gauss(rng)).normalized(); };
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Vec3> normals;
    for (int a = 0; a < 1 + trial % 3; ++a) {
      const Vec3 axis = random_vec();
      for (int i = 0; i < 2 + trial % 4; ++i) normals.push_back(axis.cross(random_vec()).normalized());
    }
    for (int i = 0; i < trial % 3; ++i) normals.push_back(random_vec());
    PlaneArrangement arr(normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) arr.add(normals[i], i, PlaneRole::Tangent, 1e-9);
    if (arr.rank() != 3) continue;
    INFO("trial " << trial);
    check_cells_against_oracles(arr, rng, 300);
    ++checked;
  }
  CHECK(checked > 80);
}
