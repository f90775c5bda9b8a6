#pragma once

// Fixtures and independent reference computations shared by the test binaries.
// Nothing here calls the code paths it is used to check.

#include "graspeq/arrangement.hpp"
#include "graspeq/cycle_basis.hpp"
#include "graspeq/grasp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace graspeq::testing {

inline GraspModel three_contact(bool preload) {
  GraspModel g;
  g.name = preload ? "three-contact-preload" : "three-contact";
  g.contacts = {{{-1, 0}, {-1, 0}, 0.5}, {{0, -1}, {0, -1}, 0.5}, {{1, 0}, {1, 0}, 0.5}};
  g.stiffness = {1, 1, 1};
  if (preload) g.preload = {{1, -0.5}, {1, 0}, {1, 0.5}};
  return g;
}

inline GraspModel four_contact(bool preload) {
  GraspModel g;
  g.name = preload ? "four-contact-preload" : "four-contact";
  g.contacts = {{{-1, 1}, {-1, 0}, 0.5}, {{-1, -1}, {-1, 0}, 0.5}, {{1, -1}, {1, 0}, 0.5}, {{1, 1}, {1, 0}, 0.5}};
  g.stiffness = {1, 1, 1, 1};
  if (preload) g.preload = {{1, 0}, {1, 0}, {1, 0}, {1, 0}};
  return g;
}

inline AnalysisOptions no_detach() {
  AnalysisOptions o;
  o.detachment = false;
  return o;
}

inline double max_abs_diff(const Vec3& a, const Vec3& b) { return (a - b).cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// Arrangement oracles: rays are found directly from pairwise plane
// intersections, facets from the rays lying in each plane.

inline std::vector<Vec3> oracle_rays(const std::vector<Vec3>& normals, double eps = 1e-9) {
  std::vector<Vec3> rays;
  auto known = [&](const Vec3& d) {
    return std::any_of(rays.begin(), rays.end(), [&](const Vec3& r) { return (r - d).norm() < 1e-7; });
  };
  for (std::size_t a = 0; a < normals.size(); ++a) {
    for (std::size_t b = a + 1; b < normals.size(); ++b) {
      Vec3 d = normals[a].normalized().cross(normals[b].normalized());
      if (d.norm() < eps) continue;
      d.normalize();
      for (const Vec3& r : {d, Vec3(-d)}) {
        if (!known(r)) rays.push_back(r);
      }
    }
  }
  return rays;
}

inline std::size_t oracle_facets(const std::vector<Vec3>& normals, const std::vector<Vec3>& rays) {
  std::size_t facets = 0;
  for (const Vec3& n : normals) {
    const std::size_t in_plane = static_cast<std::size_t>(
        std::count_if(rays.begin(), rays.end(), [&](const Vec3& r) { return std::abs(n.normalized().dot(r)) < 1e-9; }));
    facets += in_plane == 0 ? 1 : in_plane;
  }
  return facets;
}

inline SignVector sign_of(const PlaneArrangement& arr, const Vec3& d, double zero = 1e-9) {
  SignVector s(arr.size());
  for (std::size_t p = 0; p < arr.size(); ++p) {
    const double v = arr[p].normal.dot(d);
    s[p] = static_cast<std::int8_t>(v > zero ? 1 : (v < -zero ? -1 : 0));
  }
  return s;
}

inline Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 d(g(rng), g(rng), g(rng));
  return d.normalized();
}

// ---------------------------------------------------------------------------
// Cycle-basis oracle: every simple cycle by exhaustive search, then greedy
// independent selection by length (optimal for the cycle matroid).

inline std::vector<EdgeSet> all_simple_cycles(const UndirectedGraph& g) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.vertex_count);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].first].push_back({g.edges[e].second, e});
    adj[g.edges[e].second].push_back({g.edges[e].first, e});
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<EdgeSet> cycles;
  std::vector<bool> on_path(g.vertex_count, false);
  std::vector<std::size_t> path_edges;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
    for (auto [w, e] : adj[v]) {
      if (!path_edges.empty() && e == path_edges.back()) continue;
      if (w == start && path_edges.size() >= 2) {
        std::vector<std::size_t> key = path_edges;
        key.push_back(e);
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) cycles.push_back(EdgeSet::of(g.edges.size(), key));
        continue;
      }
      if (w < start || on_path[w]) continue;
      on_path[w] = true;
      path_edges.push_back(e);
      dfs(start, w);
      path_edges.pop_back();
      on_path[w] = false;
    }
  };
  for (std::size_t s = 0; s < g.vertex_count; ++s) {
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  return cycles;
}

inline std::size_t gf2_rank(std::vector<EdgeSet> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    ++rank;
    const std::size_t pivot = rows[i].lowest();
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j].test(pivot)) rows[j] ^= rows[i];
    }
  }
  return rank;
}

/// Total length of a minimum cycle basis.
inline std::size_t oracle_mcb_weight(const UndirectedGraph& g) {
  auto cycles = all_simple_cycles(g);
  std::stable_sort(cycles.begin(), cycles.end(),
                   [](const EdgeSet& a, const EdgeSet& b) { return a.edges().size() < b.edges().size(); });
  std::vector<EdgeSet> chosen;
  std::size_t weight = 0;
  for (const EdgeSet& c : cycles) {
    chosen.push_back(c);
    if (gf2_rank(chosen) == chosen.size()) {
      weight += c.edges().size();
    } else {
      chosen.pop_back();
    }
  }
  return weight;
}

inline UndirectedGraph cube_graph() {
  UndirectedGraph g{8, {}};
  for (std::size_t v = 0; v < 8; ++v) {
    for (std::size_t bit : {1u, 2u, 4u}) {
      if (!(v & bit)) g.edges.push_back({v, v | bit});
    }
  }
  return g;
}

}  // namespace graspeq::testing
