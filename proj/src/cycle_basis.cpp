#include "graspeq/cycle_basis.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace graspeq {

EdgeSet EdgeSet::of(std::size_t edge_count, const EdgeCycle& cycle) {
  EdgeSet s(edge_count);
  for (std::size_t e : cycle) s.flip(e);
  return s;
}

EdgeSet& EdgeSet::operator^=(const EdgeSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool EdgeSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t EdgeSet::lowest() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return words_.size() * 64;
}

EdgeCycle EdgeSet::edges() const {
  EdgeCycle out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

namespace {

struct Adjacent {
  std::size_t vertex;
  std::size_t edge;
};

std::vector<std::vector<Adjacent>> adjacency(const UndirectedGraph& g) {
  std::vector<std::vector<Adjacent>> adj(g.vertex_count);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [a, b] = g.edges[e];
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [](const Adjacent& x, const Adjacent& y) {
      return x.vertex != y.vertex ? x.vertex < y.vertex : x.edge < y.edge;
    });
  }
  return adj;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Breadth-first shortest-path tree; parent_edge[root] == kNone.
void bfs_tree(const std::vector<std::vector<Adjacent>>& adj, std::size_t root, std::vector<std::size_t>& parent_edge,
              std::vector<std::size_t>& parent, std::vector<std::size_t>& depth) {
  const std::size_t n = adj.size();
  parent_edge.assign(n, kNone);
  parent.assign(n, kNone);
  depth.assign(n, kNone);
  std::deque<std::size_t> queue{root};
  depth[root] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const Adjacent& a : adj[v]) {
      if (depth[a.vertex] != kNone) continue;
      depth[a.vertex] = depth[v] + 1;
      parent[a.vertex] = v;
      parent_edge[a.vertex] = a.edge;
      queue.push_back(a.vertex);
    }
  }
}

struct Candidate {
  std::size_t length;
  EdgeCycle edges;
  bool operator<(const Candidate& o) const { return length != o.length ? length < o.length : edges < o.edges; }
};

}  // namespace

bool is_connected(const UndirectedGraph& graph) {
  if (graph.vertex_count == 0) return true;
  const auto adj = adjacency(graph);
  std::vector<std::size_t> pe, par, depth;
  bfs_tree(adj, 0, pe, par, depth);
  return std::none_of(depth.begin(), depth.end(), [](std::size_t d) { return d == kNone; });
}

std::vector<EdgeCycle> minimum_cycle_basis(const UndirectedGraph& graph) {
  const std::size_t V = graph.vertex_count;
  const std::size_t E = graph.edges.size();
  if (!is_connected(graph)) throw std::invalid_argument("minimum_cycle_basis: graph is not connected");
  if (V == 0 || E + 1 <= V) return {};
  const std::size_t dimension = E - V + 1;

  const auto adj = adjacency(graph);
  std::set<Candidate> candidates;
  std::vector<std::size_t> parent_edge, parent, depth;
  std::vector<std::size_t> mark(V, kNone);

  for (std::size_t root = 0; root < V; ++root) {
    bfs_tree(adj, root, parent_edge, parent, depth);
    for (std::size_t e = 0; e < E; ++e) {
      const auto [x, y] = graph.edges[e];
      if (parent_edge[x] == e || parent_edge[y] == e) continue;
      // Paths root->x and root->y must meet only at the root.
      for (std::size_t v = x; v != kNone; v = parent[v]) mark[v] = root * E + e;
      bool disjoint = true;
      for (std::size_t v = y; v != root; v = parent[v]) {
        if (mark[v] == root * E + e) {
          disjoint = false;
          break;
        }
      }
      for (std::size_t v = x; v != kNone; v = parent[v]) mark[v] = kNone;
      if (!disjoint) continue;

      Candidate c;
      c.edges.push_back(e);
      for (std::size_t v = x; v != root; v = parent[v]) c.edges.push_back(parent_edge[v]);
      for (std::size_t v = y; v != root; v = parent[v]) c.edges.push_back(parent_edge[v]);
      std::sort(c.edges.begin(), c.edges.end());
      c.length = c.edges.size();
      candidates.insert(std::move(c));
    }
  }

  // Greedy selection with incremental GF(2) elimination keyed by pivot edge.
  std::map<std::size_t, EdgeSet> reduced;
  std::vector<EdgeCycle> basis;
  for (const Candidate& c : candidates) {
    EdgeSet v = EdgeSet::of(E, c.edges);
    while (!v.empty()) {
      auto it = reduced.find(v.lowest());
      if (it == reduced.end()) break;
      v ^= it->second;
    }
    if (v.empty()) continue;
    reduced.emplace(v.lowest(), v);
    basis.push_back(c.edges);
    if (basis.size() == dimension) break;
  }
  if (basis.size() != dimension) throw std::logic_error("minimum_cycle_basis: candidate set does not span cycle space");
  return basis;
}

EdgeCycle symmetric_sum(std::size_t edge_count, const std::vector<EdgeCycle>& cycles) {
  EdgeSet acc(edge_count);
  for (const auto& c : cycles) acc ^= EdgeSet::of(edge_count, c);
  return acc.edges();
}

std::vector<std::size_t> cycle_vertices(const UndirectedGraph& graph, const EdgeCycle& cycle) {
  if (cycle.size() < 3) throw std::logic_error("cycle_vertices: fewer than three edges");
  std::map<std::size_t, std::vector<std::size_t>> incident;
  for (std::size_t e : cycle) {
    incident[graph.edges[e].first].push_back(e);
    incident[graph.edges[e].second].push_back(e);
  }
  for (const auto& [v, es] : incident) {
    if (es.size() != 2) throw std::logic_error("cycle_vertices: vertex degree is not two");
  }
  std::vector<std::size_t> order;
  std::size_t start = graph.edges[cycle.front()].first;
  std::size_t v = start;
  std::size_t via = cycle.front();
  do {
    order.push_back(v);
    const auto [a, b] = graph.edges[via];
    v = (a == v) ? b : a;
    const auto& es = incident[v];
    via = (es[0] == via) ? es[1] : es[0];
  } while (v != start);
  if (order.size() != cycle.size()) throw std::logic_error("cycle_vertices: edge set is not a single cycle");
  return order;
}

}  // namespace graspeq
