#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace graspeq {

struct UndirectedGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// A cycle as the sorted list of its edge indices.
using EdgeCycle = std::vector<std::size_t>;

/// Edge-incidence vector over GF(2).
class EdgeSet {
 public:
  explicit EdgeSet(std::size_t edge_count = 0) : words_((edge_count + 63) / 64, 0) {}
  static EdgeSet of(std::size_t edge_count, const EdgeCycle& cycle);

  void flip(std::size_t e) { words_[e / 64] ^= (std::uint64_t{1} << (e % 64)); }
  bool test(std::size_t e) const { return (words_[e / 64] >> (e % 64)) & 1U; }
  EdgeSet& operator^=(const EdgeSet& o);
  bool empty() const;
  /// Lowest set edge index; undefined for an empty set.
  std::size_t lowest() const;
  EdgeCycle edges() const;
  bool operator==(const EdgeSet& o) const { return words_ == o.words_; }

 private:
  std::vector<std::uint64_t> words_;
};

/// Minimum cycle basis of a connected, unweighted graph: E - V + 1 independent
/// cycles of minimum total length. Candidates follow Horton (BFS tree paths
/// from every root closed by one edge); ties are broken by lexicographic edge
/// order so the result is reproducible. Throws std::invalid_argument when the
/// graph is not connected.
std::vector<EdgeCycle> minimum_cycle_basis(const UndirectedGraph& graph);

/// GF(2) sum of all given cycles.
EdgeCycle symmetric_sum(std::size_t edge_count, const std::vector<EdgeCycle>& cycles);

/// Vertices visited by a cycle, in traversal order. Throws std::logic_error if
/// the edge set is not a single simple cycle.
std::vector<std::size_t> cycle_vertices(const UndirectedGraph& graph, const EdgeCycle& cycle);

bool is_connected(const UndirectedGraph& graph);

}  // namespace graspeq
