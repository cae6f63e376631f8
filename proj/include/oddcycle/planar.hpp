#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oddcycle/embedding.hpp"
#include "oddcycle/graph.hpp"

namespace oddcycle {

/// One recorded inequality lhs <= rhs.
struct InequalityCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// Sparsity facts every planar graph satisfies.
struct PlanarReport {
  bool edge_count_ok = false;
  std::optional<bool> bipartite_edge_ok;
  /// d -> #{v : deg v >= d} for d = 1..max degree.
  std::map<std::size_t, std::size_t> high_degree_counts;
  bool high_degree_ok = false;
  /// #{a in A : |N(a) ∩ B| >= k} for the bipartition's B.
  std::optional<std::size_t> bipartite_A_bound;
  std::optional<bool> bipartite_A_ok;
  /// Number of P_3 copies with midpoint in A and both ends in B.
  std::optional<std::size_t> fork_count;
  std::optional<bool> fork_ok;
  std::vector<InequalityCheck> checks;

  bool all_ok() const;
};

struct PlanarQuery {
  /// Partition (A, B) of V(g).
  std::optional<std::pair<VertexSet, VertexSet>> bipartition;
  /// Threshold k >= 3 for the A_k count against the bipartition's B.
  std::optional<int> k;
  /// Disjoint sets (A, B) for the fork count.
  std::optional<std::pair<VertexSet, VertexSet>> fork_query;
};

PlanarReport planar_sanity(const Graph& g, const PlanarQuery& query = {});

/// Random stacked triangulation on n vertices; afterwards every edge not in
/// the starting triangle is deleted independently with probability
/// deletion_prob. Deterministic for a given seed.
EmbeddedGraph generate_planar(std::size_t n, std::uint64_t seed,
                              double deletion_prob);

/// The icosahedron graph (12 vertices, 30 edges, 5-regular).
Graph icosahedron_graph();

}  // namespace oddcycle
