#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace oddcycle {

using VertexId = std::int32_t;
using VertexSet = std::set<VertexId>;

/// Undirected edge stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on integer vertex ids with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;

  /// Graph on vertices 0..n-1 with no edges.
  explicit Graph(std::size_t n);

  static Graph from_edges(std::span<const VertexId> vertices,
                          std::span<const Edge> edges);
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// Returns false if the vertex already exists.
  bool add_vertex(VertexId v);

  /// Adds an edge between existing vertices. Returns false if it was already
  /// present. Throws InvalidArgument on loops or unknown endpoints.
  bool add_edge(VertexId a, VertexId b);

  bool remove_edge(VertexId a, VertexId b);

  /// Removes the vertex and all incident edges.
  void remove_vertex(VertexId v);

  bool has_vertex(VertexId v) const { return adjacency_.contains(v); }
  bool has_edge(VertexId a, VertexId b) const;

  const std::vector<VertexId>& neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edge_count_; }

  /// Vertex ids in ascending order.
  std::vector<VertexId> vertices() const;

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const;

  /// Largest vertex id, or -1 for the empty graph.
  VertexId max_vertex_id() const;

  /// True when the vertex ids are exactly 0..n-1.
  bool has_contiguous_ids() const;

  /// Subgraph induced by the given vertices.
  Graph induced(const VertexSet& keep) const;

  /// Adjacency map, one sorted neighbour list per vertex.
  const std::map<VertexId, std::vector<VertexId>>& adjacency() const {
    return adjacency_;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::map<VertexId, std::vector<VertexId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Graphs used throughout tests and examples.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);

/// Connected components, each as a sorted vertex list, ordered by smallest id.
std::vector<std::vector<VertexId>> connected_components(const Graph& g);

}  // namespace oddcycle
