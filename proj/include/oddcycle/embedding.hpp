#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "oddcycle/graph.hpp"

namespace oddcycle {

/// Directed edge (tail, head) used by face tracing.
struct Dart {
  VertexId tail = 0;
  VertexId head = 0;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

/// Rotation system: for each vertex its neighbours in counter-clockwise order.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::map<VertexId, std::vector<VertexId>> rotation)
      : rotation_(std::move(rotation)) {}

  bool contains(VertexId v) const { return rotation_.contains(v); }
  const std::vector<VertexId>& rotation(VertexId v) const;

  /// Neighbour following u in the rotation at v.
  VertexId successor(VertexId v, VertexId u) const;

  const std::map<VertexId, std::vector<VertexId>>& rotations() const {
    return rotation_;
  }

  /// Graph whose adjacency is read off the rotations. Throws
  /// MalformedEmbedding when the rotations are not symmetric or not simple.
  Graph underlying_graph() const;

  void set_rotation(VertexId v, std::vector<VertexId> order);

  /// Removes u from the rotation at v and v from the rotation at u.
  void remove_edge(VertexId u, VertexId v);

  /// Removes v and every occurrence of v in its neighbours' rotations.
  void remove_vertex(VertexId v);

  /// Replaces the entry `from` in the rotation at v by the sequence `to`.
  void replace_entry(VertexId v, VertexId from, std::span<const VertexId> to);

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::map<VertexId, std::vector<VertexId>> rotation_;
};

/// Graph together with a rotation system on it.
struct EmbeddedGraph {
  Graph graph;
  Embedding embedding;
};

struct ComponentEuler {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  bool euler_ok() const {
    return static_cast<long long>(vertices) - static_cast<long long>(edges) +
               static_cast<long long>(faces) ==
           2;
  }
};

/// Result of tracing the faces of a rotation system.
struct EmbeddingCheck {
  bool planar = false;
  /// Total face count; an isolated vertex contributes one face.
  std::size_t face_count = 0;
  /// Traced faces as dart cycles (isolated vertices do not appear here).
  std::vector<std::vector<Dart>> faces;
  std::vector<ComponentEuler> components;
};

/// Throws MalformedEmbedding unless the rotation at every vertex of g is a
/// permutation of its neighbourhood and emb covers exactly V(g).
void require_matching_embedding(const Graph& g, const Embedding& emb);

/// Traces faces and checks Euler's formula per connected component.
EmbeddingCheck validate_embedding(const Graph& g, const Embedding& emb);

/// Convenience: validate_embedding(...).planar.
bool is_planar_embedding(const Graph& g, const Embedding& emb);

/// Rotation system of a straight-line drawing: neighbours sorted by angle.
Embedding embedding_from_coordinates(
    const Graph& g, const std::map<VertexId, std::pair<double, double>>& xy);

/// Contracts the edge uv of the path x-u-v-y and uncontracts the merged vertex
/// along x and y, so that the result has the edges xu, xv, uy, vy and uv and
/// N'(u) ∪ N'(v) = N(u) ∪ N(v). Throws PreconditionError if the path is not a
/// path of g on four distinct vertices, MalformedEmbedding on a bad rotation.
EmbeddedGraph contract_uncontract(const Graph& g, const Embedding& emb,
                                  const std::array<VertexId, 4>& path);

/// Splits x into x and a new vertex `fresh`: the neighbours in `moved`, which
/// must form a contiguous run of the rotation at x, are reattached to `fresh`
/// in their rotation order. No edge joins x and fresh.
EmbeddedGraph split_vertex(const Graph& g, const Embedding& emb, VertexId x,
                           std::span<const VertexId> moved, VertexId fresh);

/// Deletes edges from both the graph and the embedding.
void delete_edges(EmbeddedGraph& eg, std::span<const Edge> edges);

/// Deletes vertices (and incident edges) from both the graph and the embedding.
void delete_vertices(EmbeddedGraph& eg, std::span<const VertexId> vertices);

}  // namespace oddcycle
