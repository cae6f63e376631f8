#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oddcycle/count.hpp"
#include "oddcycle/embedding.hpp"
#include "oddcycle/graph.hpp"

namespace oddcycle {

enum class ClusterKind { Empty, Single, Pair };

/// Which of S_∅, S_x, S_xy a vertex of S belongs to (x < y for pairs).
struct Cluster {
  ClusterKind kind = ClusterKind::Empty;
  VertexId x = -1;
  VertexId y = -1;

  friend auto operator<=>(const Cluster&, const Cluster&) = default;
};

using VertexPair = std::pair<VertexId, VertexId>;

/// A planar graph with the partition V = B ⊔ S, every vertex of S having at
/// most two neighbours in B.
class TumorGraph {
 public:
  TumorGraph() = default;

  const Graph& graph() const { return graph_; }
  const Embedding& embedding() const { return embedding_; }
  const VertexSet& B() const { return B_; }
  const VertexSet& S() const { return S_; }

  bool in_B(VertexId v) const { return B_.contains(v); }
  bool in_S(VertexId v) const { return S_.contains(v); }

  /// Cluster of a vertex of S.
  const Cluster& cluster(VertexId s) const;

  /// S_∅.
  std::vector<VertexId> empty_cluster() const;
  /// S_x.
  std::vector<VertexId> single_cluster(VertexId x) const;
  /// S_xy (order of x and y does not matter).
  std::vector<VertexId> tumor(VertexId x, VertexId y) const;
  /// All non-empty tumors keyed by (x, y) with x < y.
  std::map<VertexPair, std::vector<VertexId>> tumors() const;
  /// All non-empty S_x keyed by x.
  std::map<VertexId, std::vector<VertexId>> single_clusters() const;

  /// ⨆ S_x.
  std::vector<VertexId> single_vertices() const;
  /// ⨆ S_xy.
  std::vector<VertexId> tumor_vertices() const;

  bool is_tumor_vertex(VertexId v) const;
  bool is_single_vertex(VertexId v) const;

  /// Neighbours of v inside B.
  std::vector<VertexId> b_neighbors(VertexId v) const;

  EmbeddedGraph embedded() const { return {graph_, embedding_}; }

  friend TumorGraph make_tumor(Graph g, Embedding emb, VertexSet B);

 private:
  Graph graph_;
  Embedding embedding_;
  VertexSet B_;
  VertexSet S_;
  std::map<VertexId, Cluster> cluster_;
};

/// Builds the tumor graph (g; B, V \ B). Throws NotATumorGraph naming the first
/// vertex of S with three or more B-neighbours, InvalidArgument if B names
/// unknown vertices, MalformedEmbedding if emb does not match g.
TumorGraph make_tumor(Graph g, Embedding emb, VertexSet B);

inline TumorGraph make_tumor(const EmbeddedGraph& eg, VertexSet B) {
  return make_tumor(eg.graph, eg.embedding, std::move(B));
}

/// Structural facts of planar tumor graphs, checked rather than assumed.
struct TumorFacts {
  /// max over tumors S_xy and z not in {x, y} of |N(z) ∩ S_xy|.
  std::size_t max_tumor_neighbors = 0;
  /// max number of edges between two distinct tumors.
  std::size_t max_edges_between_tumors = 0;
  /// max over tumors of e(G[S_xy]) - |S_xy| (at most 0 when planar).
  long long max_tumor_excess = 0;
  bool holds() const {
    return max_tumor_neighbors <= 2 && max_edges_between_tumors <= 4 &&
           max_tumor_excess <= 0;
  }
};

TumorFacts tumor_facts(const TumorGraph& tg);

/// B/S label sequence of a cycle given by its vertices.
enum class Side : char { B = 'B', S = 'S' };

/// True when exactly one consecutive pair (cyclically) has equal labels.
bool is_good_pattern(std::span<const Side> labels);

enum class BadClass { SSS, TwoSS, BBB, BBSS, OneBBOneSS, TwoBB };
inline constexpr std::array<BadClass, 6> kBadClasses = {
    BadClass::SSS,  BadClass::TwoSS,      BadClass::BBB,
    BadClass::BBSS, BadClass::OneBBOneSS, BadClass::TwoBB};
std::string bad_class_name(BadClass c);

/// Classes containing the cyclic label sequence (in either orientation).
std::vector<BadClass> bad_classes_of(std::span<const Side> labels);

struct BadCycleCensus {
  std::map<BadClass, std::uint64_t> per_class;
  std::uint64_t good = 0;
  std::uint64_t total = 0;
  /// Copies in at least one class.
  std::uint64_t bad = 0;
};

/// Number of good copies of C_{2m+1}.
std::uint64_t count_good_cycles(const TumorGraph& tg, int m,
                                const CountOptions& options = {});

struct GoodCycleSplit {
  std::uint64_t total_cycles = 0;
  std::uint64_t good = 0;
  /// Good copies whose single monochromatic pair is an S-S edge (C_S).
  std::uint64_t with_ss = 0;
  /// Good copies whose single monochromatic pair is a B-B edge (C_B).
  std::uint64_t with_bb = 0;
};

GoodCycleSplit count_good_cycles_split(const TumorGraph& tg, int m,
                                       const CountOptions& options = {});

BadCycleCensus classify_bad_cycles(const TumorGraph& tg, int m,
                                   const CountOptions& options = {});

/// Number of good copies of C_{2m+1} that use at least one of the given edges
/// or vertices, together with the total good count.
struct GoodThrough {
  std::uint64_t good = 0;
  std::uint64_t through = 0;
};
GoodThrough count_good_through(const TumorGraph& tg, int m,
                               std::span<const Edge> edges,
                               std::span<const VertexId> vertices,
                               const CountOptions& options = {});

/// Auxiliary graph T on B: xy is an edge iff S_xy is non-empty.
Graph auxiliary_graph(const TumorGraph& tg);

/// True when the auxiliary graph is a matching.
bool is_separated(const TumorGraph& tg);

struct Separation {
  TumorGraph graph;
  /// For each original B vertex the B' vertices it was split into.
  std::map<VertexId, VertexSet> lifting;
  /// B-B edges dropped before splitting.
  std::vector<Edge> removed_b_edges;
  /// Each split as (x, new vertex).
  std::vector<std::pair<VertexId, VertexId>> splits;
};

/// Splits B vertices until the auxiliary graph is a matching. G[S] is kept,
/// every S_x vertex lands in S'_{x'} for some x' in lifting[x] and every S_xy
/// vertex in some S'_{x'y'}.
Separation separate(const TumorGraph& tg);

}  // namespace oddcycle
