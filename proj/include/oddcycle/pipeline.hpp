#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oddcycle/count.hpp"
#include "oddcycle/measure.hpp"
#include "oddcycle/planar.hpp"
#include "oddcycle/stages.hpp"
#include "oddcycle/tumor.hpp"

namespace oddcycle {

struct PartitionAudit {
  std::size_t n = 0;
  int m = 0;
  /// Smallest integers with d^5 >= n and D^5 >= n^2.
  std::size_t d = 0;
  std::size_t D = 0;
  VertexSet B;
  VertexSet S;
  VertexSet B_ltD;
  VertexSet B_geD;
  VertexSet S_prime;
  VertexSet S_doubleprime;
  /// Edges S'–B_{>=D}, then S''–B_{<D}.
  std::vector<Edge> deleted_geD;
  std::vector<Edge> deleted_ltD;
  std::uint64_t total_before = 0;
  std::uint64_t total_after = 0;
  /// Copies of C_{2m+1} using at least one deleted edge.
  std::uint64_t cycles_lost_exact = 0;
};

struct PartitionResult {
  TumorGraph graph;
  PartitionAudit audit;
};

/// S = {deg < d}, B = {deg >= d}; then deletes the S'–B_{>=D} and S''–B_{<D}
/// edges so that every S vertex has at most two B-neighbours.
PartitionResult degree_partition(const Graph& g, const Embedding& emb, int m,
                                 const CountOptions& count = {});

struct TumorMass {
  VertexId x = 0;
  VertexId y = 0;
  std::size_t size = 0;
  double mu = 0;
};

struct PipelineOptions {
  /// Empty: mode chosen per stage by size.
  std::optional<VerifyMode> mode;
  CountOptions count;
};

struct BoundReport {
  int m = 0;
  std::size_t n = 0;
  /// "degree" or "given".
  std::string partition_mode;
  std::optional<PartitionAudit> partition;
  /// B and census of G₁, the tumor graph entering Stage I.
  VertexSet initial_B;
  BadCycleCensus initial_census;
  std::vector<StageAudit> stages;
  /// B' and the benign graph G₂.
  VertexSet final_B;
  Graph final_graph;
  std::vector<TumorMass> tumors;
  /// Null when G₂ has no tumors.
  std::optional<EdgeMeasure> mu;
  bool no_tumors = false;
  /// m = 2: 2Σμ(e)²; m >= 3: 2m·β(μ;C_m).
  double coef_S = 0;
  /// β(μ;P_{m+1}).
  double coef_B = 0;
  double coefficient = 0;
  double bound = 0;
  std::uint64_t actual_total = 0;
  std::uint64_t actual_good = 0;
  std::uint64_t good_with_ss = 0;
  std::uint64_t good_with_bb = 0;
  std::uint64_t partition_loss = 0;
  std::uint64_t stage_losses = 0;
  std::vector<InequalityCheck> checks;

  bool all_ok() const;
};

/// Cleans G into a benign tumor graph and bounds its good C_{2m+1} count.
/// With B given the degree partition is skipped and the stages start from
/// make_tumor(g, emb, B).
BoundReport reduce(const Graph& g, const Embedding& emb, int m,
                   const std::optional<VertexSet>& B = std::nullopt,
                   const PipelineOptions& options = {});

}  // namespace oddcycle
