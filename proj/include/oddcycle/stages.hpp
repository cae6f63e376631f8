#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oddcycle/count.hpp"
#include "oddcycle/tumor.hpp"

namespace oddcycle {

/// Test mode recounts good cycles around every rewrite; fast mode only once
/// per deletion batch and per stage.
enum class VerifyMode { Test, Fast };

/// Graphs with fewer vertices than this default to test mode.
inline constexpr std::size_t kTestModeBelow = 25;

struct StageOptions {
  int m = 2;
  VerifyMode mode = VerifyMode::Test;
  CountOptions count;
};

/// Test mode below kTestModeBelow vertices, fast mode otherwise.
StageOptions default_stage_options(const TumorGraph& tg, int m,
                                   const CountOptions& count = {});

struct RewriteRecord {
  /// The path x-u-v-y along which contraction-uncontraction was applied.
  std::array<VertexId, 4> path{};
  /// Recounted in test mode only.
  std::optional<std::uint64_t> good_before;
  std::optional<std::uint64_t> good_after;
};

/// A batch of deletions with its exact good-cycle accounting.
struct DeletionBatch {
  std::string reason;
  std::vector<Edge> edges;
  std::vector<VertexId> vertices;
  std::uint64_t good_before = 0;
  std::uint64_t good_after = 0;
  std::uint64_t good_through_removed = 0;
};

struct StageAudit {
  std::string stage;
  std::vector<Edge> removed_edges;
  std::vector<VertexId> removed_vertices;
  /// Stage III only: tumor vertices moved into B.
  std::vector<VertexId> promoted;
  std::vector<RewriteRecord> rewrites;
  std::vector<DeletionBatch> batches;
  std::uint64_t good_before = 0;
  std::uint64_t good_after = 0;
  /// Exact number of good cycles lost to deletions (and, in Stage III, to
  /// the repartition).
  std::uint64_t good_through_removed = 0;
  /// Stage III only: good cycles that stop being good once Z joins B.
  std::uint64_t lost_to_promotion = 0;
  std::uint64_t total_before = 0;
  std::uint64_t total_after = 0;
  std::size_t b_before = 0;
  std::size_t b_after = 0;

  bool accounting_holds() const {
    return good_after + good_through_removed >= good_before;
  }
};

struct StageResult {
  TumorGraph graph;
  StageAudit audit;
};

/// S_∅ is empty and ⨆ S_x is independent.
bool is_stage_one(const TumorGraph& tg);

/// Stage I, no edges between distinct tumors, and each S_x vertex has at most
/// one tumor neighbour, lying in a tumor S_yz with x not in {y, z}.
bool is_stage_two(const TumorGraph& tg);

/// Every edge inside S joins two vertices of the same tumor.
bool is_benign(const TumorGraph& tg);

StageResult stage1(const TumorGraph& tg, const StageOptions& options);
StageResult stage2(const TumorGraph& tg, const StageOptions& options);
StageResult stage3(const TumorGraph& tg, const StageOptions& options);

}  // namespace oddcycle
