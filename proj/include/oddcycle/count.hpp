#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "oddcycle/graph.hpp"

namespace oddcycle {

enum class PatternKind { Path, Cycle };

/// P_k (k vertices, k-1 edges) or C_k (k vertices, k edges).
struct Pattern {
  PatternKind kind = PatternKind::Path;
  int k = 1;

  static Pattern path(int k) { return {PatternKind::Path, k}; }
  static Pattern cycle(int k) { return {PatternKind::Cycle, k}; }

  /// Parses "P6" or "C7".
  static Pattern parse(const std::string& text);
  std::string name() const;

  int edge_count() const {
    return kind == PatternKind::Cycle ? k : (k > 0 ? k - 1 : 0);
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

/// Reads ODDCYCLE_BUDGET, falling back when unset. Throws InvalidArgument on
/// a malformed value.
std::uint64_t budget_from_environment(std::uint64_t fallback = kDefaultBudget);

struct CountOptions {
  /// Maximum number of partial extensions before BudgetExceeded.
  std::uint64_t budget = kDefaultBudget;
  /// Worker threads used for anchor-parallel enumeration.
  unsigned threads = 1;
};

struct CopyCount {
  Pattern pattern;
  std::uint64_t count = 0;
  /// Partial extensions explored.
  std::uint64_t nodes = 0;
};

/// Number of unlabeled copies of P_k. count_paths(g, 1) = v(G) and
/// count_paths(g, 2) = e(G).
CopyCount count_paths(const Graph& g, int k, const CountOptions& options = {});

/// Number of unlabeled copies of C_k, k >= 3.
CopyCount count_cycles(const Graph& g, int k, const CountOptions& options = {});

CopyCount count_copies(const Graph& g, Pattern pattern,
                       const CountOptions& options = {});

/// Receives each copy once, as its canonical vertex sequence: for paths the
/// endpoint with the smaller id comes first; for cycles the sequence starts at
/// the smallest id and its second vertex is smaller than its last.
using CopyVisitor = std::function<void(std::span<const VertexId>)>;

/// Calls the visitor once per copy and returns the number of visits. The
/// visitor runs on the calling thread unless concurrent_visitor is set, in
/// which case it may be invoked from several worker threads at once.
std::uint64_t for_each_copy(const Graph& g, Pattern pattern,
                            const CopyVisitor& visitor,
                            const CountOptions& options = {},
                            bool concurrent_visitor = false);

}  // namespace oddcycle
