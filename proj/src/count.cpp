#include "oddcycle/count.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

#include "oddcycle/error.hpp"

namespace oddcycle {

Pattern Pattern::parse(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'P' && text[0] != 'C')) {
    throw InvalidArgument("pattern must look like P6 or C7, got '" + text + "'");
  }
  int k = 0;
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, k);
  if (ec != std::errc{} || ptr != last || k < 0) {
    throw InvalidArgument("bad pattern size in '" + text + "'");
  }
  return text[0] == 'P' ? path(k) : cycle(k);
}

std::string Pattern::name() const {
  return (kind == PatternKind::Path ? "P" : "C") + std::to_string(k);
}

std::uint64_t budget_from_environment(std::uint64_t fallback) {
  const char* raw = std::getenv("ODDCYCLE_BUDGET");
  if (raw == nullptr || *raw == '\0') return fallback;
  std::uint64_t value = 0;
  const char* last = raw + std::char_traits<char>::length(raw);
  auto [ptr, ec] = std::from_chars(raw, last, value);
  if (ec != std::errc{} || ptr != last || value == 0) {
    throw InvalidArgument(std::string("ODDCYCLE_BUDGET must be a positive integer, got '") +
                          raw + "'");
  }
  return value;
}

namespace {

struct DenseGraph {
  std::vector<VertexId> label;
  std::vector<std::vector<int>> adj;
};

DenseGraph densify(const Graph& g) {
  DenseGraph d;
  d.label = g.vertices();
  std::map<VertexId, int> index;
  for (std::size_t i = 0; i < d.label.size(); ++i) {
    index[d.label[i]] = static_cast<int>(i);
  }
  d.adj.resize(d.label.size());
  for (std::size_t i = 0; i < d.label.size(); ++i) {
    for (VertexId w : g.neighbors(d.label[i])) d.adj[i].push_back(index[w]);
  }
  return d;
}

class SharedBudget {
 public:
  explicit SharedBudget(std::uint64_t limit) : limit_(limit) {}

  // Adds a batch of nodes; throws once the total passes the limit.
  void charge(std::uint64_t nodes) {
    const std::uint64_t total = used_.fetch_add(nodes) + nodes;
    if (total > limit_) {
      throw BudgetExceeded("enumeration budget of " + std::to_string(limit_) +
                           " partial extensions exceeded");
    }
  }
  std::uint64_t used() const { return used_.load(); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

// Backtracking enumerator for one anchor at a time.
class Enumerator {
 public:
  Enumerator(const DenseGraph& g, Pattern pattern, SharedBudget& budget,
             const CopyVisitor* visitor)
      : g_(g),
        pattern_(pattern),
        budget_(budget),
        visitor_(visitor),
        on_path_(g.adj.size(), 0),
        closes_(g.adj.size(), 0) {
    path_.reserve(static_cast<std::size_t>(pattern.k));
    labels_.resize(static_cast<std::size_t>(pattern.k));
  }

  std::uint64_t run_anchor(int s) {
    found_ = 0;
    path_.assign(1, s);
    on_path_[s] = 1;
    if (pattern_.kind == PatternKind::Cycle) {
      for (int w : g_.adj[s]) closes_[w] = 1;
    }
    extend();
    if (pattern_.kind == PatternKind::Cycle) {
      for (int w : g_.adj[s]) closes_[w] = 0;
    }
    on_path_[s] = 0;
    flush();
    return found_;
  }

  void flush() {
    if (pending_ > 0) {
      budget_.charge(pending_);
      pending_ = 0;
    }
  }

 private:
  void emit() {
    ++found_;
    if (visitor_ != nullptr) {
      for (std::size_t i = 0; i < path_.size(); ++i) {
        labels_[i] = g_.label[path_[i]];
      }
      (*visitor_)(std::span<const VertexId>(labels_.data(), path_.size()));
    }
  }

  void extend() {
    const int k = pattern_.k;
    const int depth = static_cast<int>(path_.size());
    const int last = path_.back();
    if (depth == k) {
      if (pattern_.kind == PatternKind::Cycle) {
        if (closes_[last] && path_[1] < last) emit();
      } else if (path_.front() < last) {
        emit();
      }
      return;
    }
    const int anchor = path_.front();
    for (int w : g_.adj[last]) {
      if (on_path_[w]) continue;
      if (pattern_.kind == PatternKind::Cycle &&
          (w < anchor || (depth == k - 1 && !closes_[w]))) {
        continue;
      }
      if (++pending_ >= kBatch) flush();
      path_.push_back(w);
      on_path_[w] = 1;
      extend();
      on_path_[w] = 0;
      path_.pop_back();
    }
  }

  static constexpr std::uint64_t kBatch = 1 << 14;

  const DenseGraph& g_;
  Pattern pattern_;
  SharedBudget& budget_;
  const CopyVisitor* visitor_;
  std::vector<int> path_;
  std::vector<VertexId> labels_;
  std::vector<char> on_path_;
  std::vector<char> closes_;
  std::uint64_t pending_ = 0;
  std::uint64_t found_ = 0;
};

void check_pattern(Pattern pattern) {
  if (pattern.kind == PatternKind::Path && pattern.k < 0) {
    throw InvalidArgument("path patterns need k >= 0");
  }
  if (pattern.kind == PatternKind::Cycle && pattern.k < 3) {
    throw InvalidArgument("cycle patterns need k >= 3");
  }
}

CopyCount enumerate(const Graph& g, Pattern pattern, const CopyVisitor* visitor,
                    const CountOptions& options, bool concurrent_visitor) {
  check_pattern(pattern);
  CopyCount result{pattern, 0, 0};
  if (pattern.kind == PatternKind::Path && pattern.k == 0) {
    // The null graph has exactly one (empty) copy.
    if (visitor != nullptr) (*visitor)(std::span<const VertexId>());
    result.count = 1;
    return result;
  }
  const DenseGraph dense = densify(g);
  const int n = static_cast<int>(dense.label.size());

  if (pattern.kind == PatternKind::Path && pattern.k == 1) {
    for (VertexId v : dense.label) {
      if (visitor != nullptr) (*visitor)(std::span<const VertexId>(&v, 1));
    }
    result.count = dense.label.size();
    return result;
  }
  if (pattern.k > n) return result;

  SharedBudget budget(options.budget);
  const unsigned threads =
      (visitor != nullptr && !concurrent_visitor) ? 1u
                                                  : std::max(1u, options.threads);
  if (threads == 1 || n < 2) {
    Enumerator e(dense, pattern, budget, visitor);
    for (int s = 0; s < n; ++s) result.count += e.run_anchor(s);
    result.nodes = budget.used();
    return result;
  }

  std::atomic<int> next{0};
  std::atomic<std::uint64_t> total{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      try {
        Enumerator e(dense, pattern, budget, visitor);
        for (int s = next.fetch_add(1); s < n; s = next.fetch_add(1)) {
          total.fetch_add(e.run_anchor(s));
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  result.count = total.load();
  result.nodes = budget.used();
  return result;
}

}  // namespace

CopyCount count_paths(const Graph& g, int k, const CountOptions& options) {
  return enumerate(g, Pattern::path(k), nullptr, options, false);
}

CopyCount count_cycles(const Graph& g, int k, const CountOptions& options) {
  return enumerate(g, Pattern::cycle(k), nullptr, options, false);
}

CopyCount count_copies(const Graph& g, Pattern pattern,
                       const CountOptions& options) {
  return enumerate(g, pattern, nullptr, options, false);
}

std::uint64_t for_each_copy(const Graph& g, Pattern pattern,
                            const CopyVisitor& visitor,
                            const CountOptions& options,
                            bool concurrent_visitor) {
  return enumerate(g, pattern, &visitor, options, concurrent_visitor).count;
}

}  // namespace oddcycle
