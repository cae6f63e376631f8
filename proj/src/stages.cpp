#include "oddcycle/stages.hpp"

#include <algorithm>
#include <set>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

bool same_tumor(const Cluster& a, const Cluster& b) {
  return a.kind == ClusterKind::Pair && a == b;
}

bool tumor_contains(const Cluster& c, VertexId x) {
  return c.kind == ClusterKind::Pair && (c.x == x || c.y == x);
}

VertexSet without(const VertexSet& set, std::span<const VertexId> drop) {
  VertexSet out = set;
  for (VertexId v : drop) out.erase(v);
  return out;
}

// Carries the evolving graph of one stage together with its audit.
class StageRun {
 public:
  StageRun(const TumorGraph& tg, const StageOptions& options, std::string name)
      : tg_(tg), options_(options) {
    if (options.m < 2) throw InvalidArgument("m must be at least 2");
    audit_.stage = std::move(name);
    const auto split = count_good_cycles_split(tg_, options_.m, options_.count);
    audit_.good_before = split.good;
    audit_.total_before = split.total_cycles;
    audit_.b_before = tg_.B().size();
    good_ = split.good;
  }

  const TumorGraph& graph() const { return tg_; }
  StageAudit& audit() { return audit_; }
  int m() const { return options_.m; }

  void delete_batch(std::string reason, std::vector<Edge> edges,
                    std::vector<VertexId> vertices) {
    if (edges.empty() && vertices.empty()) return;
    const GoodThrough through = count_good_through(tg_, options_.m, edges,
                                                   vertices, options_.count);
    DeletionBatch batch;
    batch.reason = std::move(reason);
    batch.good_before = through.good;
    batch.good_through_removed = through.through;

    EmbeddedGraph eg = tg_.embedded();
    delete_edges(eg, edges);
    delete_vertices(eg, vertices);
    tg_ = make_tumor(eg, without(tg_.B(), vertices));

    if (options_.mode == VerifyMode::Test) {
      batch.good_after = count_good_cycles(tg_, options_.m, options_.count);
      if (batch.good_after != through.good - through.through) {
        throw InvariantViolation(
            "exact-loss identity failed for batch '" + batch.reason + "': " +
            std::to_string(batch.good_after) + " != " +
            std::to_string(through.good) + " - " +
            std::to_string(through.through));
      }
    } else {
      batch.good_after = through.good - through.through;
    }
    good_ = batch.good_after;
    audit_.good_through_removed += batch.good_through_removed;
    audit_.removed_edges.insert(audit_.removed_edges.end(), edges.begin(),
                                edges.end());
    audit_.removed_vertices.insert(audit_.removed_vertices.end(),
                                   vertices.begin(), vertices.end());
    batch.edges = std::move(edges);
    batch.vertices = std::move(vertices);
    audit_.batches.push_back(std::move(batch));
  }

  void rewrite(const std::array<VertexId, 4>& path) {
    RewriteRecord record;
    record.path = path;
    const bool test = options_.mode == VerifyMode::Test;
    if (test) record.good_before = good_;

    EmbeddedGraph eg =
        contract_uncontract(tg_.graph(), tg_.embedding(), path);
    if (!validate_embedding(eg.graph, eg.embedding).planar) {
      throw InvariantViolation("contraction-uncontraction broke planarity");
    }
    tg_ = make_tumor(eg, tg_.B());

    if (test) {
      good_ = count_good_cycles(tg_, options_.m, options_.count);
      record.good_after = good_;
      if (*record.good_after < *record.good_before) {
        throw InvariantViolation("rewrite decreased the good-cycle count");
      }
    }
    audit_.rewrites.push_back(record);
  }

  void replace_graph(TumorGraph tg) { tg_ = std::move(tg); }

  StageResult finish() {
    const auto split = count_good_cycles_split(tg_, options_.m, options_.count);
    audit_.good_after = split.good;
    audit_.total_after = split.total_cycles;
    audit_.b_after = tg_.B().size();
    if (!audit_.accounting_holds()) {
      throw InvariantViolation(audit_.stage + ": good_after " +
                               std::to_string(audit_.good_after) +
                               " below good_before - good_through_removed");
    }
    return {std::move(tg_), std::move(audit_)};
  }

 private:
  TumorGraph tg_;
  StageOptions options_;
  StageAudit audit_;
  std::uint64_t good_ = 0;
};

bool degenerate(const TumorGraph& tg) { return tg.S().empty(); }

}  // namespace

StageOptions default_stage_options(const TumorGraph& tg, int m,
                                   const CountOptions& count) {
  StageOptions options;
  options.m = m;
  options.count = count;
  options.mode = tg.graph().num_vertices() < kTestModeBelow ? VerifyMode::Test
                                                            : VerifyMode::Fast;
  return options;
}

bool is_stage_one(const TumorGraph& tg) {
  if (degenerate(tg)) return true;
  if (!tg.empty_cluster().empty()) return false;
  for (const Edge& e : tg.graph().edges()) {
    if (tg.is_single_vertex(e.u) && tg.is_single_vertex(e.v)) return false;
  }
  return true;
}

bool is_stage_two(const TumorGraph& tg) {
  if (degenerate(tg)) return true;
  if (!is_stage_one(tg)) return false;
  for (const Edge& e : tg.graph().edges()) {
    if (tg.is_tumor_vertex(e.u) && tg.is_tumor_vertex(e.v) &&
        !same_tumor(tg.cluster(e.u), tg.cluster(e.v))) {
      return false;
    }
  }
  for (VertexId v : tg.single_vertices()) {
    const VertexId x = tg.cluster(v).x;
    std::size_t tumor_neighbors = 0;
    for (VertexId w : tg.graph().neighbors(v)) {
      if (!tg.is_tumor_vertex(w)) continue;
      ++tumor_neighbors;
      if (tumor_contains(tg.cluster(w), x)) return false;
    }
    if (tumor_neighbors > 1) return false;
  }
  return true;
}

bool is_benign(const TumorGraph& tg) {
  for (const Edge& e : tg.graph().edges()) {
    if (!tg.in_S(e.u) || !tg.in_S(e.v)) continue;
    if (!same_tumor(tg.cluster(e.u), tg.cluster(e.v))) return false;
  }
  return true;
}

StageResult stage1(const TumorGraph& tg, const StageOptions& options) {
  StageRun run(tg, options, "stage1");
  if (degenerate(tg)) return run.finish();

  std::vector<Edge> inside;
  for (const Edge& e : tg.graph().edges()) {
    if (tg.is_single_vertex(e.u) && tg.is_single_vertex(e.v) &&
        tg.cluster(e.u).x == tg.cluster(e.v).x) {
      inside.push_back(e);
    }
  }
  run.delete_batch("S_empty vertices and edges inside S_x", std::move(inside),
                   tg.empty_cluster());

  while (true) {
    const TumorGraph& g = run.graph();
    std::optional<std::array<VertexId, 4>> path;
    for (const Edge& e : g.graph().edges()) {
      if (g.is_single_vertex(e.u) && g.is_single_vertex(e.v)) {
        const VertexId x = g.cluster(e.u).x;
        const VertexId y = g.cluster(e.v).x;
        if (x == y) {
          throw InvariantViolation("edge inside S_x survived stage I deletion");
        }
        path = std::array<VertexId, 4>{x, e.u, e.v, y};
        break;
      }
    }
    if (!path) break;
    const std::size_t before = g.single_vertices().size();
    run.rewrite(*path);
    const std::size_t after = run.graph().single_vertices().size();
    if (after + 2 != before) {
      throw InvariantViolation("stage I rewrite did not shrink the S_x union by 2");
    }
  }

  StageResult result = run.finish();
  if (!is_stage_one(result.graph)) {
    throw InvariantViolation("stage1 output is not a Stage I graph");
  }
  return result;
}

StageResult stage2(const TumorGraph& tg, const StageOptions& options) {
  if (!is_stage_one(tg)) {
    throw PreconditionError("stage2 needs a Stage I tumor graph");
  }
  StageRun run(tg, options, "stage2");
  if (degenerate(tg)) return run.finish();

  // U: vertices of S_x that see three tumor vertices, two tumors, or two
  // vertices of one tumor avoiding x.
  std::set<VertexId> U;
  for (VertexId v : tg.single_vertices()) {
    const VertexId x = tg.cluster(v).x;
    std::map<Cluster, std::size_t> per_tumor;
    std::size_t total = 0;
    for (VertexId w : tg.graph().neighbors(v)) {
      if (!tg.is_tumor_vertex(w)) continue;
      ++total;
      ++per_tumor[tg.cluster(w)];
    }
    bool bad = total >= 3 || per_tumor.size() >= 2;
    for (const auto& [c, count] : per_tumor) {
      if (count >= 2 && !tumor_contains(c, x)) bad = true;
    }
    if (bad) U.insert(v);
  }
  std::vector<Edge> first_batch;
  for (const Edge& e : tg.graph().edges()) {
    if ((U.contains(e.u) && tg.is_tumor_vertex(e.v)) ||
        (U.contains(e.v) && tg.is_tumor_vertex(e.u))) {
      first_batch.push_back(e);
    }
  }
  run.delete_batch("edges between U and tumors", std::move(first_batch), {});

  while (true) {
    const TumorGraph& g = run.graph();
    std::optional<std::array<VertexId, 4>> path;
    for (const Edge& e : g.graph().edges()) {
      VertexId u = e.u;
      VertexId v = e.v;
      if (!g.is_single_vertex(u)) std::swap(u, v);
      if (!g.is_single_vertex(u) || !g.is_tumor_vertex(v)) continue;
      const VertexId x = g.cluster(u).x;
      const Cluster& c = g.cluster(v);
      if (!tumor_contains(c, x)) continue;
      const VertexId y = c.x == x ? c.y : c.x;
      for (VertexId w : g.graph().neighbors(u)) {
        if (w == x || !g.graph().has_edge(v, w)) continue;
        if (!(g.is_tumor_vertex(w) && g.cluster(w) == c)) {
          throw InvariantViolation(
              "merge precondition N(u) ∩ N(v) ⊆ {x} ∪ S_xy fails at edge " +
              std::to_string(u) + "-" + std::to_string(v));
        }
      }
      path = std::array<VertexId, 4>{x, u, v, y};
      break;
    }
    if (!path) break;
    const std::size_t before = g.single_vertices().size();
    run.rewrite(*path);
    const std::size_t after = run.graph().single_vertices().size();
    if (after + 1 != before) {
      throw InvariantViolation("stage II rewrite did not shrink the S_x union by 1");
    }
  }

  {
    const TumorGraph& g = run.graph();
    std::vector<Edge> cross;
    for (const Edge& e : g.graph().edges()) {
      if (g.is_tumor_vertex(e.u) && g.is_tumor_vertex(e.v) &&
          !same_tumor(g.cluster(e.u), g.cluster(e.v))) {
        cross.push_back(e);
      }
    }
    run.delete_batch("edges between distinct tumors", std::move(cross), {});
  }

  StageResult result = run.finish();
  if (!is_stage_two(result.graph)) {
    throw InvariantViolation("stage2 output is not a Stage II graph");
  }
  return result;
}

StageResult stage3(const TumorGraph& tg, const StageOptions& options) {
  if (!is_stage_two(tg)) {
    throw PreconditionError("stage3 needs a Stage II tumor graph");
  }
  StageRun run(tg, options, "stage3");
  if (degenerate(tg)) return run.finish();

  std::set<VertexId> Z;
  for (VertexId z : tg.tumor_vertices()) {
    const Cluster& c = tg.cluster(z);
    for (VertexId w : tg.graph().neighbors(z)) {
      if (tg.is_single_vertex(w) && !tumor_contains(c, tg.cluster(w).x)) {
        Z.insert(z);
        break;
      }
    }
  }
  std::vector<Edge> cut;
  for (const Edge& e : tg.graph().edges()) {
    if ((Z.contains(e.u) && tg.is_tumor_vertex(e.v)) ||
        (Z.contains(e.v) && tg.is_tumor_vertex(e.u))) {
      cut.push_back(e);
    }
  }
  run.delete_batch("edges between Z and tumors", std::move(cut), {});

  if (!Z.empty()) {
    const TumorGraph& old = run.graph();
    VertexSet promoted_B = old.B();
    promoted_B.insert(Z.begin(), Z.end());
    // Good cycles of G' under (B, S) that are no longer good under (B', S').
    std::uint64_t lost = 0;
    std::vector<Side> before_labels;
    std::vector<Side> after_labels;
    for_each_copy(
        old.graph(), Pattern::cycle(2 * run.m() + 1),
        [&](std::span<const VertexId> cycle) {
          before_labels.clear();
          after_labels.clear();
          for (VertexId v : cycle) {
            before_labels.push_back(old.in_B(v) ? Side::B : Side::S);
            after_labels.push_back(promoted_B.contains(v) ? Side::B : Side::S);
          }
          if (is_good_pattern(before_labels) &&
              !is_good_pattern(after_labels)) {
            ++lost;
          }
        },
        options.count);
    run.audit().lost_to_promotion = lost;
    run.audit().good_through_removed += lost;
    run.audit().promoted.assign(Z.begin(), Z.end());
    run.replace_graph(make_tumor(old.embedded(), std::move(promoted_B)));
  }

  StageResult result = run.finish();
  if (!is_benign(result.graph)) {
    throw InvariantViolation("stage3 output is not benign");
  }
  if (Z.size() > 2 * tg.B().size()) {
    throw InvariantViolation("|Z| exceeds 2|B|");
  }
  if (result.graph.B().size() > 3 * tg.B().size()) {
    throw InvariantViolation("|B'| exceeds 3|B|");
  }
  return result;
}

}  // namespace oddcycle
