#include <algorithm>

#include "doctest.h"
#include "oddcycle/constructions.hpp"
#include "oddcycle/error.hpp"
#include "oddcycle/planar.hpp"
#include "oddcycle/stages.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace oddcycle;

namespace {

using Coords = std::map<VertexId, std::pair<double, double>>;

TumorGraph build(std::size_t n, const std::vector<Edge>& edges, const Coords& xy,
                 VertexSet B) {
  const Graph g = Graph::from_edges(n, edges);
  return make_tumor(g, embedding_from_coordinates(g, xy), std::move(B));
}

StageOptions test_options(int m) {
  StageOptions o;
  o.m = m;
  o.mode = VerifyMode::Test;
  return o;
}

}  // namespace

TEST_CASE("stage1: an edge between S_x and S_y becomes a tumor") {
  // x=0, u=1, v=2, y=3 on a line.
  const TumorGraph tg = build(4, {{0, 1}, {1, 2}, {2, 3}},
                              {{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {3, 0}}},
                              {0, 3});
  CHECK_FALSE(is_stage_one(tg));
  const StageResult r = stage1(tg, test_options(2));
  CHECK(is_stage_one(r.graph));
  REQUIRE(r.audit.rewrites.size() == 1);
  CHECK(r.audit.rewrites[0].path == std::array<VertexId, 4>{0, 1, 2, 3});
  CHECK(r.graph.single_vertices().empty());
  CHECK(r.graph.tumor(0, 3) == std::vector<VertexId>{1, 2});
  CHECK(r.audit.removed_edges.empty());
  CHECK(validate_embedding(r.graph.graph(), r.graph.embedding()).planar);
}

TEST_CASE("stage1: S_empty vertices and edges inside one S_x are deleted") {
  // x=0 with leaves 1, 2 joined to each other, and an isolated S vertex 3.
  const TumorGraph tg =
      build(4, {{0, 1}, {0, 2}, {1, 2}},
            {{0, {0, 0}}, {1, {1, 1}}, {2, {1, -1}}, {3, {5, 5}}}, {0});
  const StageResult r = stage1(tg, test_options(2));
  CHECK(r.audit.removed_edges == std::vector<Edge>{{1, 2}});
  CHECK(r.audit.removed_vertices == std::vector<VertexId>{3});
  CHECK_FALSE(r.graph.graph().has_vertex(3));
  CHECK(is_stage_one(r.graph));
}

TEST_CASE("stage2: an S_x vertex next to S_xy joins the tumor") {
  // x=0, y=1, tumor vertex v=2, single vertex u=3 adjacent to x and v.
  const TumorGraph tg =
      build(4, {{0, 2}, {1, 2}, {0, 3}, {2, 3}},
            {{0, {0, 0}}, {1, {0, 4}}, {2, {1, 2}}, {3, {2, 1}}}, {0, 1});
  REQUIRE(is_stage_one(tg));
  CHECK_FALSE(is_stage_two(tg));
  const StageResult r = stage2(tg, test_options(2));
  CHECK(is_stage_two(r.graph));
  REQUIRE(r.audit.rewrites.size() == 1);
  CHECK(r.graph.tumor(0, 1).size() == 2);
  CHECK(r.graph.single_vertices().empty());
}

TEST_CASE("stage2: an S_x vertex touching two tumors loses those edges") {
  // x=0, y=1, z=2; a=3 in S_xy, b=4 in S_xz, u=5 in S_x adjacent to a and b.
  const TumorGraph tg = build(
      6, {{0, 3}, {1, 3}, {0, 4}, {2, 4}, {0, 5}, {3, 5}, {4, 5}},
      {{0, {0, 0}}, {1, {-3, 3}}, {2, {3, 3}}, {3, {-1, 2}}, {4, {1, 2}}, {5, {0, 3}}},
      {0, 1, 2});
  const StageResult r = stage2(tg, test_options(2));
  CHECK(r.audit.removed_edges == std::vector<Edge>{{3, 5}, {4, 5}});
  CHECK(r.audit.rewrites.empty());
  CHECK(is_stage_two(r.graph));
}

TEST_CASE("stage3: a tumor vertex seen from a foreign S_x is promoted") {
  // x=0, y=1, z=2; a=3 in S_yz, w=4 in S_x adjacent to a.
  const TumorGraph tg =
      build(5, {{1, 3}, {2, 3}, {0, 4}, {3, 4}},
            {{0, {0, 0}}, {1, {-2, 3}}, {2, {2, 3}}, {3, {0, 3}}, {4, {0, 1}}},
            {0, 1, 2});
  REQUIRE(is_stage_two(tg));
  CHECK_FALSE(is_benign(tg));
  const StageResult r = stage3(tg, test_options(2));
  CHECK(r.audit.promoted == std::vector<VertexId>{3});
  CHECK(r.graph.in_B(3));
  CHECK(is_benign(r.graph));
  CHECK(r.graph.B().size() == 4);
}

TEST_CASE("stages: preconditions and argument checks") {
  const TumorGraph line = build(4, {{0, 1}, {1, 2}, {2, 3}},
                                {{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {3, 0}}},
                                {0, 3});
  CHECK_THROWS_AS(stage2(line, test_options(2)), PreconditionError);
  CHECK_THROWS_AS(stage3(line, test_options(2)), PreconditionError);
  CHECK_THROWS_AS(stage1(line, test_options(1)), InvalidArgument);
}

TEST_CASE("stages: already clean graphs are left alone") {
  const Blowup b = build_blowup({3, 3, false, TumorShape::Path});
  const TumorGraph tg = make_tumor(b.graph, b.embedding, b.B);
  for (auto* stage : {&stage1, &stage2, &stage3}) {
    const StageResult r = (*stage)(tg, test_options(3));
    CHECK(r.graph.graph() == tg.graph());
    CHECK(r.graph.B() == tg.B());
    CHECK(r.audit.good_before == 108);
    CHECK(r.audit.good_after == 108);
    CHECK(r.audit.good_through_removed == 0);
  }
}

TEST_CASE("stages: an all-B graph is left alone, an all-S graph is emptied") {
  const EmbeddedGraph eg = generate_planar(10, 4, 0.2);
  const auto ids = eg.graph.vertices();
  const TumorGraph all_b = make_tumor(eg, VertexSet(ids.begin(), ids.end()));
  for (auto* stage : {&stage1, &stage2, &stage3}) {
    const StageResult r = (*stage)(all_b, test_options(2));
    CHECK(r.graph.graph() == all_b.graph());
    CHECK(r.audit.removed_edges.empty());
    CHECK(r.audit.rewrites.empty());
  }
  const StageResult r = stage1(make_tumor(eg, {}), test_options(2));
  CHECK(r.graph.graph().num_vertices() == 0);
  CHECK(r.audit.removed_vertices.size() == 10);
  CHECK(r.audit.good_before == 0);
  CHECK(is_benign(stage3(stage2(r.graph, test_options(2)).graph, test_options(2)).graph));
}

TEST_CASE("stages: corpus chain keeps planarity and exact accounting") {
  for (const auto& inst : corpus::generate(80, 123)) {
    const StageOptions opts = test_options(inst.m);
    const TumorGraph tg = inst.tumor();
    const StageResult r1 = stage1(tg, opts);
    const StageResult r2 = stage2(r1.graph, opts);
    const StageResult r3 = stage3(r2.graph, opts);
    for (const StageResult* r : {&r1, &r2, &r3}) {
      CHECK(validate_embedding(r->graph.graph(), r->graph.embedding()).planar);
      CHECK(r->audit.accounting_holds());
      std::uint64_t batch_loss = 0;
      for (const DeletionBatch& b : r->audit.batches) {
        CHECK(b.good_after == b.good_before - b.good_through_removed);
        batch_loss += b.good_through_removed;
      }
      CHECK(batch_loss + r->audit.lost_to_promotion == r->audit.good_through_removed);
      for (const RewriteRecord& w : r->audit.rewrites) {
        CHECK(*w.good_after >= *w.good_before);
      }
      CHECK(oracle::good_cycles(r->graph.graph(), r->graph.B(), inst.m).good ==
            r->audit.good_after);
    }
    CHECK(r2.audit.good_before == r1.audit.good_after);
    CHECK(r3.audit.good_before == r2.audit.good_after);
    CHECK(is_stage_one(r1.graph));
    CHECK(is_stage_two(r2.graph));
    CHECK(is_benign(r3.graph));
    CHECK(r3.graph.B().size() <= 3 * tg.B().size());
  }
}

TEST_CASE("stages: fast mode agrees with test mode") {
  for (const auto& inst : corpus::generate(20, 8)) {
    StageOptions fast = test_options(inst.m);
    fast.mode = VerifyMode::Fast;
    const TumorGraph tg = inst.tumor();
    const StageResult a = stage3(stage2(stage1(tg, fast).graph, fast).graph, fast);
    const StageResult b = stage3(
        stage2(stage1(tg, test_options(inst.m)).graph, test_options(inst.m)).graph,
        test_options(inst.m));
    CHECK(a.graph.graph() == b.graph.graph());
    CHECK(a.audit.good_after == b.audit.good_after);
  }
}
