#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "oddcycle/constructions.hpp"
#include "oddcycle/error.hpp"
#include "oddcycle/planar.hpp"
#include "oddcycle/tumor.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace oddcycle;

namespace {

std::vector<Side> sides(const std::string& s) {
  std::vector<Side> out;
  for (char c : s) out.push_back(c == 'B' ? Side::B : Side::S);
  return out;
}

// Independent class membership by searching the doubled label string.
std::set<BadClass> classes_by_search(const std::string& labels) {
  const std::size_t k = labels.size();
  const std::string twice = labels + labels;
  auto windows = [&](const std::string& w) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < k; ++i) c += twice.compare(i, w.size(), w) == 0 ? 1 : 0;
    return c;
  };
  std::set<BadClass> out;
  if (windows("SSS") > 0) out.insert(BadClass::SSS);
  if (windows("SS") >= 2) out.insert(BadClass::TwoSS);
  if (windows("BBB") > 0) out.insert(BadClass::BBB);
  if (windows("BBSS") > 0 || windows("SSBB") > 0) out.insert(BadClass::BBSS);
  if (windows("BB") > 0 && windows("SS") > 0) out.insert(BadClass::OneBBOneSS);
  if (windows("BB") >= 2) out.insert(BadClass::TwoBB);
  return out;
}

TumorGraph cycle_tumor(const std::string& labels) {
  const std::size_t k = labels.size();
  Graph g = cycle_graph(k);
  std::map<VertexId, std::pair<double, double>> xy;
  VertexSet B;
  for (std::size_t i = 0; i < k; ++i) {
    const double a = 6.283185307179586 * i / k;
    xy[i] = {std::cos(a), std::sin(a)};
    if (labels[i] == 'B') B.insert(i);
  }
  return make_tumor(g, embedding_from_coordinates(g, xy), B);
}

}  // namespace

TEST_CASE("make_tumor: blowup of C_5 with its anchors") {
  const Blowup b = build_blowup({5, 5, false, TumorShape::Path});
  const TumorGraph tg = make_tumor(b.graph, b.embedding, b.B);
  CHECK(tg.graph().num_vertices() == 30);
  for (VertexId s : tg.S()) CHECK(tg.cluster(s).kind == ClusterKind::Pair);
  CHECK(tg.tumors().size() == 5);
}

TEST_CASE("make_tumor: K_4 with three B vertices fails") {
  const Graph g = complete_graph(4);
  const Embedding emb = embedding_from_coordinates(
      g, {{0, {0.0, 0.0}}, {1, {0.0, 2.0}}, {2, {-2.0, -1.0}}, {3, {2.0, -1.0}}});
  try {
    make_tumor(g, emb, {1, 2, 3});
    FAIL("expected NotATumorGraph");
  } catch (const NotATumorGraph& e) {
    CHECK(std::string(e.what()).find('0') != std::string::npos);
  }
  CHECK_THROWS_AS(make_tumor(g, emb, {7}), InvalidArgument);
}

TEST_CASE("make_tumor: star with the centre in B") {
  const Graph g = star_graph(5);
  std::map<VertexId, std::pair<double, double>> xy{{0, {0.0, 0.0}}};
  for (int i = 1; i <= 5; ++i) xy[i] = {std::cos(i), std::sin(i)};
  const TumorGraph tg = make_tumor(g, embedding_from_coordinates(g, xy), {0});
  CHECK(tg.single_cluster(0).size() == 5);
  for (VertexId s : tg.S()) CHECK(tg.cluster(s).kind == ClusterKind::Single);
}

TEST_CASE("count_good_cycles: C_3 blowup with t = 3 has 108 good C_7") {
  const Blowup b = build_blowup({3, 3, false, TumorShape::Path});
  const TumorGraph tg = make_tumor(b.graph, b.embedding, b.B);
  CHECK(count_good_cycles(tg, 3) == 108);
  CHECK(oracle::good_cycles(b.graph, b.B, 3).good == 108);
  // Six ordered anchor triples, t * t choices, two edges in the third tumor.
  CHECK(6 * 3 * 3 * 2 == 108);
}

TEST_CASE("count_good_cycles: every good C_11 in the C_5 blowup is of SS form") {
  const Blowup b = build_blowup({5, 5, false, TumorShape::Path});
  const TumorGraph tg = make_tumor(b.graph, b.embedding, b.B);
  const GoodCycleSplit split = count_good_cycles_split(tg, 5);
  CHECK(split.good > 0);
  CHECK(split.with_bb == 0);
  CHECK(split.with_ss == split.good);
}

TEST_CASE("count_good_cycles: no S vertices means no good cycles") {
  const EmbeddedGraph eg = generate_planar(9, 2, 0.0);
  const auto ids = eg.graph.vertices();
  const VertexSet all(ids.begin(), ids.end());
  const TumorGraph tg = make_tumor(eg, all);
  CHECK(count_good_cycles(tg, 2) == 0);
  CHECK(count_good_cycles(tg, 3) == 0);
}

TEST_CASE("classify_bad_cycles: single 5-cycles") {
  {
    const TumorGraph tg = cycle_tumor("BBSSS");
    const BadCycleCensus c = classify_bad_cycles(tg, 2);
    CHECK(c.good == 0);
    CHECK(c.total == 1);
    CHECK(c.per_class.at(BadClass::SSS) == 1);
    CHECK(c.per_class.at(BadClass::BBSS) == 1);
    CHECK(c.per_class.at(BadClass::OneBBOneSS) == 1);
    CHECK(c.per_class.at(BadClass::TwoSS) == 1);
    CHECK(c.per_class.at(BadClass::BBB) == 0);
    CHECK(c.per_class.at(BadClass::TwoBB) == 0);
  }
  {
    const TumorGraph tg = cycle_tumor("BSBSS");
    const BadCycleCensus c = classify_bad_cycles(tg, 2);
    CHECK(c.good == 1);
    CHECK(c.bad == 0);
    for (BadClass k : kBadClasses) CHECK(c.per_class.at(k) == 0);
  }
}

TEST_CASE("bad_classes_of agrees with a string search on every label word") {
  for (int len : {5, 7, 9}) {
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::string s;
      for (int i = 0; i < len; ++i) s += (mask >> i) & 1 ? 'B' : 'S';
      const auto labels = sides(s);
      const auto got = bad_classes_of(labels);
      CHECK(std::set<BadClass>(got.begin(), got.end()) == classes_by_search(s));
      CHECK(is_good_pattern(labels) == classes_by_search(s).empty());
    }
  }
}

TEST_CASE("census completeness and good counts against the oracle") {
  const auto instances = corpus::generate(60, 77);
  for (const auto& inst : instances) {
    const TumorGraph tg = inst.tumor();
    const BadCycleCensus c = classify_bad_cycles(tg, inst.m);
    const auto expect = oracle::good_cycles(inst.eg.graph, inst.B, inst.m);
    CHECK(c.total == expect.total);
    CHECK(c.good == expect.good);
    CHECK(c.good + c.bad == c.total);
    const GoodCycleSplit split = count_good_cycles_split(tg, inst.m);
    CHECK(split.with_ss == expect.with_ss);
    CHECK(split.with_bb == expect.with_bb);
  }
}

TEST_CASE("count_good_through counts good cycles meeting the given items") {
  const auto instances = corpus::generate(40, 5);
  for (const auto& inst : instances) {
    const TumorGraph tg = inst.tumor();
    const auto edges = tg.graph().edges();
    if (edges.empty()) continue;
    const std::vector<Edge> chosen{edges.front(), edges.back()};
    const GoodThrough gt = count_good_through(tg, inst.m, chosen, {});
    EmbeddedGraph eg = tg.embedded();
    delete_edges(eg, chosen);
    const TumorGraph after = make_tumor(eg, tg.B());
    CHECK(gt.good == count_good_cycles(tg, inst.m));
    CHECK(gt.good - gt.through == count_good_cycles(after, inst.m));
  }
}

TEST_CASE("tumor facts hold on planar tumor graphs") {
  for (const auto& inst : corpus::generate(100, 9)) {
    CHECK(tumor_facts(inst.tumor()).holds());
  }
}

TEST_CASE("separate: path-shaped auxiliary graph needs one split") {
  // x=0, y=1, z=2, a=3 in S_xy, b=4 in S_xz.
  Graph g(5);
  g.add_edge(0, 3);
  g.add_edge(3, 1);
  g.add_edge(0, 4);
  g.add_edge(4, 2);
  const Embedding emb = embedding_from_coordinates(
      g, {{0, {0, 0}}, {1, {-2, 2}}, {2, {2, 2}}, {3, {-1, 1}}, {4, {1, 1}}});
  const TumorGraph tg = make_tumor(g, emb, {0, 1, 2});
  CHECK_FALSE(is_separated(tg));
  const Separation sep = separate(tg);
  CHECK(is_separated(sep.graph));
  CHECK(sep.graph.B().size() == 4);
  CHECK(sep.splits.size() == 1);
  CHECK(sep.splits.front().first == 0);
  CHECK(sep.lifting.at(0).size() == 2);
}

TEST_CASE("separate: separated input is returned unchanged") {
  const Blowup b = build_blowup({2, 3, false, TumorShape::Path});
  const TumorGraph tg = make_tumor(b.graph, b.embedding, b.B);
  REQUIRE(is_separated(tg));
  const Separation sep = separate(tg);
  CHECK(sep.graph.graph() == tg.graph());
  CHECK(sep.graph.embedding() == tg.embedding());
  CHECK(sep.splits.empty());
}

TEST_CASE("separate: one B vertex carrying three tumors and scattered S_x vertices") {
  // x=0, y=1, za=2, zb=3; S_xy = s0..s4 (10..14), S_x vertices t1,t2,t4
  // (20..22), S_{x,za} = a0..a2 (30..32), S_{x,zb} = b0..b3 (40..43) and
  // further S_x vertices c1, d0, d1, e0, e1, f0, f1, f2 (50..57).
  const double r = 2.0;
  const double deg = 3.141592653589793 / 180.0;
  std::map<VertexId, std::pair<double, double>> xy;
  xy[0] = {0, 0};
  xy[1] = {0, 2.5 * r};
  const double s_th[] = {40, 85, 115, 130, 140};
  for (int i = 0; i < 5; ++i) xy[10 + i] = {r * std::tan((90 - s_th[i]) * deg), 1.25 * r};
  const double t_th[] = {50, 68, 100};
  for (int i = 0; i < 3; ++i) {
    xy[20 + i] = {0.65 * r * std::tan((90 - t_th[i]) * deg), 0.65 * 1.25 * r};
  }
  auto ray = [&](double scale, double th, double axis) {
    return std::pair{scale * r * std::cos(th * deg) / std::cos((axis - th) * deg),
                     scale * r * std::sin(th * deg) / std::cos((axis - th) * deg)};
  };
  xy[2] = {2 * r * std::cos(320 * deg), 2 * r * std::sin(320 * deg)};
  const double a_th[] = {290, 330, 350};
  for (int i = 0; i < 3; ++i) xy[30 + i] = ray(1.0, a_th[i], 320);
  xy[3] = {2 * r * std::cos(220 * deg), 2 * r * std::sin(220 * deg)};
  const double b_th[] = {190, 210, 230, 250};
  for (int i = 0; i < 4; ++i) xy[40 + i] = ray(1.0, b_th[i], 220);
  xy[50] = ray(0.75, 310, 320);
  xy[51] = ray(0.75, 200, 220);
  xy[52] = ray(0.75, 240, 220);
  xy[53] = ray(0.9, 5, 15);
  xy[54] = ray(0.9, 25, 15);
  xy[55] = ray(0.9, 150, 165);
  xy[56] = ray(0.9, 165, 165);
  xy[57] = ray(0.9, 180, 165);

  std::vector<VertexId> ids;
  for (const auto& [v, p] : xy) ids.push_back(v);
  Graph g = Graph::from_edges(ids, {});
  for (int i = 0; i < 5; ++i) {
    g.add_edge(0, 10 + i);
    g.add_edge(1, 10 + i);
    if (i + 1 < 5) g.add_edge(10 + i, 11 + i);
  }
  for (int i = 0; i < 3; ++i) g.add_edge(0, 20 + i);
  for (int i = 0; i < 3; ++i) {
    g.add_edge(0, 30 + i);
    g.add_edge(2, 30 + i);
    if (i + 1 < 3) g.add_edge(30 + i, 31 + i);
  }
  for (int i = 0; i < 4; ++i) {
    g.add_edge(0, 40 + i);
    g.add_edge(3, 40 + i);
    if (i + 1 < 4) g.add_edge(40 + i, 41 + i);
  }
  for (int v = 50; v <= 57; ++v) g.add_edge(0, v);
  const Embedding emb = embedding_from_coordinates(g, xy);
  REQUIRE(validate_embedding(g, emb).planar);
  const TumorGraph tg = make_tumor(g, emb, {0, 1, 2, 3});

  const Separation sep = separate(tg);
  REQUIRE_FALSE(sep.splits.empty());
  const auto [x, x_prime] = sep.splits.front();
  CHECK(x == 0);
  CHECK(x_prime == 58);
  // The first split moves S_xy together with the S_x vertices lying between
  // its members; the rest stays at x.
  std::set<VertexId> expected{10, 11, 12, 13, 14, 20, 21, 22};
  const Graph& out = sep.graph.graph();
  CHECK(std::set<VertexId>(out.neighbors(58).begin(), out.neighbors(58).end()) ==
        expected);
  CHECK(sep.graph.tumor(1, 58).size() == 5);
  CHECK(is_separated(sep.graph));
  CHECK(sep.graph.B().size() == 6);
}

TEST_CASE("separate: corpus contract") {
  for (const auto& inst : corpus::generate(150, 31)) {
    const TumorGraph tg = inst.tumor();
    const Graph t = auxiliary_graph(tg);
    std::size_t isolated = 0;
    for (VertexId b : t.vertices()) isolated += t.degree(b) == 0 ? 1 : 0;
    const Separation sep = separate(tg);
    const TumorGraph& out = sep.graph;
    CHECK(is_separated(out));
    CHECK(validate_embedding(out.graph(), out.embedding()).planar);
    if (sep.splits.empty()) continue;
    CHECK(out.B().size() == 2 * t.num_edges() + isolated);
    CHECK(out.B().size() <= 6 * tg.B().size());
    CHECK(out.S() == tg.S());
    CHECK(out.graph().induced(out.S()) == tg.graph().induced(tg.S()));
    for (VertexId s : tg.S()) {
      const Cluster before = tg.cluster(s);
      const Cluster after = out.cluster(s);
      CHECK(before.kind == after.kind);
      if (before.kind == ClusterKind::Single) {
        CHECK(sep.lifting.at(before.x).contains(after.x));
      } else if (before.kind == ClusterKind::Pair) {
        const auto& lx = sep.lifting.at(before.x);
        const auto& ly = sep.lifting.at(before.y);
        CHECK(((lx.contains(after.x) && ly.contains(after.y)) ||
               (lx.contains(after.y) && ly.contains(after.x))));
      }
    }
  }
}
