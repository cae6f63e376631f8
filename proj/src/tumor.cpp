#include "oddcycle/tumor.hpp"

#include <algorithm>
#include <set>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

VertexPair ordered(VertexId a, VertexId b) {
  return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

std::vector<Side> labels_of(const TumorGraph& tg,
                            std::span<const VertexId> cycle) {
  std::vector<Side> out;
  out.reserve(cycle.size());
  for (VertexId v : cycle) out.push_back(tg.in_B(v) ? Side::B : Side::S);
  return out;
}

std::size_t monochromatic_pairs(std::span<const Side> labels, Side side) {
  const std::size_t n = labels.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == side && labels[(i + 1) % n] == side) ++count;
  }
  return count;
}

bool contains_window(std::span<const Side> labels,
                     std::span<const Side> window) {
  const std::size_t n = labels.size();
  if (window.size() > n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < window.size() && match; ++j) {
      match = labels[(i + j) % n] == window[j];
    }
    if (match) return true;
  }
  return false;
}

}  // namespace

const Cluster& TumorGraph::cluster(VertexId s) const {
  auto it = cluster_.find(s);
  if (it == cluster_.end()) {
    throw InvalidArgument("vertex " + std::to_string(s) + " is not in S");
  }
  return it->second;
}

std::vector<VertexId> TumorGraph::empty_cluster() const {
  std::vector<VertexId> out;
  for (const auto& [s, c] : cluster_) {
    if (c.kind == ClusterKind::Empty) out.push_back(s);
  }
  return out;
}

std::vector<VertexId> TumorGraph::single_cluster(VertexId x) const {
  std::vector<VertexId> out;
  for (const auto& [s, c] : cluster_) {
    if (c.kind == ClusterKind::Single && c.x == x) out.push_back(s);
  }
  return out;
}

std::vector<VertexId> TumorGraph::tumor(VertexId x, VertexId y) const {
  const auto key = ordered(x, y);
  std::vector<VertexId> out;
  for (const auto& [s, c] : cluster_) {
    if (c.kind == ClusterKind::Pair && c.x == key.first && c.y == key.second) {
      out.push_back(s);
    }
  }
  return out;
}

std::map<VertexPair, std::vector<VertexId>> TumorGraph::tumors() const {
  std::map<VertexPair, std::vector<VertexId>> out;
  for (const auto& [s, c] : cluster_) {
    if (c.kind == ClusterKind::Pair) out[{c.x, c.y}].push_back(s);
  }
  return out;
}

std::map<VertexId, std::vector<VertexId>> TumorGraph::single_clusters() const {
  std::map<VertexId, std::vector<VertexId>> out;
  for (const auto& [s, c] : cluster_) {
    if (c.kind == ClusterKind::Single) out[c.x].push_back(s);
  }
  return out;
}

std::vector<VertexId> TumorGraph::single_vertices() const {
  std::vector<VertexId> out;
  for (const auto& [s, c] : cluster_) {
    if (c.kind == ClusterKind::Single) out.push_back(s);
  }
  return out;
}

std::vector<VertexId> TumorGraph::tumor_vertices() const {
  std::vector<VertexId> out;
  for (const auto& [s, c] : cluster_) {
    if (c.kind == ClusterKind::Pair) out.push_back(s);
  }
  return out;
}

bool TumorGraph::is_tumor_vertex(VertexId v) const {
  auto it = cluster_.find(v);
  return it != cluster_.end() && it->second.kind == ClusterKind::Pair;
}

bool TumorGraph::is_single_vertex(VertexId v) const {
  auto it = cluster_.find(v);
  return it != cluster_.end() && it->second.kind == ClusterKind::Single;
}

std::vector<VertexId> TumorGraph::b_neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId w : graph_.neighbors(v)) {
    if (B_.contains(w)) out.push_back(w);
  }
  return out;
}

TumorGraph make_tumor(Graph g, Embedding emb, VertexSet B) {
  require_matching_embedding(g, emb);
  for (VertexId b : B) {
    if (!g.has_vertex(b)) {
      throw InvalidArgument("B names unknown vertex " + std::to_string(b));
    }
  }
  TumorGraph tg;
  for (VertexId v : g.vertices()) {
    if (B.contains(v)) continue;
    tg.S_.insert(v);
    std::vector<VertexId> nb;
    for (VertexId w : g.neighbors(v)) {
      if (B.contains(w)) nb.push_back(w);
    }
    Cluster c;
    if (nb.size() == 1) {
      c = {ClusterKind::Single, nb[0], -1};
    } else if (nb.size() == 2) {
      c = {ClusterKind::Pair, nb[0], nb[1]};
    } else if (nb.size() > 2) {
      throw NotATumorGraph("vertex " + std::to_string(v) + " has " +
                           std::to_string(nb.size()) + " neighbours in B");
    }
    tg.cluster_[v] = c;
  }
  tg.graph_ = std::move(g);
  tg.embedding_ = std::move(emb);
  tg.B_ = std::move(B);
  return tg;
}

TumorFacts tumor_facts(const TumorGraph& tg) {
  TumorFacts facts;
  const auto tumors = tg.tumors();
  for (const auto& [key, members] : tumors) {
    const std::set<VertexId> inside(members.begin(), members.end());
    std::map<VertexId, std::size_t> hits;
    std::size_t internal = 0;
    for (VertexId s : members) {
      for (VertexId z : tg.graph().neighbors(s)) {
        if (inside.contains(z)) {
          if (s < z) ++internal;
        } else if (z != key.first && z != key.second) {
          ++hits[z];
        }
      }
    }
    for (const auto& [_, count] : hits) {
      facts.max_tumor_neighbors = std::max(facts.max_tumor_neighbors, count);
    }
    facts.max_tumor_excess =
        std::max(facts.max_tumor_excess, static_cast<long long>(internal) -
                                             static_cast<long long>(members.size()));
  }
  std::map<std::pair<VertexPair, VertexPair>, std::size_t> between;
  for (const Edge& e : tg.graph().edges()) {
    if (!tg.is_tumor_vertex(e.u) || !tg.is_tumor_vertex(e.v)) continue;
    const Cluster& a = tg.cluster(e.u);
    const Cluster& b = tg.cluster(e.v);
    if (a == b) continue;
    VertexPair ka{a.x, a.y};
    VertexPair kb{b.x, b.y};
    if (kb < ka) std::swap(ka, kb);
    facts.max_edges_between_tumors =
        std::max(facts.max_edges_between_tumors, ++between[{ka, kb}]);
  }
  return facts;
}

bool is_good_pattern(std::span<const Side> labels) {
  return monochromatic_pairs(labels, Side::B) +
             monochromatic_pairs(labels, Side::S) ==
         1;
}

std::string bad_class_name(BadClass c) {
  switch (c) {
    case BadClass::SSS:
      return "T_SSS";
    case BadClass::TwoSS:
      return "T_2SS";
    case BadClass::BBB:
      return "T_BBB";
    case BadClass::BBSS:
      return "T_BBSS";
    case BadClass::OneBBOneSS:
      return "T_1BB1SS";
    case BadClass::TwoBB:
      return "T_2BB";
  }
  return "?";
}

std::vector<BadClass> bad_classes_of(std::span<const Side> labels) {
  constexpr std::array<Side, 3> sss{Side::S, Side::S, Side::S};
  constexpr std::array<Side, 3> bbb{Side::B, Side::B, Side::B};
  constexpr std::array<Side, 4> bbss{Side::B, Side::B, Side::S, Side::S};
  constexpr std::array<Side, 4> ssbb{Side::S, Side::S, Side::B, Side::B};
  const std::size_t ss = monochromatic_pairs(labels, Side::S);
  const std::size_t bb = monochromatic_pairs(labels, Side::B);
  std::vector<BadClass> out;
  if (contains_window(labels, sss)) out.push_back(BadClass::SSS);
  if (ss >= 2) out.push_back(BadClass::TwoSS);
  if (contains_window(labels, bbb)) out.push_back(BadClass::BBB);
  if (contains_window(labels, bbss) || contains_window(labels, ssbb)) {
    out.push_back(BadClass::BBSS);
  }
  if (bb >= 1 && ss >= 1) out.push_back(BadClass::OneBBOneSS);
  if (bb >= 2) out.push_back(BadClass::TwoBB);
  return out;
}

namespace {

void require_cycle_length(int m) {
  if (m < 2) throw InvalidArgument("m must be at least 2");
}

}  // namespace

std::uint64_t count_good_cycles(const TumorGraph& tg, int m,
                                const CountOptions& options) {
  return count_good_cycles_split(tg, m, options).good;
}

GoodCycleSplit count_good_cycles_split(const TumorGraph& tg, int m,
                                       const CountOptions& options) {
  require_cycle_length(m);
  GoodCycleSplit split;
  std::vector<Side> labels;
  split.total_cycles = for_each_copy(
      tg.graph(), Pattern::cycle(2 * m + 1),
      [&](std::span<const VertexId> cycle) {
        labels = labels_of(tg, cycle);
        if (!is_good_pattern(labels)) return;
        ++split.good;
        if (monochromatic_pairs(labels, Side::S) == 1) {
          ++split.with_ss;
        } else {
          ++split.with_bb;
        }
      },
      options);
  return split;
}

BadCycleCensus classify_bad_cycles(const TumorGraph& tg, int m,
                                   const CountOptions& options) {
  require_cycle_length(m);
  BadCycleCensus census;
  for (BadClass c : kBadClasses) census.per_class[c] = 0;
  std::vector<Side> labels;
  census.total = for_each_copy(
      tg.graph(), Pattern::cycle(2 * m + 1),
      [&](std::span<const VertexId> cycle) {
        labels = labels_of(tg, cycle);
        const bool good = is_good_pattern(labels);
        const auto classes = bad_classes_of(labels);
        if (good && !classes.empty()) {
          throw InvariantViolation("a good cycle falls into a bad class");
        }
        if (!good && classes.empty()) {
          throw InvariantViolation("a bad cycle falls into no bad class");
        }
        if (good) ++census.good;
        if (!classes.empty()) ++census.bad;
        for (BadClass c : classes) ++census.per_class[c];
      },
      options);
  return census;
}

GoodThrough count_good_through(const TumorGraph& tg, int m,
                               std::span<const Edge> edges,
                               std::span<const VertexId> vertices,
                               const CountOptions& options) {
  require_cycle_length(m);
  const std::set<Edge> edge_set(edges.begin(), edges.end());
  const std::set<VertexId> vertex_set(vertices.begin(), vertices.end());
  GoodThrough result;
  std::vector<Side> labels;
  for_each_copy(
      tg.graph(), Pattern::cycle(2 * m + 1),
      [&](std::span<const VertexId> cycle) {
        labels = labels_of(tg, cycle);
        if (!is_good_pattern(labels)) return;
        ++result.good;
        const std::size_t n = cycle.size();
        for (std::size_t i = 0; i < n; ++i) {
          if (vertex_set.contains(cycle[i]) ||
              edge_set.contains(Edge(cycle[i], cycle[(i + 1) % n]))) {
            ++result.through;
            return;
          }
        }
      },
      options);
  return result;
}

Graph auxiliary_graph(const TumorGraph& tg) {
  Graph t;
  for (VertexId b : tg.B()) t.add_vertex(b);
  for (const auto& [key, _] : tg.tumors()) t.add_edge(key.first, key.second);
  return t;
}

bool is_separated(const TumorGraph& tg) {
  const Graph t = auxiliary_graph(tg);
  for (VertexId b : t.vertices()) {
    if (t.degree(b) > 1) return false;
  }
  return true;
}

Separation separate(const TumorGraph& tg) {
  if (!validate_embedding(tg.graph(), tg.embedding()).planar) {
    throw MalformedEmbedding("separate needs a planar embedding");
  }
  Separation result;
  for (VertexId b : tg.B()) result.lifting[b] = {b};
  if (is_separated(tg)) {
    result.graph = tg;
    return result;
  }

  EmbeddedGraph eg = tg.embedded();
  for (const Edge& e : tg.graph().edges()) {
    if (tg.in_B(e.u) && tg.in_B(e.v)) result.removed_b_edges.push_back(e);
  }
  delete_edges(eg, result.removed_b_edges);

  VertexSet B = tg.B();
  std::map<VertexId, VertexId> root;
  for (VertexId b : B) root[b] = b;
  TumorGraph current = make_tumor(eg, B);

  while (true) {
    const Graph t = auxiliary_graph(current);
    std::size_t delta = 0;
    VertexId x = -1;
    for (VertexId b : t.vertices()) {
      if (t.degree(b) > delta) {
        delta = t.degree(b);
        x = b;
      }
    }
    if (delta <= 1) break;

    const auto& rotation = current.embedding().rotation(x);
    std::vector<std::size_t> t_positions;
    for (std::size_t i = 0; i < rotation.size(); ++i) {
      if (current.is_tumor_vertex(rotation[i])) t_positions.push_back(i);
    }
    const std::size_t ell = t_positions.size();

    std::vector<VertexId> moved;
    for (VertexId y : t.neighbors(x)) {
      const auto key = ordered(x, y);
      std::vector<bool> member(ell, false);
      for (std::size_t j = 0; j < ell; ++j) {
        const Cluster& c = current.cluster(rotation[t_positions[j]]);
        member[j] = c.x == key.first && c.y == key.second;
      }
      std::size_t starts = 0;
      std::size_t first = 0;
      for (std::size_t j = 0; j < ell; ++j) {
        if (member[j] && !member[(j + ell - 1) % ell]) {
          ++starts;
          first = j;
        }
      }
      if (starts != 1) continue;
      std::size_t last = first;
      while (member[(last + 1) % ell]) last = (last + 1) % ell;
      const std::size_t p0 = t_positions[first];
      const std::size_t p1 = t_positions[last];
      for (std::size_t p = p0;; p = (p + 1) % rotation.size()) {
        moved.push_back(rotation[p]);
        if (p == p1) break;
      }
      break;
    }
    if (moved.empty()) {
      throw InvariantViolation("no tumor at vertex " + std::to_string(x) +
                               " forms a cyclic interval of its rotation");
    }

    const VertexId fresh = current.graph().max_vertex_id() + 1;
    eg = split_vertex(current.graph(), current.embedding(), x, moved, fresh);
    if (!validate_embedding(eg.graph, eg.embedding).planar) {
      throw InvariantViolation("vertex split broke planarity");
    }
    B.insert(fresh);
    root[fresh] = root[x];
    result.lifting[root[x]].insert(fresh);
    result.splits.emplace_back(x, fresh);
    current = make_tumor(eg, B);
  }
  result.graph = std::move(current);
  return result;
}

}  // namespace oddcycle
