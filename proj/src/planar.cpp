#include "oddcycle/planar.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <tuple>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

InequalityCheck record(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, lhs <= rhs};
}

std::size_t neighbors_in(const Graph& g, VertexId v, const VertexSet& set) {
  std::size_t count = 0;
  for (VertexId w : g.neighbors(v)) {
    if (set.contains(w)) ++count;
  }
  return count;
}

}  // namespace

bool PlanarReport::all_ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InequalityCheck& c) { return c.holds; });
}

PlanarReport planar_sanity(const Graph& g, const PlanarQuery& query) {
  PlanarReport report;
  const double n = static_cast<double>(g.num_vertices());

  report.checks.push_back(
      record("e <= 3v", static_cast<double>(g.num_edges()), 3 * n));
  report.edge_count_ok = report.checks.back().holds;

  std::size_t max_degree = 0;
  for (VertexId v : g.vertices()) max_degree = std::max(max_degree, g.degree(v));
  report.high_degree_ok = true;
  for (std::size_t d = 1; d <= max_degree; ++d) {
    std::size_t count = 0;
    for (VertexId v : g.vertices()) {
      if (g.degree(v) >= d) ++count;
    }
    report.high_degree_counts[d] = count;
    auto check = record("#{deg >= " + std::to_string(d) + "} <= 6n/d",
                        static_cast<double>(count),
                        6 * n / static_cast<double>(d));
    report.high_degree_ok = report.high_degree_ok && check.holds;
    report.checks.push_back(std::move(check));
  }

  if (query.k && !query.bipartition) {
    throw InvalidArgument("the A_k count needs a bipartition");
  }
  if (query.bipartition) {
    const auto& [A, B] = *query.bipartition;
    for (VertexId v : A) {
      if (B.contains(v)) throw InvalidArgument("bipartition classes overlap");
    }
    if (A.size() + B.size() != g.num_vertices()) {
      throw InvalidArgument("bipartition does not cover the vertex set");
    }
    for (VertexId v : g.vertices()) {
      if (!A.contains(v) && !B.contains(v)) {
        throw InvalidArgument("bipartition names unknown vertices");
      }
    }
    std::size_t crossing = 0;
    for (VertexId a : A) crossing += neighbors_in(g, a, B);
    report.checks.push_back(
        record("e(G[A,B]) <= 2(|A|+|B|)", static_cast<double>(crossing),
               2.0 * static_cast<double>(A.size() + B.size())));
    report.bipartite_edge_ok = report.checks.back().holds;

    if (query.k) {
      const int k = *query.k;
      if (k < 3) throw InvalidArgument("k must be at least 3");
      std::size_t count = 0;
      for (VertexId a : A) {
        if (neighbors_in(g, a, B) >= static_cast<std::size_t>(k)) ++count;
      }
      report.bipartite_A_bound = count;
      report.checks.push_back(
          record("|A_" + std::to_string(k) + "| <= 2|B|/(k-2)",
                 static_cast<double>(count),
                 2.0 * static_cast<double>(B.size()) / (k - 2)));
      report.bipartite_A_ok = report.checks.back().holds;
    }
  }

  if (query.fork_query) {
    const auto& [A, B] = *query.fork_query;
    for (VertexId v : A) {
      if (B.contains(v)) throw InvalidArgument("fork query sets overlap");
      if (!g.has_vertex(v)) throw InvalidArgument("fork query names unknown vertices");
    }
    for (VertexId v : B) {
      if (!g.has_vertex(v)) throw InvalidArgument("fork query names unknown vertices");
    }
    std::size_t forks = 0;
    std::size_t d = 0;
    for (VertexId a : A) {
      const std::size_t k = neighbors_in(g, a, B);
      forks += k < 2 ? 0 : k * (k - 1) / 2;
      d = std::max(d, k);
    }
    report.fork_count = forks;
    report.checks.push_back(record(
        "forks <= |A| + 4d|B|", static_cast<double>(forks),
        static_cast<double>(A.size() + 4 * d * B.size())));
    report.fork_ok = report.checks.back().holds;
  }
  return report;
}

EmbeddedGraph generate_planar(std::size_t n, std::uint64_t seed,
                              double deletion_prob) {
  if (n < 3) throw InvalidArgument("generate_planar needs n >= 3");
  if (!(deletion_prob >= 0.0 && deletion_prob <= 1.0)) {
    throw InvalidArgument("deletion probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);

  std::map<VertexId, std::vector<VertexId>> rotation;
  rotation[0] = {1, 2};
  rotation[1] = {2, 0};
  rotation[2] = {0, 1};
  // A face (a, b, c) is traced as the darts a->b, b->c, c->a.
  std::vector<std::array<VertexId, 3>> faces{{0, 1, 2}, {0, 2, 1}};

  auto insert_before = [&](VertexId at, VertexId before, VertexId fresh) {
    auto& order = rotation[at];
    order.insert(std::find(order.begin(), order.end(), before), fresh);
  };

  for (std::size_t i = 3; i < n; ++i) {
    const VertexId v = static_cast<VertexId>(i);
    std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
    const std::size_t f = pick(rng);
    const auto [a, b, c] = faces[f];
    // succ_b(a) = c, succ_c(b) = a, succ_a(c) = b; v goes into each gap.
    insert_before(b, c, v);
    insert_before(c, a, v);
    insert_before(a, b, v);
    rotation[v] = {a, c, b};
    faces[f] = {a, b, v};
    faces.push_back({b, c, v});
    faces.push_back({c, a, v});
  }

  Embedding emb(std::move(rotation));
  Graph g = emb.underlying_graph();
  if (deletion_prob > 0.0) {
    std::bernoulli_distribution drop(deletion_prob);
    std::vector<Edge> doomed;
    for (const Edge& e : g.edges()) {
      const bool initial = e.u < 3 && e.v < 3;
      if (!initial && drop(rng)) doomed.push_back(e);
    }
    EmbeddedGraph eg{std::move(g), std::move(emb)};
    delete_edges(eg, doomed);
    return eg;
  }
  return {std::move(g), std::move(emb)};
}

Graph icosahedron_graph() {
  // 0 = top, 1..5 upper ring, 6..10 lower ring, 11 = bottom.
  Graph g(12);
  for (VertexId k = 0; k < 5; ++k) {
    const VertexId up = 1 + k;
    const VertexId up_next = 1 + (k + 1) % 5;
    const VertexId low = 6 + k;
    const VertexId low_next = 6 + (k + 1) % 5;
    g.add_edge(0, up);
    g.add_edge(up, up_next);
    g.add_edge(up, low);
    g.add_edge(up_next, low);
    g.add_edge(low, low_next);
    g.add_edge(11, low);
  }
  return g;
}

}  // namespace oddcycle
