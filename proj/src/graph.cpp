#include "oddcycle/graph.hpp"

#include <algorithm>
#include <string>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

const std::vector<VertexId>& lookup(
    const std::map<VertexId, std::vector<VertexId>>& adjacency, VertexId v) {
  auto it = adjacency.find(v);
  if (it == adjacency.end()) {
    throw InvalidArgument("unknown vertex " + std::to_string(v));
  }
  return it->second;
}

}  // namespace

Graph::Graph(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    adjacency_.emplace_hint(adjacency_.end(), static_cast<VertexId>(i),
                            std::vector<VertexId>{});
  }
}

Graph Graph::from_edges(std::span<const VertexId> vertices,
                        std::span<const Edge> edges) {
  Graph g;
  for (VertexId v : vertices) {
    if (!g.add_vertex(v)) {
      throw InvalidArgument("duplicate vertex id " + std::to_string(v));
    }
  }
  for (const Edge& e : edges) {
    if (!g.add_edge(e.u, e.v)) {
      throw InvalidArgument("parallel edge " + std::to_string(e.u) + "-" +
                            std::to_string(e.v));
    }
  }
  return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (!g.add_edge(e.u, e.v)) {
      throw InvalidArgument("parallel edge " + std::to_string(e.u) + "-" +
                            std::to_string(e.v));
    }
  }
  return g;
}

bool Graph::add_vertex(VertexId v) {
  return adjacency_.try_emplace(v).second;
}

bool Graph::add_edge(VertexId a, VertexId b) {
  if (a == b) {
    throw InvalidArgument("loop at vertex " + std::to_string(a));
  }
  auto ia = adjacency_.find(a);
  auto ib = adjacency_.find(b);
  if (ia == adjacency_.end() || ib == adjacency_.end()) {
    throw InvalidArgument("edge " + std::to_string(a) + "-" +
                          std::to_string(b) + " has an unknown endpoint");
  }
  auto& na = ia->second;
  auto pos = std::lower_bound(na.begin(), na.end(), b);
  if (pos != na.end() && *pos == b) return false;
  na.insert(pos, b);
  auto& nb = ib->second;
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(VertexId a, VertexId b) {
  auto ia = adjacency_.find(a);
  auto ib = adjacency_.find(b);
  if (ia == adjacency_.end() || ib == adjacency_.end()) return false;
  auto& na = ia->second;
  auto pos = std::lower_bound(na.begin(), na.end(), b);
  if (pos == na.end() || *pos != b) return false;
  na.erase(pos);
  auto& nb = ib->second;
  nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
  --edge_count_;
  return true;
}

void Graph::remove_vertex(VertexId v) {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) return;
  for (VertexId w : it->second) {
    auto& nw = adjacency_.at(w);
    nw.erase(std::lower_bound(nw.begin(), nw.end(), v));
  }
  edge_count_ -= it->second.size();
  adjacency_.erase(it);
}

bool Graph::has_edge(VertexId a, VertexId b) const {
  auto it = adjacency_.find(a);
  if (it == adjacency_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), b);
}

const std::vector<VertexId>& Graph::neighbors(VertexId v) const {
  return lookup(adjacency_, v);
}

std::vector<VertexId> Graph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(adjacency_.size());
  for (const auto& [v, _] : adjacency_) out.push_back(v);
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (const auto& [v, nbrs] : adjacency_) {
    for (VertexId w : nbrs) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  return out;
}

VertexId Graph::max_vertex_id() const {
  return adjacency_.empty() ? -1 : adjacency_.rbegin()->first;
}

bool Graph::has_contiguous_ids() const {
  return adjacency_.empty() ||
         (adjacency_.begin()->first == 0 &&
          adjacency_.rbegin()->first ==
              static_cast<VertexId>(adjacency_.size()) - 1);
}

Graph Graph::induced(const VertexSet& keep) const {
  Graph out;
  for (VertexId v : keep) {
    if (has_vertex(v)) out.add_vertex(v);
  }
  for (const Edge& e : edges()) {
    if (keep.contains(e.u) && keep.contains(e.v)) out.add_edge(e.u, e.v);
  }
  return out;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
  }
  return g;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidArgument("a cycle needs at least 3 vertices");
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
  }
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
  }
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) {
    g.add_edge(0, static_cast<VertexId>(i));
  }
  return g;
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(a + j));
    }
  }
  return g;
}

std::vector<std::vector<VertexId>> connected_components(const Graph& g) {
  std::vector<std::vector<VertexId>> out;
  std::set<VertexId> seen;
  for (VertexId start : g.vertices()) {
    if (seen.contains(start)) continue;
    std::vector<VertexId> comp;
    std::vector<VertexId> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (VertexId w : g.neighbors(v)) {
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace oddcycle
