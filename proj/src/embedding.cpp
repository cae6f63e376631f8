#include "oddcycle/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

std::string edge_name(VertexId a, VertexId b) {
  return std::to_string(a) + "-" + std::to_string(b);
}

// Rotation at v started right after `after` (which is dropped).
std::vector<VertexId> rotate_after(const std::vector<VertexId>& order,
                                   VertexId after) {
  auto it = std::find(order.begin(), order.end(), after);
  std::vector<VertexId> out;
  out.reserve(order.size() - 1);
  out.insert(out.end(), it + 1, order.end());
  out.insert(out.end(), order.begin(), it);
  return out;
}

}  // namespace

const std::vector<VertexId>& Embedding::rotation(VertexId v) const {
  auto it = rotation_.find(v);
  if (it == rotation_.end()) {
    throw MalformedEmbedding("no rotation for vertex " + std::to_string(v));
  }
  return it->second;
}

VertexId Embedding::successor(VertexId v, VertexId u) const {
  const auto& order = rotation(v);
  auto it = std::find(order.begin(), order.end(), u);
  if (it == order.end()) {
    throw MalformedEmbedding("vertex " + std::to_string(u) +
                             " missing from rotation at " + std::to_string(v));
  }
  ++it;
  return it == order.end() ? order.front() : *it;
}

Graph Embedding::underlying_graph() const {
  Graph g;
  for (const auto& [v, _] : rotation_) g.add_vertex(v);
  for (const auto& [v, order] : rotation_) {
    std::set<VertexId> seen;
    for (VertexId w : order) {
      if (!seen.insert(w).second) {
        throw MalformedEmbedding("repeated neighbour " + std::to_string(w) +
                                 " in rotation at " + std::to_string(v));
      }
      if (w == v || !rotation_.contains(w)) {
        throw MalformedEmbedding("bad rotation entry " + edge_name(v, w));
      }
      const auto& back = rotation_.at(w);
      if (std::find(back.begin(), back.end(), v) == back.end()) {
        throw MalformedEmbedding("rotation is not symmetric at " +
                                 edge_name(v, w));
      }
      if (v < w) g.add_edge(v, w);
    }
  }
  return g;
}

void Embedding::set_rotation(VertexId v, std::vector<VertexId> order) {
  rotation_[v] = std::move(order);
}

void Embedding::remove_edge(VertexId u, VertexId v) {
  auto drop = [this](VertexId a, VertexId b) {
    auto it = rotation_.find(a);
    if (it == rotation_.end()) return;
    auto& order = it->second;
    order.erase(std::remove(order.begin(), order.end(), b), order.end());
  };
  drop(u, v);
  drop(v, u);
}

void Embedding::remove_vertex(VertexId v) {
  auto it = rotation_.find(v);
  if (it == rotation_.end()) return;
  for (VertexId w : it->second) {
    auto& order = rotation_.at(w);
    order.erase(std::remove(order.begin(), order.end(), v), order.end());
  }
  rotation_.erase(it);
}

void Embedding::replace_entry(VertexId v, VertexId from,
                              std::span<const VertexId> to) {
  auto& order = rotation_.at(v);
  auto it = std::find(order.begin(), order.end(), from);
  if (it == order.end()) {
    throw MalformedEmbedding("vertex " + std::to_string(from) +
                             " missing from rotation at " + std::to_string(v));
  }
  it = order.erase(it);
  order.insert(it, to.begin(), to.end());
}

void require_matching_embedding(const Graph& g, const Embedding& emb) {
  if (emb.rotations().size() != g.num_vertices()) {
    throw MalformedEmbedding("embedding covers " +
                             std::to_string(emb.rotations().size()) +
                             " vertices, graph has " +
                             std::to_string(g.num_vertices()));
  }
  for (const auto& [v, nbrs] : g.adjacency()) {
    if (!emb.contains(v)) {
      throw MalformedEmbedding("no rotation for vertex " + std::to_string(v));
    }
    std::vector<VertexId> order = emb.rotation(v);
    std::sort(order.begin(), order.end());
    if (order != nbrs) {
      throw MalformedEmbedding("rotation at " + std::to_string(v) +
                               " is not a permutation of its neighbourhood");
    }
  }
}

EmbeddingCheck validate_embedding(const Graph& g, const Embedding& emb) {
  require_matching_embedding(g, emb);

  // Position of each neighbour inside the rotation, for O(log) successor.
  std::map<VertexId, std::map<VertexId, std::size_t>> position;
  std::map<VertexId, std::vector<bool>> used;
  for (const auto& [v, order] : emb.rotations()) {
    auto& pos = position[v];
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    used[v].assign(order.size(), false);
  }

  EmbeddingCheck check;
  std::map<VertexId, std::size_t> component_of;
  auto comps = connected_components(g);
  check.components.resize(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (VertexId v : comps[c]) component_of[v] = c;
    check.components[c].vertices = comps[c].size();
    if (comps[c].size() == 1) check.components[c].faces = 1;
  }
  for (const Edge& e : g.edges()) ++check.components[component_of[e.u]].edges;

  for (const auto& [v, order] : emb.rotations()) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (used[v][i]) continue;
      std::vector<Dart> face;
      VertexId tail = v;
      std::size_t idx = i;
      while (!used[tail][idx]) {
        used[tail][idx] = true;
        VertexId head = emb.rotation(tail)[idx];
        face.push_back({tail, head});
        const auto& head_order = emb.rotation(head);
        std::size_t back = position[head][tail];
        idx = (back + 1) % head_order.size();
        tail = head;
      }
      if (face.front().tail != tail) {
        throw MalformedEmbedding("face tracing did not close");
      }
      ++check.components[component_of[v]].faces;
      check.faces.push_back(std::move(face));
    }
  }

  check.planar = true;
  for (const auto& c : check.components) {
    check.face_count += c.faces;
    if (!c.euler_ok()) check.planar = false;
  }
  return check;
}

bool is_planar_embedding(const Graph& g, const Embedding& emb) {
  return validate_embedding(g, emb).planar;
}

Embedding embedding_from_coordinates(
    const Graph& g, const std::map<VertexId, std::pair<double, double>>& xy) {
  std::map<VertexId, std::vector<VertexId>> rotation;
  for (const auto& [v, nbrs] : g.adjacency()) {
    const auto [x0, y0] = xy.at(v);
    std::vector<std::pair<double, VertexId>> by_angle;
    for (VertexId w : nbrs) {
      const auto [x1, y1] = xy.at(w);
      by_angle.emplace_back(std::atan2(y1 - y0, x1 - x0), w);
    }
    std::sort(by_angle.begin(), by_angle.end());
    auto& order = rotation[v];
    for (const auto& [_, w] : by_angle) order.push_back(w);
  }
  return Embedding(std::move(rotation));
}

EmbeddedGraph contract_uncontract(const Graph& g, const Embedding& emb,
                                  const std::array<VertexId, 4>& path) {
  const auto [x, u, v, y] = path;
  std::set<VertexId> distinct(path.begin(), path.end());
  if (distinct.size() != 4) {
    throw PreconditionError("contract_uncontract needs four distinct vertices");
  }
  for (VertexId p : path) {
    if (!g.has_vertex(p)) {
      throw PreconditionError("path vertex " + std::to_string(p) +
                              " is not in the graph");
    }
  }
  if (!g.has_edge(x, u) || !g.has_edge(u, v) || !g.has_edge(v, y)) {
    throw PreconditionError("x-u-v-y is not a path of the graph");
  }
  require_matching_embedding(g, emb);

  // Contraction: rotation of the merged vertex is u's rotation after v
  // followed by v's rotation after u.
  const std::vector<VertexId> from_u = rotate_after(emb.rotation(u), v);
  const std::vector<VertexId> from_v = rotate_after(emb.rotation(v), u);
  const std::set<VertexId> u_side(from_u.begin(), from_u.end());
  const std::set<VertexId> v_side(from_v.begin(), from_v.end());

  // Parallel edges merge: keep the copy from u, except for y keep v's copy.
  auto kept_from_u = [&](VertexId c) {
    if (!v_side.contains(c)) return true;
    if (!u_side.contains(c)) return false;
    return c != y;
  };
  std::vector<VertexId> merged;
  for (VertexId c : from_u) {
    if (kept_from_u(c)) merged.push_back(c);
  }
  for (VertexId c : from_v) {
    if (!kept_from_u(c)) merged.push_back(c);
  }

  // Uncontraction: cut after x and after y. v gets the arc from x to y,
  // u gets the arc from y to x.
  auto x_pos = std::find(merged.begin(), merged.end(), x);
  std::rotate(merged.begin(), x_pos, merged.end());
  auto y_pos = std::find(merged.begin(), merged.end(), y);
  std::vector<VertexId> arc_v(merged.begin() + 1, y_pos);
  std::vector<VertexId> arc_u(y_pos + 1, merged.end());
  const std::set<VertexId> to_v(arc_v.begin(), arc_v.end());

  Embedding out = emb;
  std::vector<VertexId> rot_v{x};
  rot_v.insert(rot_v.end(), arc_v.begin(), arc_v.end());
  rot_v.push_back(y);
  rot_v.push_back(u);
  std::vector<VertexId> rot_u{y};
  rot_u.insert(rot_u.end(), arc_u.begin(), arc_u.end());
  rot_u.push_back(x);
  rot_u.push_back(v);
  out.set_rotation(u, std::move(rot_u));
  out.set_rotation(v, std::move(rot_v));

  for (VertexId c : merged) {
    const bool common = u_side.contains(c) && v_side.contains(c);
    const VertexId kept = kept_from_u(c) ? u : v;
    if (common) {
      const VertexId dropped = kept == u ? v : u;
      out.replace_entry(c, dropped, {});
    }
    if (c == x) {
      const std::array<VertexId, 2> seq{v, u};
      out.replace_entry(c, kept, seq);
    } else if (c == y) {
      const std::array<VertexId, 2> seq{u, v};
      out.replace_entry(c, kept, seq);
    } else {
      const std::array<VertexId, 1> seq{to_v.contains(c) ? v : u};
      out.replace_entry(c, kept, seq);
    }
  }

  EmbeddedGraph result{out.underlying_graph(), std::move(out)};
  return result;
}

EmbeddedGraph split_vertex(const Graph& g, const Embedding& emb, VertexId x,
                           std::span<const VertexId> moved, VertexId fresh) {
  require_matching_embedding(g, emb);
  if (g.has_vertex(fresh)) {
    throw PreconditionError("split target " + std::to_string(fresh) +
                            " already exists");
  }
  const auto& order = emb.rotation(x);
  if (moved.empty()) {
    throw PreconditionError("split_vertex needs a non-empty run");
  }
  auto start = std::find(order.begin(), order.end(), moved.front());
  if (start == order.end()) {
    throw PreconditionError("split run is not in the rotation");
  }
  std::vector<VertexId> cyclic(start, order.end());
  cyclic.insert(cyclic.end(), order.begin(), start);
  if (moved.size() > cyclic.size() ||
      !std::equal(moved.begin(), moved.end(), cyclic.begin())) {
    throw PreconditionError("split run is not contiguous in the rotation at " +
                            std::to_string(x));
  }
  Embedding out = emb;
  out.set_rotation(fresh, std::vector<VertexId>(moved.begin(), moved.end()));
  out.set_rotation(x, std::vector<VertexId>(cyclic.begin() + moved.size(),
                                            cyclic.end()));
  for (VertexId c : moved) {
    const std::array<VertexId, 1> seq{fresh};
    out.replace_entry(c, x, seq);
  }
  EmbeddedGraph result{out.underlying_graph(), std::move(out)};
  return result;
}

void delete_edges(EmbeddedGraph& eg, std::span<const Edge> edges) {
  for (const Edge& e : edges) {
    eg.graph.remove_edge(e.u, e.v);
    eg.embedding.remove_edge(e.u, e.v);
  }
}

void delete_vertices(EmbeddedGraph& eg, std::span<const VertexId> vertices) {
  for (VertexId v : vertices) {
    eg.graph.remove_vertex(v);
    eg.embedding.remove_vertex(v);
  }
}

}  // namespace oddcycle
