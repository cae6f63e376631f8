#include "oddcycle/io.hpp"

#include <fstream>
#include <sstream>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

Json vertex_list(const VertexSet& set) {
  Json out = Json::array();
  for (VertexId v : set) out.push_back(v);
  return out;
}

Json vertex_list(const std::vector<VertexId>& list) {
  Json out = Json::array();
  for (VertexId v : list) out.push_back(v);
  return out;
}

Json edge_list(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back(to_json(e));
  return out;
}

std::string pair_key(int u, int v) {
  return std::to_string(u) + "-" + std::to_string(v);
}

std::pair<int, int> parse_pair_key(const std::string& key) {
  const auto dash = key.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == key.size()) {
    throw InvalidArgument("bad edge key '" + key + "', expected 'u-v'");
  }
  try {
    std::size_t used_u = 0;
    std::size_t used_v = 0;
    const std::string a = key.substr(0, dash);
    const std::string b = key.substr(dash + 1);
    const int u = std::stoi(a, &used_u);
    const int v = std::stoi(b, &used_v);
    if (used_u != a.size() || used_v != b.size()) throw std::invalid_argument(key);
    return {u, v};
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad edge key '" + key + "', expected 'u-v'");
  }
}

template <typename T>
T get_field(const Json& j, const char* name) {
  if (!j.contains(name)) {
    throw InvalidArgument(std::string("missing field '") + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad field '") + name + "': " + e.what());
  }
}

Json census_json(const BadCycleCensus& c) {
  Json classes = Json::object();
  for (BadClass k : kBadClasses) {
    auto it = c.per_class.find(k);
    classes[bad_class_name(k)] = it == c.per_class.end() ? 0 : it->second;
  }
  return {{"per_class", classes}, {"good", c.good}, {"total", c.total},
          {"bad", c.bad}};
}

}  // namespace

Json graph_to_json(const Graph& g, const Embedding* emb, const VertexSet* B) {
  Json j;
  j["n"] = g.num_vertices();
  if (!g.has_contiguous_ids()) j["vertices"] = vertex_list(g.vertices());
  j["edges"] = edge_list(g.edges());
  if (emb != nullptr) {
    Json rot = Json::object();
    for (const auto& [v, order] : emb->rotations()) {
      rot[std::to_string(v)] = order;
    }
    j["rotation"] = rot;
  }
  if (B != nullptr) j["B"] = vertex_list(*B);
  return j;
}

GraphFile graph_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("graph JSON must be an object");
  const auto n = get_field<long long>(j, "n");
  if (n < 0) throw InvalidArgument("n must be non-negative");
  std::vector<VertexId> vertices;
  if (j.contains("vertices")) {
    vertices = get_field<std::vector<VertexId>>(j, "vertices");
    if (static_cast<long long>(vertices.size()) != n) {
      throw InvalidArgument("'vertices' has " + std::to_string(vertices.size()) +
                            " entries but n = " + std::to_string(n));
    }
  } else {
    for (VertexId v = 0; v < n; ++v) vertices.push_back(v);
  }
  GraphFile out;
  for (VertexId v : vertices) {
    if (!out.graph.add_vertex(v)) {
      throw InvalidArgument("duplicate vertex " + std::to_string(v));
    }
  }
  const auto edges = get_field<std::vector<std::vector<VertexId>>>(j, "edges");
  for (const auto& e : edges) {
    if (e.size() != 2) throw InvalidArgument("each edge must be [u, v]");
    if (!out.graph.add_edge(e[0], e[1])) {
      throw InvalidArgument("duplicate edge " + pair_key(e[0], e[1]));
    }
  }
  if (j.contains("rotation")) {
    const Json& rot = j.at("rotation");
    if (!rot.is_object()) throw InvalidArgument("'rotation' must be an object");
    std::map<VertexId, std::vector<VertexId>> rotation;
    for (auto it = rot.begin(); it != rot.end(); ++it) {
      VertexId v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument(it.key());
      } catch (const std::logic_error&) {
        throw InvalidArgument("bad rotation key '" + it.key() + "'");
      }
      try {
        rotation[v] = it.value().get<std::vector<VertexId>>();
      } catch (const Json::exception& e) {
        throw InvalidArgument("bad rotation at " + it.key() + ": " + e.what());
      }
    }
    Embedding emb(std::move(rotation));
    require_matching_embedding(out.graph, emb);
    out.embedding = std::move(emb);
  }
  if (j.contains("B")) {
    VertexSet B;
    for (VertexId v : get_field<std::vector<VertexId>>(j, "B")) {
      if (!out.graph.has_vertex(v)) {
        throw InvalidArgument("B names unknown vertex " + std::to_string(v));
      }
      B.insert(v);
    }
    out.B = std::move(B);
  }
  return out;
}

Json measure_to_json(const EdgeMeasure& mu) {
  Json mass = Json::object();
  for (std::size_t i = 0; i < mu.edge_count(); ++i) {
    if (mu.mass_at(i) > 0.0) {
      const auto [u, v] = mu.edge_at(i);
      mass[pair_key(u, v)] = mu.mass_at(i);
    }
  }
  Json j{{"clique", mu.clique_size()}, {"mass", mass}};
  if (!mu.labels().empty()) j["labels"] = mu.labels();
  return j;
}

EdgeMeasure measure_from_json(const Json& j, double tol) {
  if (!j.is_object()) throw InvalidArgument("measure JSON must be an object");
  const int k = get_field<int>(j, "clique");
  if (!j.contains("mass") || !j.at("mass").is_object()) {
    throw InvalidArgument("measure JSON needs a 'mass' object");
  }
  std::map<std::pair<int, int>, double> mass;
  for (auto it = j.at("mass").begin(); it != j.at("mass").end(); ++it) {
    if (!it.value().is_number()) {
      throw InvalidArgument("mass of " + it.key() + " is not a number");
    }
    auto [u, v] = parse_pair_key(it.key());
    if (u > v) std::swap(u, v);
    if (mass.contains({u, v})) {
      throw InvalidArgument("edge " + it.key() + " listed twice");
    }
    mass[{u, v}] = it.value().get<double>();
  }
  EdgeMeasure mu = EdgeMeasure::from_pairs(k, mass, tol);
  if (j.contains("labels")) {
    mu.set_labels(get_field<std::vector<VertexId>>(j, "labels"));
  }
  return mu;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

GraphFile read_graph_file(const std::string& path) {
  return graph_from_json(read_json_file(path));
}

Json to_json(const Edge& e) { return Json::array({e.u, e.v}); }

Json to_json(const InequalityCheck& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
}

Json to_json(const EmbeddingCheck& c) {
  Json comps = Json::array();
  for (const auto& comp : c.components) {
    comps.push_back({{"vertices", comp.vertices},
                     {"edges", comp.edges},
                     {"faces", comp.faces},
                     {"euler_ok", comp.euler_ok()}});
  }
  Json faces = Json::array();
  for (const auto& face : c.faces) {
    Json f = Json::array();
    for (const Dart& d : face) f.push_back(d.tail);
    faces.push_back(f);
  }
  return {{"planar", c.planar},
          {"face_count", c.face_count},
          {"faces", faces},
          {"components", comps}};
}

Json to_json(const PlanarReport& r) {
  Json j;
  j["edge_count_ok"] = r.edge_count_ok;
  j["high_degree_ok"] = r.high_degree_ok;
  Json hd = Json::object();
  for (const auto& [d, c] : r.high_degree_counts) hd[std::to_string(d)] = c;
  j["high_degree_counts"] = hd;
  if (r.bipartite_edge_ok) j["bipartite_edge_ok"] = *r.bipartite_edge_ok;
  if (r.bipartite_A_bound) j["bipartite_A_bound"] = *r.bipartite_A_bound;
  if (r.bipartite_A_ok) j["bipartite_A_ok"] = *r.bipartite_A_ok;
  if (r.fork_count) j["fork_count"] = *r.fork_count;
  if (r.fork_ok) j["fork_ok"] = *r.fork_ok;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  j["all_ok"] = r.all_ok();
  return j;
}

Json to_json(const CopyCount& c) {
  return {{"pattern", c.pattern.name()}, {"count", c.count}, {"nodes", c.nodes}};
}

Json to_json(const BadCycleCensus& c) { return census_json(c); }

Json to_json(const GoodCycleSplit& s) {
  return {{"total_cycles", s.total_cycles},
          {"good", s.good},
          {"with_ss", s.with_ss},
          {"with_bb", s.with_bb}};
}

Json to_json(const StageAudit& a) {
  Json rewrites = Json::array();
  for (const auto& r : a.rewrites) {
    Json entry{{"path", r.path}};
    if (r.good_before) entry["good_before"] = *r.good_before;
    if (r.good_after) entry["good_after"] = *r.good_after;
    rewrites.push_back(entry);
  }
  Json batches = Json::array();
  for (const auto& b : a.batches) {
    batches.push_back({{"reason", b.reason},
                       {"edges", edge_list(b.edges)},
                       {"vertices", vertex_list(b.vertices)},
                       {"good_before", b.good_before},
                       {"good_after", b.good_after},
                       {"good_through_removed", b.good_through_removed}});
  }
  return {{"stage", a.stage},
          {"removed_edges", edge_list(a.removed_edges)},
          {"removed_vertices", vertex_list(a.removed_vertices)},
          {"promoted", vertex_list(a.promoted)},
          {"rewrites", rewrites},
          {"batches", batches},
          {"good_before", a.good_before},
          {"good_after", a.good_after},
          {"good_through_removed", a.good_through_removed},
          {"lost_to_promotion", a.lost_to_promotion},
          {"total_before", a.total_before},
          {"total_after", a.total_after},
          {"b_before", a.b_before},
          {"b_after", a.b_after},
          {"accounting_holds", a.accounting_holds()}};
}

Json to_json(const Separation& s) {
  Json lifting = Json::object();
  for (const auto& [x, parts] : s.lifting) {
    lifting[std::to_string(x)] = vertex_list(parts);
  }
  Json splits = Json::array();
  for (const auto& [x, fresh] : s.splits) splits.push_back({x, fresh});
  return {{"graph", graph_to_json(s.graph.graph(), &s.graph.embedding(),
                                  &s.graph.B())},
          {"lifting", lifting},
          {"removed_b_edges", edge_list(s.removed_b_edges)},
          {"splits", splits}};
}

Json to_json(const PartitionAudit& a) {
  return {{"n", a.n},
          {"m", a.m},
          {"d", a.d},
          {"D", a.D},
          {"B", vertex_list(a.B)},
          {"S", vertex_list(a.S)},
          {"B_ltD", vertex_list(a.B_ltD)},
          {"B_geD", vertex_list(a.B_geD)},
          {"S_prime", vertex_list(a.S_prime)},
          {"S_doubleprime", vertex_list(a.S_doubleprime)},
          {"deleted_edge_sets",
           {{"S_prime_to_B_geD", edge_list(a.deleted_geD)},
            {"S_doubleprime_to_B_ltD", edge_list(a.deleted_ltD)}}},
          {"total_before", a.total_before},
          {"total_after", a.total_after},
          {"cycles_lost_exact", a.cycles_lost_exact}};
}

Json to_json(const BoundReport& r) {
  Json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["partition_mode"] = r.partition_mode;
  j["partition"] = r.partition ? to_json(*r.partition) : Json(nullptr);
  j["initial_B"] = vertex_list(r.initial_B);
  j["initial_census"] = census_json(r.initial_census);
  Json stages = Json::array();
  for (const auto& a : r.stages) stages.push_back(to_json(a));
  j["stages"] = stages;
  j["final_B"] = vertex_list(r.final_B);
  j["final_graph"] = graph_to_json(r.final_graph);
  Json tumors = Json::array();
  for (const auto& t : r.tumors) {
    tumors.push_back({{"x", t.x}, {"y", t.y}, {"size", t.size}, {"mu", t.mu}});
  }
  j["tumors"] = tumors;
  j["mu"] = r.mu ? measure_to_json(*r.mu) : Json(nullptr);
  j["no_tumors"] = r.no_tumors;
  j["coef_S"] = r.coef_S;
  j["coef_B"] = r.coef_B;
  j["coefficient"] = r.coefficient;
  j["bound"] = r.bound;
  j["actual_total"] = r.actual_total;
  j["actual_good"] = r.actual_good;
  j["good_with_ss"] = r.good_with_ss;
  j["good_with_bb"] = r.good_with_bb;
  j["partition_loss"] = r.partition_loss;
  j["stage_losses"] = r.stage_losses;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  j["all_ok"] = r.all_ok();
  return j;
}

Json to_json(const KktReport& r, const EdgeMeasure& mu) {
  Json edges = Json::object();
  for (std::size_t i = 0; i < mu.edge_count(); ++i) {
    if (mu.mass_at(i) > 0.0) {
      const auto [u, v] = mu.edge_at(i);
      edges[pair_key(u, v)] = {{"residual", r.edge_residuals[i]},
                               {"gradient", r.gradient[i]}};
    }
  }
  Json vertices = Json::object();
  for (std::size_t x = 0; x < r.vertex_residuals.size(); ++x) {
    if (r.vertex_residuals[x] != 0.0) {
      vertices[std::to_string(x)] = r.vertex_residuals[x];
    }
  }
  return {{"value", r.value},
          {"lambda", r.lambda},
          {"edge_residuals", edges},
          {"vertex_residuals", vertices},
          {"max_support_residual", r.max_support_residual},
          {"max_vertex_residual", r.max_vertex_residual},
          {"max_off_support_excess", r.max_off_support_excess},
          {"off_support_note", "D(e) <= lambda off the support is the standard "
                               "first-order condition (derived)"},
          {"min_scaled_vertex_mass", r.min_scaled_vertex_mass}};
}

Json to_json(const OptimizationReport& r) {
  Json residuals = Json::object();
  for (const auto& [e, res] : r.kkt_edge_residuals) {
    residuals[pair_key(e.first, e.second)] = res;
  }
  Json starts = Json::array();
  for (const auto& s : r.starts) {
    starts.push_back({{"value", s.value},
                      {"iterations", s.iterations},
                      {"stationary", s.stationary}});
  }
  const KnownBound known = known_bound(r.m);
  return {{"m", r.m},
          {"clique", r.clique_size},
          {"measure", measure_to_json(r.measure)},
          {"value", r.value},
          {"lambda", r.lambda},
          {"kkt_edge_residuals", residuals},
          {"kkt", to_json(r.kkt, r.measure)},
          {"min_scaled_vertex_mass", r.min_scaled_vertex_mass},
          {"starts_used", r.starts_used},
          {"best_start", r.best_start},
          {"converged", r.converged},
          {"known_bound", {{"value", known.value}, {"tight", known.tight}}},
          {"starts", starts}};
}

Json to_json(const RootedPathCheck& c) {
  return {{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
}

Json to_json(const VertexBoundVerdict& v) {
  return {{"x", v.x}, {"mass", v.mass}, {"value", v.value}, {"holds", v.holds}};
}

}  // namespace oddcycle
