#include "oddcycle/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

std::size_t fifth_root_ceil(std::uint64_t value) {
  std::uint64_t r = 0;
  auto fifth = [](std::uint64_t x) { return x * x * x * x * x; };
  while (fifth(r) < value) ++r;
  return static_cast<std::size_t>(r);
}

std::size_t count_in(const Graph& g, VertexId v, const VertexSet& set) {
  std::size_t c = 0;
  for (VertexId w : g.neighbors(v)) c += set.contains(w) ? 1 : 0;
  return c;
}

std::vector<Edge> edges_between(const Graph& g, const VertexSet& from,
                                const VertexSet& to) {
  std::vector<Edge> out;
  for (VertexId v : from) {
    for (VertexId w : g.neighbors(v)) {
      if (to.contains(w)) out.emplace_back(v, w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InequalityCheck check_le(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, lhs <= rhs};
}

}  // namespace

bool BoundReport::all_ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InequalityCheck& c) { return c.holds; });
}

PartitionResult degree_partition(const Graph& g, const Embedding& emb, int m,
                                 const CountOptions& count) {
  if (m < 2) throw InvalidArgument("m must be at least 2");
  require_matching_embedding(g, emb);
  PartitionAudit audit;
  audit.n = g.num_vertices();
  audit.m = m;
  audit.d = fifth_root_ceil(audit.n);
  audit.D = fifth_root_ceil(static_cast<std::uint64_t>(audit.n) * audit.n);
  for (VertexId v : g.vertices()) {
    const std::size_t deg = g.degree(v);
    if (deg < audit.d) {
      audit.S.insert(v);
    } else {
      audit.B.insert(v);
      (deg < audit.D ? audit.B_ltD : audit.B_geD).insert(v);
    }
  }

  EmbeddedGraph eg{g, emb};
  for (VertexId s : audit.S) {
    if (count_in(g, s, audit.B_geD) >= 3) audit.S_prime.insert(s);
  }
  audit.deleted_geD = edges_between(g, audit.S_prime, audit.B_geD);
  delete_edges(eg, audit.deleted_geD);
  for (VertexId s : audit.S) {
    if (count_in(eg.graph, s, audit.B) >= 3) audit.S_doubleprime.insert(s);
  }
  audit.deleted_ltD = edges_between(eg.graph, audit.S_doubleprime, audit.B_ltD);
  delete_edges(eg, audit.deleted_ltD);

  const Pattern cycle = Pattern::cycle(2 * m + 1);
  audit.total_before = count_copies(g, cycle, count).count;
  audit.total_after = count_copies(eg.graph, cycle, count).count;
  audit.cycles_lost_exact = audit.total_before - audit.total_after;

  TumorGraph tg;
  try {
    tg = make_tumor(std::move(eg.graph), std::move(eg.embedding), audit.B);
  } catch (const NotATumorGraph& e) {
    throw InvariantViolation(std::string("degree partition left a vertex with "
                                         "three B-neighbours: ") +
                             e.what());
  }
  return {std::move(tg), std::move(audit)};
}

BoundReport reduce(const Graph& g, const Embedding& emb, int m,
                   const std::optional<VertexSet>& B,
                   const PipelineOptions& options) {
  if (m < 2) throw InvalidArgument("m must be at least 2");
  require_matching_embedding(g, emb);
  if (!validate_embedding(g, emb).planar) {
    throw MalformedEmbedding("reduce needs a planar embedding");
  }
  BoundReport report;
  report.m = m;
  report.n = g.num_vertices();
  const Pattern cycle = Pattern::cycle(2 * m + 1);
  report.actual_total = count_copies(g, cycle, options.count).count;

  TumorGraph tg;
  if (B) {
    report.partition_mode = "given";
    tg = make_tumor(g, emb, *B);
  } else {
    report.partition_mode = "degree";
    PartitionResult part = degree_partition(g, emb, m, options.count);
    report.partition_loss = part.audit.cycles_lost_exact;
    report.partition = std::move(part.audit);
    tg = std::move(part.graph);
  }
  report.initial_B = tg.B();
  report.initial_census = classify_bad_cycles(tg, m, options.count);

  auto stage_options = [&](const TumorGraph& current) {
    StageOptions so = default_stage_options(current, m, options.count);
    if (options.mode) so.mode = *options.mode;
    return so;
  };
  StageResult r1 = stage1(tg, stage_options(tg));
  StageResult r2 = stage2(r1.graph, stage_options(r1.graph));
  StageResult r3 = stage3(r2.graph, stage_options(r2.graph));
  for (const StageAudit* a : {&r1.audit, &r2.audit, &r3.audit}) {
    report.stage_losses += a->good_through_removed;
    report.stages.push_back(*a);
  }
  const TumorGraph& benign = r3.graph;
  report.final_B = benign.B();
  report.final_graph = benign.graph();

  const GoodCycleSplit split = count_good_cycles_split(benign, m, options.count);
  report.actual_good = split.good;
  report.good_with_ss = split.with_ss;
  report.good_with_bb = split.with_bb;

  const auto tumors = benign.tumors();
  std::size_t total_size = 0;
  for (const auto& [pair, members] : tumors) total_size += members.size();
  const double nm = std::pow(static_cast<double>(report.n), m);
  if (total_size == 0) {
    report.no_tumors = true;
  } else {
    const std::vector<VertexId> labels(report.final_B.begin(),
                                       report.final_B.end());
    std::map<VertexId, int> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      index[labels[i]] = static_cast<int>(i);
    }
    std::map<std::pair<int, int>, double> mass;
    for (const auto& [pair, members] : tumors) {
      const double mu = static_cast<double>(members.size()) /
                        static_cast<double>(total_size);
      report.tumors.push_back({pair.first, pair.second, members.size(), mu});
      mass[{index.at(pair.first), index.at(pair.second)}] = mu;
    }
    EdgeMeasure mu = EdgeMeasure::from_pairs(static_cast<int>(labels.size()),
                                             mass, 1e-9);
    mu.set_labels(labels);
    if (m == 2) {
      double squares = 0.0;
      for (double p : mu.masses()) squares += p * p;
      report.coef_S = 2.0 * squares;
    } else {
      report.coef_S = 2.0 * m * beta(mu, Pattern::cycle(m), options.count);
    }
    report.coef_B = beta(mu, Pattern::path(m + 1), options.count);
    report.mu = std::move(mu);
  }
  report.coefficient = report.coef_S + report.coef_B;
  report.bound = report.coefficient * nm;

  auto& checks = report.checks;
  checks.push_back(check_le("good_S <= coef_S * n^m",
                            static_cast<double>(split.with_ss),
                            report.coef_S * nm));
  checks.push_back(check_le("good_B <= coef_B * n^m",
                            static_cast<double>(split.with_bb),
                            report.coef_B * nm));
  checks.push_back(check_le("good <= bound", static_cast<double>(split.good),
                            report.bound));
  for (const auto& t : report.tumors) {
    checks.push_back(check_le("|S_" + std::to_string(t.x) + "," +
                                  std::to_string(t.y) + "| <= mu * n",
                              static_cast<double>(t.size),
                              t.mu * static_cast<double>(report.n) + 1e-9));
  }
  const double chain_rhs = static_cast<double>(report.actual_good) +
                           static_cast<double>(report.partition_loss) +
                           static_cast<double>(report.stage_losses) +
                           static_cast<double>(report.initial_census.bad);
  checks.push_back(check_le("total(G) <= good(G2) + losses + bad(G1)",
                            static_cast<double>(report.actual_total), chain_rhs));
  checks.push_back(check_le("|B'| <= 3|B|",
                            static_cast<double>(report.final_B.size()),
                            3.0 * static_cast<double>(report.initial_B.size())));
  checks.push_back(
      {"benign(G2)", is_benign(benign) ? 1.0 : 0.0, 1.0, is_benign(benign)});
  return report;
}

}  // namespace oddcycle
