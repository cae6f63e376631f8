// Acceptance run: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs; without one all of them do.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oddcycle/constructions.hpp"
#include "oddcycle/count.hpp"
#include "oddcycle/error.hpp"
#include "oddcycle/measure.hpp"
#include "oddcycle/optimize.hpp"
#include "oddcycle/pipeline.hpp"
#include "oddcycle/stages.hpp"
#include "oddcycle/tumor.hpp"
#include "support/corpus.hpp"

using namespace oddcycle;

namespace {

constexpr int kRandomMeasures = 10000;
constexpr int kCorpusSize = 500;

class Verdict {
 public:
  explicit Verdict(int criterion) : criterion_(criterion) {}

  void require(bool ok, const std::string& what) {
    if (!ok) {
      ok_ = false;
      if (failures_ < 20) detail("violation: " + what);
      ++failures_;
    }
  }
  void detail(const std::string& line) { details_.push_back(line); }

  bool report(const std::string& summary) const {
    std::printf("criterion %d: %s  %s\n", criterion_, ok_ ? "PASS" : "FAIL",
                summary.c_str());
    for (const auto& d : details_) std::printf("    %s\n", d.c_str());
    if (failures_ > 20) std::printf("    ... %d violations in total\n", failures_);
    std::fflush(stdout);
    return ok_;
  }

 private:
  int criterion_;
  bool ok_ = true;
  int failures_ = 0;
  std::vector<std::string> details_;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

unsigned threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Random probability vector on the edges of K_k: dense, sparse or spiky.
std::vector<double> random_masses(int k, std::mt19937_64& rng) {
  const std::size_t edges = static_cast<std::size_t>(k * (k - 1) / 2);
  const int style = static_cast<int>(rng() % 3);
  std::gamma_distribution<double> gamma(style == 2 ? 0.2 : 1.0, 1.0);
  std::bernoulli_distribution keep(style == 1 ? 0.35 : 1.0);
  std::vector<double> x(edges);
  double total = 0;
  for (double& v : x) {
    v = keep(rng) ? gamma(rng) : 0.0;
    total += v;
  }
  if (total <= 0) {
    x[rng() % edges] = 1.0;
    total = 1.0;
  }
  for (double& v : x) v /= total;
  return x;
}

EdgeMeasure random_measure(int k, std::mt19937_64& rng) {
  return EdgeMeasure(k, random_masses(k, rng), 1e-9);
}

// --- optimizer runs shared by criteria 1, 3 and 4 ---------------------------

struct OptimumRun {
  OptimizationReport report;
  double seconds = 0;
};

const OptimumRun& optimum(int m) {
  static std::map<int, OptimumRun> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  OptimizeOptions o;
  o.m = m;
  o.clique_size = m == 5 ? 8 : m + 3;
  o.starts = 64;
  o.threads = threads();
  const auto start = std::chrono::steady_clock::now();
  OptimumRun run{optimize(o), 0};
  run.seconds = seconds_since(start);
  return cache.emplace(m, std::move(run)).first->second;
}

// True when the support is the edge set of one cycle through m vertices
// (one edge for m = 2) and every support mass is within tol of 1/m.
bool uniform_on_cycle(const EdgeMeasure& mu, int m, double tol, double* deviation) {
  const auto support = mu.support();
  const std::size_t expected_edges = m == 2 ? 1 : static_cast<std::size_t>(m);
  const double target = m == 2 ? 1.0 : 1.0 / m;
  double dev = 0;
  for (const auto& [u, v] : support) dev = std::max(dev, std::abs(mu.mass(u, v) - target));
  *deviation = dev;
  if (support.size() != expected_edges) return false;
  if (m >= 3) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [u, v] : support) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    if (adj.size() != static_cast<std::size_t>(m)) return false;
    for (const auto& [v, nb] : adj) {
      if (nb.size() != 2) return false;
    }
    int prev = -1;
    int cur = adj.begin()->first;
    int steps = 0;
    do {
      const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++steps;
    } while (cur != adj.begin()->first && steps <= m);
    if (steps != m) return false;
  }
  return dev < tol;
}

// --- corpus runs shared by criteria 6, 7 and 8 ------------------------------

const std::vector<corpus::Instance>& the_corpus() {
  static const std::vector<corpus::Instance> instances = corpus::generate(kCorpusSize);
  return instances;
}

struct ChainRun {
  std::optional<StageResult> r1, r2, r3;
  std::string error;
};

const std::vector<ChainRun>& stage_runs() {
  static std::vector<ChainRun> runs;
  if (!runs.empty()) return runs;
  for (const auto& inst : the_corpus()) {
    ChainRun run;
    StageOptions o;
    o.m = inst.m;
    o.mode = VerifyMode::Test;
    try {
      run.r1 = stage1(inst.tumor(), o);
      run.r2 = stage2(run.r1->graph, o);
      run.r3 = stage3(run.r2->graph, o);
    } catch (const Error& e) {
      run.error = "instance " + std::to_string(inst.id) + ": " + e.what();
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

// --- criteria ---------------------------------------------------------------

bool criterion1() {
  Verdict v(1);
  const std::map<int, std::pair<double, double>> target{
      {2, {2.0, 1e-6}}, {3, {2.0 / 9, 1e-4}}, {4, {2.0 / 64, 1e-4}}};
  std::ostringstream summary;
  for (const auto& [m, tv] : target) {
    const OptimumRun& run = optimum(m);
    const auto& r = run.report;
    double dev = 0;
    const bool uniform = uniform_on_cycle(r.measure, m, 1e-4, &dev);
    v.require(std::abs(r.value - tv.first) <= tv.second,
              "m=" + std::to_string(m) + " value " + fmt("%.12g", r.value));
    v.require(uniform, "m=" + std::to_string(m) + " support is not uniform on a C_m edge set");
    v.require(run.seconds < 60.0, "m=" + std::to_string(m) + " took " + fmt("%.2f s", run.seconds));
    v.detail("m=" + std::to_string(m) + ": clique " + std::to_string(r.clique_size) +
             ", 64 starts, value " + fmt("%.12f", r.value) + ", |supp| " +
             std::to_string(r.measure.support().size()) + ", max per-edge deviation " +
             fmt("%.2e", dev) + ", " + fmt("%.2f s", run.seconds));
    summary << "m=" << m << " " << fmt("%.10f", r.value) << "  ";
  }
  return v.report(summary.str());
}

bool criterion2() {
  Verdict v(2);
  const auto start = std::chrono::steady_clock::now();
  const double envelope = 2.6947 / std::pow(5.0, 4);
  const ObjectiveTable table(8, 5);
  std::mt19937_64 rng(2);
  double worst = 0;
  for (int i = 0; i < kRandomMeasures; ++i) {
    const double value = table.value(random_masses(8, rng));
    worst = std::max(worst, value);
    v.require(value <= envelope + 1e-9, "random measure " + std::to_string(i) + " value " +
                                            fmt("%.12g", value));
  }
  const OptimumRun& run = optimum(5);
  const double best = run.report.value;
  v.require(best <= envelope + 1e-9, "optimizer best " + fmt("%.12g", best) + " above envelope");
  // Double round-off margin for comparing a computed polynomial value with
  // the value it attains exactly at the uniform C_5 measure.
  constexpr double kRoundOff = 1e-15;
  v.require(best >= 2.0 / std::pow(5.0, 4) - kRoundOff,
            "optimizer best " + fmt("%.12g", best) + " below 2/5^4");
  const double elapsed = seconds_since(start);
  v.require(elapsed < 120.0, "took " + fmt("%.2f s", elapsed));
  v.detail("max over 10^4 random K_8 measures " + fmt("%.10f", worst) + "; envelope " +
           fmt("%.10f", envelope));
  v.detail("optimizer best (K_8, 64 starts) " + fmt("%.12f", best) + "; best - 2/5^4 = " +
           fmt("%.2e", best - 2.0 / std::pow(5.0, 4)) + " (round-off margin 1e-15); " +
           fmt("%.2f s", elapsed));
  return v.report("best " + fmt("%.10f", best) + " in [0.0032, " + fmt("%.8f", envelope) + "]");
}

bool criterion3() {
  Verdict v(3);
  for (int m = 2; m <= 4; ++m) {
    const KktReport& k = optimum(m).report.kkt;
    v.require(k.max_support_residual < 1e-6,
              "m=" + std::to_string(m) + " support residual " + fmt("%.3e", k.max_support_residual));
    v.require(k.max_vertex_residual < 1e-6,
              "m=" + std::to_string(m) + " vertex residual " + fmt("%.3e", k.max_vertex_residual));
    v.detail("m=" + std::to_string(m) + ": lambda " + fmt("%.12f", k.lambda) +
             ", support residual " + fmt("%.2e", k.max_support_residual) +
             ", vertex residual " + fmt("%.2e", k.max_vertex_residual) +
             ", off-support excess " + fmt("%.2e", k.max_off_support_excess));
  }
  const EdgeMeasure triangle =
      EdgeMeasure::uniform_on(3, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  const KktReport t = kkt_residual(triangle, 3);
  v.require(std::abs(t.lambda - 2.0 / 3) < 1e-12, "triangle lambda " + fmt("%.17g", t.lambda));
  v.require(t.max_support_residual < 1e-12, "triangle support residual " +
                                                fmt("%.3e", t.max_support_residual));
  v.require(t.max_vertex_residual < 1e-12, "triangle vertex residual " +
                                               fmt("%.3e", t.max_vertex_residual));
  v.detail("uniform triangle, m=3: lambda " + fmt("%.17g", t.lambda) + ", residuals " +
           fmt("%.1e", std::max(t.max_support_residual, t.max_vertex_residual)));
  return v.report("optimum residuals < 1e-6, triangle lambda = 2/3");
}

bool criterion4() {
  Verdict v(4);
  std::mt19937_64 rng(4);
  double worst_rooted = -1e300;
  for (int i = 0; i < kRandomMeasures; ++i) {
    const int k = 2 + static_cast<int>(rng() % 7);
    const int m = 2 + static_cast<int>(rng() % 4);
    const EdgeMeasure mu = random_measure(k, rng);
    for (int x = 0; x < k; ++x) {
      const RootedPathCheck c = check_rooted_path_bound(mu, x, m);
      worst_rooted = std::max(worst_rooted, c.lhs - c.rhs);
      v.require(c.holds, "rooted path bound, sample " + std::to_string(i) + " x=" +
                             std::to_string(x) + " lhs " + fmt("%.12g", c.lhs) + " rhs " +
                             fmt("%.12g", c.rhs));
    }
  }
  double worst_beta = -1e300;
  for (int i = 0; i < kRandomMeasures; ++i) {
    const int m = 3 + static_cast<int>(rng() % 3);
    const int k = m + static_cast<int>(rng() % (9 - m));
    const EdgeMeasure mu = random_measure(k, rng);
    const double b = beta(mu, Pattern::cycle(m));
    const double cap = 1.0 / std::pow(static_cast<double>(m), m);
    worst_beta = std::max(worst_beta, b - cap);
    v.require(b <= cap + 1e-15, "beta(C_" + std::to_string(m) + ") sample " +
                                    std::to_string(i) + " = " + fmt("%.12g", b));
  }
  double worst_vertex = 1e300;
  for (int m = 3; m <= 5; ++m) {
    const OptimizationReport& r = optimum(m).report;
    for (const VertexBoundVerdict& vb : check_vertex_bound(r.measure, m, r.value)) {
      worst_vertex = std::min(worst_vertex, vb.value - 1.0);
      v.require(vb.holds, "vertex bound at m=" + std::to_string(m) + " x=" +
                              std::to_string(vb.x) + " value " + fmt("%.12g", vb.value));
    }
  }
  v.detail("rooted path: 10^4 measures, max lhs - rhs " + fmt("%.3e", worst_rooted));
  v.detail("beta(C_m) <= 1/m^m: 10^4 measures, max excess " + fmt("%.3e", worst_beta));
  v.detail("vertex bound at optimizer outputs m=3,4,5: min slack " + fmt("%.3e", worst_vertex));
  return v.report("rooted path, vertex bound, beta(C_m) cap");
}

bool criterion5() {
  Verdict v(5);
  int mismatches_a = 0;
  int mismatches_b = 0;
  int ratio_mismatches = 0;
  int corrected_ok = 0;
  int cases = 0;
  for (int m = 2; m <= 5; ++m) {
    for (int t = 1; t <= 5; ++t) {
      for (bool variant_b : {false, true}) {
        const BlowupSpec spec{m, t, variant_b, TumorShape::Path};
        const Blowup b = build_blowup(spec);
        const TumorGraph tg = make_tumor(b.graph, b.embedding, b.B);
        const std::uint64_t observed = count_good_cycles(tg, m);
        const double tm1 = std::pow(t, m - 1);
        const double stated_a = 2.0 * m * tm1 * (t - 1);
        const double stated = variant_b ? stated_a + m * std::pow(t, m) : stated_a;
        ++cases;
        if (observed == expected_good_count(spec, m)) ++corrected_ok;
        if (static_cast<double>(observed) != stated) {
          (variant_b ? mismatches_b : mismatches_a)++;
          v.require(false, std::string("variant ") + (variant_b ? "b" : "a") + " m=" +
                               std::to_string(m) + " t=" + std::to_string(t) + ": observed " +
                               std::to_string(observed) + ", stated form " +
                               fmt("%.0f", stated));
        }
        if (!variant_b) {
          const double n = static_cast<double>(b.graph.num_vertices());
          const double per = n / m;
          const double ratio = static_cast<double>(observed) / (2.0 * m * std::pow(per, m));
          const double stated_ratio = std::pow(t / per, m - 1) * (t - 1) / t;
          const double corrected_ratio = std::pow(t / per, m - 1) * (t - 1) / per;
          if (std::abs(ratio - stated_ratio) > 1e-12) {
            ++ratio_mismatches;
            v.require(false, "ratio m=" + std::to_string(m) + " t=" + std::to_string(t) +
                                 ": observed " + fmt("%.12f", ratio) + ", stated " +
                                 fmt("%.12f", stated_ratio) + ", (t-1)/(n/m) form " +
                                 fmt("%.12f", corrected_ratio));
          }
        }
      }
    }
  }
  const Blowup c3t3 = build_blowup({3, 3, false, TumorShape::Path});
  const std::uint64_t c108 = count_good_cycles(make_tumor(c3t3.graph, c3t3.embedding, c3t3.B), 3);
  v.require(c108 == 108, "m=3 t=3 gives " + std::to_string(c108));
  v.detail("m=3, t=3 variant a: " + std::to_string(c108) + " good C_7");
  v.detail("stated count forms: " + std::to_string(mismatches_a) + " variant-a and " +
           std::to_string(mismatches_b) + " variant-b mismatches over " +
           std::to_string(cases) + " cases");
  v.detail("stated ratio form: " + std::to_string(ratio_mismatches) + " mismatches over 20 cases");
  v.detail("brute-force-verified forms (m>=3: 2m t^{m-1}(t-1); m=2: 8(t-1)^2; skeleton adds 0): " +
           std::to_string(corrected_ok) + "/" + std::to_string(cases) + " match");
  return v.report("blowup census against the stated closed forms");
}

bool criterion6() {
  Verdict v(6);
  std::size_t rewrites = 0;
  std::size_t batches = 0;
  const auto& runs = stage_runs();
  for (const ChainRun& run : runs) {
    v.require(run.error.empty(), run.error);
    for (const auto* r : {&run.r1, &run.r2, &run.r3}) {
      if (!*r) continue;
      for (const RewriteRecord& w : (*r)->audit.rewrites) {
        ++rewrites;
        v.require(w.good_before && w.good_after && *w.good_after >= *w.good_before,
                  "rewrite decreased the good count");
      }
      for (const DeletionBatch& b : (*r)->audit.batches) {
        ++batches;
        v.require(b.good_after == b.good_before - b.good_through_removed,
                  "exact-loss identity failed for '" + b.reason + "'");
      }
    }
  }
  v.detail(std::to_string(runs.size()) + " instances, " + std::to_string(rewrites) +
           " rewrites recounted, " + std::to_string(batches) + " deletion batches");
  return v.report(std::to_string(rewrites) + " rewrites monotone, " +
                  std::to_string(batches) + " batches exact");
}

bool criterion7() {
  Verdict v(7);
  const auto& runs = stage_runs();
  const auto& instances = the_corpus();
  std::size_t separations = 0;
  std::size_t splits = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const ChainRun& run = runs[i];
    const std::string id = "instance " + std::to_string(instances[i].id);
    v.require(run.error.empty(), run.error);
    if (!run.r3) continue;
    v.require(is_stage_one(run.r1->graph), id + ": stage1 output");
    v.require(is_stage_two(run.r2->graph), id + ": stage2 output");
    v.require(is_benign(run.r3->graph), id + ": stage3 output");
    v.require(run.r3->graph.B().size() <= 3 * run.r2->graph.B().size(), id + ": |B'| > 3|B|");
    for (const auto* r : {&run.r1, &run.r2, &run.r3}) {
      v.require(validate_embedding((*r)->graph.graph(), (*r)->graph.embedding()).planar,
                id + ": non-planar stage output");
    }
    for (const TumorGraph& tg : {instances[i].tumor(), run.r3->graph}) {
      try {
        const Separation sep = separate(tg);
        ++separations;
        splits += sep.splits.size();
        v.require(is_separated(sep.graph), id + ": separation output not a matching");
        v.require(sep.graph.B().size() <= 6 * tg.B().size(), id + ": separation |B'| > 6|B|");
        v.require(validate_embedding(sep.graph.graph(), sep.graph.embedding()).planar,
                  id + ": separation not planar");
      } catch (const Error& e) {
        v.require(false, id + ": separate threw " + e.what());
      }
    }
  }
  v.detail(std::to_string(runs.size()) + " instances; " + std::to_string(separations) +
           " separations with " + std::to_string(splits) + " splits");
  return v.report("stage predicates, |B'| <= 3|B|, separation |B'| <= 6|B|");
}

bool criterion8() {
  Verdict v(8);
  std::size_t checked = 0;
  for (const auto& inst : the_corpus()) {
    const std::string id = "instance " + std::to_string(inst.id);
    try {
      const BoundReport r = reduce(inst.eg.graph, inst.eg.embedding, inst.m, inst.B);
      ++checked;
      for (const InequalityCheck& c : r.checks) {
        v.require(c.holds, id + ": " + c.name + " (" + fmt("%.6g", c.lhs) + " > " +
                               fmt("%.6g", c.rhs) + ")");
      }
      const double nm = std::pow(static_cast<double>(r.n), r.m);
      v.require(static_cast<double>(r.good_with_ss) <= r.coef_S * nm, id + ": |C_S| bound");
      v.require(static_cast<double>(r.good_with_bb) <= r.coef_B * nm, id + ": |C_B| bound");
      v.require(r.actual_total <= r.actual_good + r.partition_loss + r.stage_losses +
                                      r.initial_census.bad,
                id + ": chain accounting");
    } catch (const Error& e) {
      v.require(false, id + ": " + e.what());
    }
  }
  v.detail(std::to_string(checked) + " reductions with chain accounting and both bounds");
  return v.report("chain accounting and |C_S|, |C_B| bounds on the corpus");
}

bool criterion9() {
  Verdict v(9);
  auto falling = [](std::uint64_t n, int k) {
    std::uint64_t out = 1;
    for (int i = 0; i < k; ++i) out *= n - static_cast<std::uint64_t>(i);
    return out;
  };
  std::size_t comparisons = 0;
  for (std::uint64_t n = 1; n <= 7; ++n) {
    const Graph g = complete_graph(n);
    for (int k = 0; k <= static_cast<int>(n); ++k) {
      const std::uint64_t paths = k <= 1 ? (k == 0 ? 1 : n) : falling(n, k) / 2;
      const std::uint64_t got = count_paths(g, k).count;
      const std::uint64_t visits = for_each_copy(g, Pattern::path(k), [](auto) {});
      v.require(got == paths && visits == got,
                "K_" + std::to_string(n) + " P_" + std::to_string(k));
      ++comparisons;
      if (k >= 3) {
        const std::uint64_t cycles = falling(n, k) / (2 * static_cast<std::uint64_t>(k));
        const std::uint64_t c = count_cycles(g, k).count;
        const std::uint64_t cv = for_each_copy(g, Pattern::cycle(k), [](auto) {});
        v.require(c == cycles && cv == c,
                  "K_" + std::to_string(n) + " C_" + std::to_string(k));
        ++comparisons;
      }
    }
  }
  const auto& instances = the_corpus();
  for (std::size_t i = 0; i < 100; ++i) {
    const Graph& g = instances[i].eg.graph;
    for (Pattern p : {Pattern::path(3), Pattern::path(5), Pattern::cycle(3), Pattern::cycle(5),
                      Pattern::cycle(7)}) {
      const std::uint64_t visits = for_each_copy(g, p, [](auto) {});
      v.require(visits == count_copies(g, p).count,
                "corpus instance " + std::to_string(i) + " visit count");
      ++comparisons;
    }
  }
  v.detail(std::to_string(comparisons) + " comparisons");
  return v.report("closed forms on K_n (n <= 7) and visitor counts");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<bool()>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};
  std::vector<int> selected;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
    selected.push_back(n);
  } else {
    for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(static_cast<int>(i));
  }
  bool all = true;
  for (int n : selected) {
    try {
      all = criteria[static_cast<std::size_t>(n - 1)]() && all;
    } catch (const std::exception& e) {
      std::printf("criterion %d: FAIL  uncaught exception: %s\n", n, e.what());
      all = false;
    }
  }
  return all ? 0 : 1;
}
