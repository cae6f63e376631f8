#include "oddcycle/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

std::vector<std::pair<int, int>> clique_pairs(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < k; ++u) {
    for (int v = u + 1; v < k; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

Graph support_graph(const EdgeMeasure& mu) {
  Graph g(static_cast<std::size_t>(mu.clique_size()));
  for (const auto& [u, v] : mu.support()) g.add_edge(u, v);
  return g;
}

double copy_mass(const EdgeMeasure& mu, std::span<const VertexId> seq,
                 bool closed) {
  double product = 1.0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    product *= mu.mass(seq[i], seq[i + 1]);
  }
  if (closed) product *= mu.mass(seq.back(), seq.front());
  return product;
}

void require_m(int m, int minimum) {
  if (m < minimum) {
    throw InvalidArgument("m must be at least " + std::to_string(minimum));
  }
}

}  // namespace

EdgeMeasure::EdgeMeasure(int clique_size, std::vector<double> masses,
                         double tol)
    : k_(clique_size), mass_(std::move(masses)), pairs_(clique_pairs(clique_size)) {
  if (k_ < 2) throw InvalidArgument("clique size must be at least 2");
  if (mass_.size() != pairs_.size()) {
    throw InvalidArgument("expected " + std::to_string(pairs_.size()) +
                          " edge masses, got " + std::to_string(mass_.size()));
  }
  double total = 0.0;
  for (double p : mass_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidArgument("edge masses must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > tol) {
    throw InvalidArgument("edge masses sum to " + std::to_string(total) +
                          ", not 1");
  }
}

EdgeMeasure EdgeMeasure::from_pairs(
    int clique_size, const std::map<std::pair<int, int>, double>& mass,
    double tol) {
  if (clique_size < 2) throw InvalidArgument("clique size must be at least 2");
  std::vector<double> masses(
      static_cast<std::size_t>(clique_size) * (clique_size - 1) / 2, 0.0);
  EdgeMeasure shape;
  shape.k_ = clique_size;
  for (const auto& [pair, p] : mass) {
    auto [u, v] = pair;
    if (u == v || u < 0 || v < 0 || u >= clique_size || v >= clique_size) {
      throw InvalidArgument("bad clique edge " + std::to_string(u) + "-" +
                            std::to_string(v));
    }
    masses[shape.edge_index(u, v)] += p;
  }
  return EdgeMeasure(clique_size, std::move(masses), tol);
}

EdgeMeasure EdgeMeasure::uniform_on(int clique_size,
                                    std::span<const std::pair<int, int>> edges) {
  if (edges.empty()) throw InvalidArgument("uniform measure needs an edge");
  std::map<std::pair<int, int>, double> mass;
  for (const auto& e : edges) mass[e] = 1.0 / static_cast<double>(edges.size());
  return from_pairs(clique_size, mass);
}

EdgeMeasure EdgeMeasure::point_mass(int clique_size, int u, int v) {
  return from_pairs(clique_size, {{{u, v}, 1.0}});
}

std::size_t EdgeMeasure::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  if (u == v || u < 0 || v >= k_) {
    throw InvalidArgument("bad clique edge " + std::to_string(u) + "-" +
                          std::to_string(v));
  }
  return static_cast<std::size_t>(u) * (2 * k_ - u - 1) / 2 +
         static_cast<std::size_t>(v - u - 1);
}

std::pair<int, int> EdgeMeasure::edge_at(std::size_t index) const {
  return pairs_.at(index);
}

std::vector<std::pair<int, int>> EdgeMeasure::support(double threshold) const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (mass_[i] > threshold) out.push_back(pairs_[i]);
  }
  return out;
}

EdgeMeasure EdgeMeasure::truncated(double below) const {
  std::vector<double> masses = mass_;
  double total = 0.0;
  for (double& p : masses) {
    if (p < below) p = 0.0;
    total += p;
  }
  if (total <= 0.0) throw InvalidArgument("truncation removed every edge");
  for (double& p : masses) p /= total;
  EdgeMeasure out(k_, std::move(masses));
  out.labels_ = labels_;
  return out;
}

EdgeMeasure EdgeMeasure::relabeled(std::span<const int> perm) const {
  if (perm.size() != static_cast<std::size_t>(k_)) {
    throw InvalidArgument("permutation has the wrong size");
  }
  std::vector<double> masses(mass_.size(), 0.0);
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    const auto [u, v] = pairs_[i];
    masses[edge_index(perm[u], perm[v])] = mass_[i];
  }
  return EdgeMeasure(k_, std::move(masses), 1.0);
}

void EdgeMeasure::set_labels(std::vector<VertexId> labels) {
  if (!labels.empty() && labels.size() != static_cast<std::size_t>(k_)) {
    throw InvalidArgument("label list must name every clique vertex");
  }
  labels_ = std::move(labels);
}

double beta(const EdgeMeasure& mu, Pattern pattern,
            const CountOptions& options) {
  const Graph g = support_graph(mu);
  const bool closed = pattern.kind == PatternKind::Cycle;
  double total = 0.0;
  for_each_copy(
      g, pattern,
      [&](std::span<const VertexId> seq) { total += copy_mass(mu, seq, closed); },
      options);
  return total;
}

double vertex_mass(const EdgeMeasure& mu, int x) {
  if (x < 0 || x >= mu.clique_size()) {
    throw InvalidArgument("vertex " + std::to_string(x) + " is not in the clique");
  }
  double total = 0.0;
  for (int y = 0; y < mu.clique_size(); ++y) {
    if (y != x) total += mu.mass(x, y);
  }
  return total;
}

std::vector<double> vertex_masses(const EdgeMeasure& mu) {
  std::vector<double> out(static_cast<std::size_t>(mu.clique_size()), 0.0);
  for (std::size_t i = 0; i < mu.edge_count(); ++i) {
    const auto [u, v] = mu.edge_at(i);
    out[u] += mu.mass_at(i);
    out[v] += mu.mass_at(i);
  }
  return out;
}

double objective(const EdgeMeasure& mu, int m, const CountOptions& options) {
  require_m(m, 2);
  if (m == 2) {
    double squares = 0.0;
    for (double p : mu.masses()) squares += p * p;
    return 2.0 * squares + beta(mu, Pattern::path(3), options);
  }
  return 2.0 * m * beta(mu, Pattern::cycle(m), options) +
         beta(mu, Pattern::path(m + 1), options);
}

ObjectiveTable::ObjectiveTable(int clique_size, int m)
    : k_(clique_size),
      m_(m),
      edges_(static_cast<std::size_t>(clique_size) * (clique_size - 1) / 2),
      cycle_len_(m == 2 ? 2 : static_cast<std::size_t>(m)),
      path_len_(static_cast<std::size_t>(m)),
      cycle_weight_(m == 2 ? 2.0 : 2.0 * m),
      pairs_(clique_pairs(clique_size)) {
  require_m(m, 2);
  if (clique_size < 2) throw InvalidArgument("clique size must be at least 2");
  EdgeMeasure index_helper(clique_size,
                           std::vector<double>(edges_, 1.0 / static_cast<double>(edges_)),
                           1e-9);
  auto idx = [&](VertexId a, VertexId b) {
    return static_cast<std::uint32_t>(index_helper.edge_index(a, b));
  };
  const Graph clique = complete_graph(static_cast<std::size_t>(clique_size));
  if (m == 2) {
    for (std::uint32_t e = 0; e < edges_; ++e) {
      cycles_.push_back(e);
      cycles_.push_back(e);
    }
  } else {
    for_each_copy(clique, Pattern::cycle(m), [&](std::span<const VertexId> s) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        cycles_.push_back(idx(s[i], s[(i + 1) % s.size()]));
      }
    });
  }
  for_each_copy(clique, Pattern::path(m + 1), [&](std::span<const VertexId> s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      paths_.push_back(idx(s[i], s[i + 1]));
    }
  });
}

namespace {

// Adds weight * Π_{j != i} x[copy[j]] to grad[copy[i]] for every position i
// and returns weight * Π_j x[copy[j]].
double accumulate_copy(const std::uint32_t* copy, std::size_t len,
                       std::span<const double> x, double weight,
                       std::vector<double>* grad) {
  double prefix[32];
  double running = 1.0;
  for (std::size_t i = 0; i < len; ++i) {
    prefix[i] = running;
    running *= x[copy[i]];
  }
  if (grad != nullptr) {
    double suffix = 1.0;
    for (std::size_t i = len; i-- > 0;) {
      (*grad)[copy[i]] += weight * prefix[i] * suffix;
      suffix *= x[copy[i]];
    }
  }
  return weight * running;
}

}  // namespace

double ObjectiveTable::value(std::span<const double> x) const {
  double total = 0.0;
  for (std::size_t c = 0; c < cycles_.size(); c += cycle_len_) {
    total += accumulate_copy(&cycles_[c], cycle_len_, x, cycle_weight_, nullptr);
  }
  for (std::size_t c = 0; c < paths_.size(); c += path_len_) {
    total += accumulate_copy(&paths_[c], path_len_, x, 1.0, nullptr);
  }
  return total;
}

std::vector<double> ObjectiveTable::gradient(std::span<const double> x) const {
  std::vector<double> grad;
  value_and_gradient(x, grad);
  return grad;
}

double ObjectiveTable::value_and_gradient(std::span<const double> x,
                                          std::vector<double>& grad) const {
  grad.assign(edges_, 0.0);
  double total = 0.0;
  for (std::size_t c = 0; c < cycles_.size(); c += cycle_len_) {
    total += accumulate_copy(&cycles_[c], cycle_len_, x, cycle_weight_, &grad);
  }
  for (std::size_t c = 0; c < paths_.size(); c += path_len_) {
    total += accumulate_copy(&paths_[c], path_len_, x, 1.0, &grad);
  }
  return total;
}

std::vector<double> ObjectiveTable::vertex_weighted(
    std::span<const double> x) const {
  std::vector<double> out(static_cast<std::size_t>(k_), 0.0);
  auto add = [&](const std::uint32_t* copy, std::size_t len, double weight) {
    const double mass = accumulate_copy(copy, len, x, weight, nullptr);
    for (std::size_t i = 0; i < len; ++i) {
      const auto [u, v] = pairs_[copy[i]];
      out[u] += mass;
      out[v] += mass;
    }
  };
  for (std::size_t c = 0; c < cycles_.size(); c += cycle_len_) {
    add(&cycles_[c], cycle_len_, cycle_weight_);
  }
  for (std::size_t c = 0; c < paths_.size(); c += path_len_) {
    add(&paths_[c], path_len_, 1.0);
  }
  return out;
}

namespace {

// The clique restricted to support vertices plus at most one spare vertex.
struct CompressedClique {
  std::vector<int> vertices;  // original ids, spare (if any) last
  bool has_spare = false;
  std::vector<int> position;  // original id -> index, or -1
};

CompressedClique compress(const EdgeMeasure& mu) {
  const auto masses = vertex_masses(mu);
  CompressedClique c;
  c.position.assign(masses.size(), -1);
  int spare = -1;
  for (int x = 0; x < mu.clique_size(); ++x) {
    if (masses[x] > 0.0) {
      c.position[x] = static_cast<int>(c.vertices.size());
      c.vertices.push_back(x);
    } else if (spare < 0) {
      spare = x;
    }
  }
  if (spare >= 0) {
    c.has_spare = true;
    c.position[spare] = static_cast<int>(c.vertices.size());
    c.vertices.push_back(spare);
  }
  return c;
}

double falling_product(int n, int r) {
  double out = 1.0;
  for (int i = 0; i < r; ++i) out *= n - i;
  return out;
}

}  // namespace

std::vector<double> objective_gradient(const EdgeMeasure& mu, int m) {
  return kkt_residual(mu, m).gradient;
}

KktReport kkt_residual(const EdgeMeasure& mu, int m) {
  require_m(m, 2);
  const CompressedClique c = compress(mu);
  const int kc = static_cast<int>(c.vertices.size());
  if (kc < 2) throw InvalidArgument("measure has no support");
  if (falling_product(kc, m + 1) / 2 > 5e7) {
    throw InvalidArgument("support too large for dense KKT evaluation");
  }
  std::vector<double> sub(static_cast<std::size_t>(kc) * (kc - 1) / 2, 0.0);
  EdgeMeasure index_helper(kc, std::vector<double>(sub.size(), 1.0 / sub.size()),
                           1e-9);
  for (std::size_t i = 0; i < mu.edge_count(); ++i) {
    const auto [u, v] = mu.edge_at(i);
    if (c.position[u] >= 0 && c.position[v] >= 0) {
      sub[index_helper.edge_index(c.position[u], c.position[v])] = mu.mass_at(i);
    }
  }
  const ObjectiveTable table(kc, m);
  std::vector<double> sub_grad;
  KktReport report;
  report.value = table.value_and_gradient(sub, sub_grad);
  report.lambda = m * report.value;
  const std::vector<double> weighted = table.vertex_weighted(sub);
  const std::vector<double> masses = vertex_masses(mu);
  const int spare = c.has_spare ? kc - 1 : -1;

  report.gradient.assign(mu.edge_count(), 0.0);
  report.edge_residuals.assign(mu.edge_count(), 0.0);
  report.max_off_support_excess = -report.lambda;
  for (std::size_t i = 0; i < mu.edge_count(); ++i) {
    const auto [u, v] = mu.edge_at(i);
    int pu = c.position[u] >= 0 && (masses[u] > 0.0) ? c.position[u] : -1;
    int pv = c.position[v] >= 0 && (masses[v] > 0.0) ? c.position[v] : -1;
    double d = 0.0;
    if (pu >= 0 && pv >= 0) {
      d = sub_grad[index_helper.edge_index(pu, pv)];
    } else if (pu >= 0 || pv >= 0) {
      d = sub_grad[index_helper.edge_index(pu >= 0 ? pu : pv, spare)];
    }
    report.gradient[i] = d;
    const double p = mu.mass_at(i);
    if (p > 0.0) {
      report.edge_residuals[i] = p * (report.lambda - d);
      report.max_support_residual =
          std::max(report.max_support_residual, std::abs(report.edge_residuals[i]));
    } else {
      report.max_off_support_excess =
          std::max(report.max_off_support_excess, d - report.lambda);
    }
  }

  report.vertex_residuals.assign(masses.size(), 0.0);
  double min_mass = std::numeric_limits<double>::infinity();
  for (int x = 0; x < mu.clique_size(); ++x) {
    if (masses[x] <= 0.0) continue;
    min_mass = std::min(min_mass, masses[x]);
    const double r = m * report.value * masses[x] - weighted[c.position[x]];
    report.vertex_residuals[x] = r;
    report.max_vertex_residual = std::max(report.max_vertex_residual, std::abs(r));
  }
  report.min_scaled_vertex_mass = m * min_mass;
  return report;
}

RootedPathCheck check_rooted_path_bound(const EdgeMeasure& mu, int x, int m) {
  require_m(m, 2);
  const double mass_x = vertex_mass(mu, x);
  const Graph g = support_graph(mu);
  std::vector<int> path{x};
  std::vector<char> used(static_cast<std::size_t>(mu.clique_size()), 0);
  used[x] = 1;
  double lhs = 0.0;
  auto extend = [&](auto&& self, double product) -> void {
    if (static_cast<int>(path.size()) == m + 1) {
      lhs += product;
      return;
    }
    const int last = path.back();
    for (VertexId w : g.neighbors(last)) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      self(self, product * mu.mass(last, w));
      path.pop_back();
      used[w] = 0;
    }
  };
  extend(extend, 1.0);
  RootedPathCheck check;
  check.lhs = lhs;
  check.rhs = mass_x * std::pow((1.0 - mass_x) / (m - 1), m - 1);
  check.holds = check.lhs <= check.rhs + 1e-12;
  return check;
}

std::vector<VertexBoundVerdict> check_vertex_bound(const EdgeMeasure& mu, int m,
                                                   double O) {
  require_m(m, 3);
  if (!(O > 0.0)) throw InvalidArgument("O must be positive");
  std::vector<VertexBoundVerdict> out;
  const auto masses = vertex_masses(mu);
  for (int x = 0; x < mu.clique_size(); ++x) {
    const double b = masses[x];
    VertexBoundVerdict v;
    v.x = x;
    v.mass = b;
    v.value = 0.5 * m * b + std::pow(1.0 - b, m) +
              b * std::pow((1.0 - b) / (m - 1), m - 1) / (2.0 * O);
    v.holds = v.value >= 1.0 - 1e-12;
    out.push_back(v);
  }
  return out;
}

KnownBound known_bound(int m) {
  require_m(m, 2);
  if (m == 2) return {2.0, true};
  const double denom = std::pow(static_cast<double>(m), m - 1);
  if (m <= 4) return {2.0 / denom, true};
  return {2.6947 / denom, false};
}

}  // namespace oddcycle
