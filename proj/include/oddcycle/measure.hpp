#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "oddcycle/count.hpp"
#include "oddcycle/graph.hpp"

namespace oddcycle {

/// Central numerical tolerances.
struct Tolerances {
  double kkt = 1e-6;
  double value = 1e-4;
  double norm = 1e-12;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};
inline constexpr Tolerances kDefaultTolerances{};

/// Masses below this are reported as zero.
inline constexpr double kTruncateBelow = 1e-10;
/// Floor applied to masses during the search.
inline constexpr double kReviveFloor = 1e-15;

/// Probability measure on the edges of the clique K_k (vertices 0..k-1).
class EdgeMeasure {
 public:
  EdgeMeasure() = default;

  /// Validates non-negativity and Σμ = 1 within tol.
  EdgeMeasure(int clique_size, std::vector<double> masses,
              double tol = kDefaultTolerances.norm);

  static EdgeMeasure from_pairs(int clique_size,
                                const std::map<std::pair<int, int>, double>& mass,
                                double tol = kDefaultTolerances.norm);
  static EdgeMeasure uniform_on(int clique_size,
                                std::span<const std::pair<int, int>> edges);
  static EdgeMeasure point_mass(int clique_size, int u, int v);

  int clique_size() const { return k_; }
  std::size_t edge_count() const { return mass_.size(); }

  double mass(int u, int v) const { return mass_[edge_index(u, v)]; }
  double mass_at(std::size_t index) const { return mass_[index]; }
  std::span<const double> masses() const { return mass_; }

  /// Index of the clique edge {u, v} in lexicographic order.
  std::size_t edge_index(int u, int v) const;
  std::pair<int, int> edge_at(std::size_t index) const;

  /// Edges with mass > threshold.
  std::vector<std::pair<int, int>> support(double threshold = 0.0) const;

  /// Copy with masses below `below` zeroed and the rest renormalised.
  EdgeMeasure truncated(double below = kTruncateBelow) const;

  /// Measure obtained by relabelling clique vertex i to perm[i].
  EdgeMeasure relabeled(std::span<const int> perm) const;

  /// Optional graph vertex ids for the clique vertices (reports only).
  const std::vector<VertexId>& labels() const { return labels_; }
  void set_labels(std::vector<VertexId> labels);

 private:
  int k_ = 0;
  std::vector<double> mass_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<VertexId> labels_;
};

/// β(μ; H) = Σ over unlabeled copies of H in the clique of Π μ(e).
double beta(const EdgeMeasure& mu, Pattern pattern,
            const CountOptions& options = {});

/// μ̄(x) = Σ_y μ(xy).
double vertex_mass(const EdgeMeasure& mu, int x);
std::vector<double> vertex_masses(const EdgeMeasure& mu);

/// m = 2: 2Σμ(e)² + β(P_3); m >= 3: 2m·β(C_m) + β(P_{m+1}).
double objective(const EdgeMeasure& mu, int m, const CountOptions& options = {});

/// Copies of C_m (or the squared-edge term for m = 2) and P_{m+1} in K_k,
/// stored as clique edge indices. Evaluates the objective polynomial and its
/// partial derivatives D(e) at arbitrary (not necessarily normalised) points.
class ObjectiveTable {
 public:
  ObjectiveTable(int clique_size, int m);

  int clique_size() const { return k_; }
  int m() const { return m_; }
  std::size_t edge_count() const { return edges_; }

  double value(std::span<const double> x) const;
  /// D(e) = ∂ objective / ∂ μ(e).
  std::vector<double> gradient(std::span<const double> x) const;
  /// Value and gradient in one pass.
  double value_and_gradient(std::span<const double> x,
                            std::vector<double>& grad) const;
  /// Σ_H γ_H deg_H(x) μ(H) for every clique vertex x.
  std::vector<double> vertex_weighted(std::span<const double> x) const;

  std::size_t cycle_copies() const { return cycles_.size() / cycle_len_; }
  std::size_t path_copies() const { return paths_.size() / path_len_; }

 private:
  int k_;
  int m_;
  std::size_t edges_;
  std::size_t cycle_len_;
  std::size_t path_len_;
  double cycle_weight_;
  std::vector<std::uint32_t> cycles_;
  std::vector<std::uint32_t> paths_;
  std::vector<std::pair<int, int>> pairs_;
};

/// D(e) for every clique edge.
std::vector<double> objective_gradient(const EdgeMeasure& mu, int m);

struct KktReport {
  double value = 0;
  /// λ = m · value.
  double lambda = 0;
  /// μ(e)(λ - D(e)) per clique edge index (zero off the support).
  std::vector<double> edge_residuals;
  /// m·O·μ̄(x) - Σ_H γ_H deg_H(x) μ(H) per clique vertex.
  std::vector<double> vertex_residuals;
  std::vector<double> gradient;
  double max_support_residual = 0;
  double max_vertex_residual = 0;
  /// max over zero-mass edges of D(e) - λ; first-order
  /// optimality needs this <= 0.
  double max_off_support_excess = 0;
  /// m · min over support vertices of μ̄(x).
  double min_scaled_vertex_mass = 0;

  bool stationary(double tol) const {
    return max_support_residual < tol && max_vertex_residual < tol &&
           max_off_support_excess <= tol;
  }
};

KktReport kkt_residual(const EdgeMeasure& mu, int m);

struct RootedPathCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// Σ over copies P of P_{m+1} with x as an endpoint of μ(P), against
/// μ̄(x)((1 - μ̄(x))/(m - 1))^{m-1}.
RootedPathCheck check_rooted_path_bound(const EdgeMeasure& mu, int x, int m);

struct VertexBoundVerdict {
  int x = 0;
  double mass = 0;
  double value = 0;
  bool holds = false;
};

/// (m/2)μ̄ + (1-μ̄)^m + (1/(2O)) μ̄((1-μ̄)/(m-1))^{m-1} >= 1 at every vertex,
/// where O is the optimum value. Requires m >= 3 and O > 0.
std::vector<VertexBoundVerdict> check_vertex_bound(const EdgeMeasure& mu, int m,
                                                   double O);

struct KnownBound {
  double value = 0;
  /// True when the value is the exact supremum, false for an upper bound.
  bool tight = false;
};

/// 2 for m = 2, 2/m^{m-1} for m in {3, 4}, 2.6947/m^{m-1} for m >= 5.
KnownBound known_bound(int m);

}  // namespace oddcycle
