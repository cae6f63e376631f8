#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "oddcycle/measure.hpp"

namespace oddcycle {

struct OptimizeOptions {
  int m = 3;
  /// Clique size; 0 means m + 3.
  int clique_size = 0;
  int starts = 64;
  int max_iters = 20000;
  /// Tolerance on the KKT residuals used for the converged flag.
  double tol = kDefaultTolerances.kkt;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct StartResult {
  double value = 0;
  int iterations = 0;
  bool stationary = false;
};

struct OptimizationReport {
  int m = 0;
  int clique_size = 0;
  /// Best measure found, truncated below kTruncateBelow.
  EdgeMeasure measure;
  /// objective(measure, m), recomputed after truncation.
  double value = 0;
  double lambda = 0;
  /// μ(e)(λ - D(e)) for every edge of the support.
  std::map<std::pair<int, int>, double> kkt_edge_residuals;
  KktReport kkt;
  double min_scaled_vertex_mass = 0;
  int starts_used = 0;
  int best_start = 0;
  bool converged = false;
  std::vector<StartResult> starts;
};

/// Multistart exponentiated-gradient ascent of the objective over the edge
/// simplex of K_k. Start 0 is the point mass on the edge 01; the rest are
/// Dirichlet samples drawn from the seed. Deterministic for fixed options,
/// independent of the thread count.
OptimizationReport optimize(const OptimizeOptions& options);

}  // namespace oddcycle
