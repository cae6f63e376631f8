#include "oddcycle/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "oddcycle/error.hpp"

namespace oddcycle {

namespace {

struct SearchOutcome {
  std::vector<double> x;
  double value = 0;
  int iterations = 0;
  bool stationary = false;
};

std::vector<double> initial_point(std::size_t edges, int start,
                                  std::uint64_t seed) {
  std::vector<double> x(edges, 0.0);
  if (start == 0) {
    x[0] = 1.0;
    return x;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start)};
  std::mt19937_64 rng(seq);
  // Alternate between spread-out and sparse-looking Dirichlet samples.
  std::gamma_distribution<double> gamma(start % 2 == 1 ? 1.0 : 0.25, 1.0);
  double total = 0.0;
  for (double& p : x) {
    p = gamma(rng);
    total += p;
  }
  if (total <= 0.0) {
    x.assign(edges, 1.0 / static_cast<double>(edges));
    return x;
  }
  for (double& p : x) p /= total;
  return x;
}

void apply_floor(std::vector<double>& x) {
  double total = 0.0;
  for (double& p : x) {
    p = std::max(p, kReviveFloor);
    total += p;
  }
  for (double& p : x) p /= total;
}

SearchOutcome ascend(const ObjectiveTable& table, std::vector<double> x,
                     int max_iters, double internal_tol) {
  const int m = table.m();
  apply_floor(x);
  std::vector<double> grad;
  std::vector<double> trial_grad;
  std::vector<double> trial(x.size());
  double value = table.value_and_gradient(x, grad);
  double eta = 1.0;
  SearchOutcome out;
  int it = 0;
  for (; it < max_iters; ++it) {
    const double lambda = m * value;
    if (!(lambda > 0.0)) break;
    double residual = 0.0;
    double excess = -lambda;
    for (std::size_t i = 0; i < x.size(); ++i) {
      residual = std::max(residual, x[i] * std::abs(grad[i] - lambda));
      excess = std::max(excess, grad[i] - lambda);
    }
    if (residual < internal_tol && excess < internal_tol) {
      out.stationary = true;
      break;
    }
    if (eta < 1e-14) break;
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
      trial[i] = std::log(x[i]) + eta * (grad[i] / lambda - 1.0);
      peak = std::max(peak, trial[i]);
    }
    double total = 0.0;
    for (double& t : trial) {
      t = std::exp(t - peak);
      total += t;
    }
    for (double& t : trial) t /= total;
    apply_floor(trial);
    const double trial_value = table.value_and_gradient(trial, trial_grad);
    if (trial_value >= value) {
      x.swap(trial);
      grad.swap(trial_grad);
      const bool stalled = trial_value == value;
      value = trial_value;
      eta = stalled ? eta * 0.5 : std::min(eta * 1.5, 1e6);
    } else {
      eta *= 0.5;
    }
  }
  out.x = std::move(x);
  out.value = value;
  out.iterations = it;
  return out;
}

}  // namespace

OptimizationReport optimize(const OptimizeOptions& options) {
  if (options.m < 2) throw InvalidArgument("m must be at least 2");
  const int k = options.clique_size == 0 ? options.m + 3 : options.clique_size;
  if (k < 2) throw InvalidArgument("clique size must be at least 2");
  if (options.starts < 1) throw InvalidArgument("need at least one start");
  if (options.max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
  if (!(options.tol > 0.0)) throw InvalidArgument("tol must be positive");

  const ObjectiveTable table(k, options.m);
  const double internal_tol = options.tol * 1e-3;
  std::vector<SearchOutcome> outcomes(static_cast<std::size_t>(options.starts));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    try {
      for (int s = next++; s < options.starts; s = next++) {
        outcomes[s] = ascend(table, initial_point(table.edge_count(), s, options.seed),
                             options.max_iters, internal_tol);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  const unsigned threads = std::clamp<unsigned>(
      options.threads, 1, static_cast<unsigned>(options.starts));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  OptimizationReport report;
  report.m = options.m;
  report.clique_size = k;
  report.starts_used = options.starts;
  int best = 0;
  for (int s = 0; s < options.starts; ++s) {
    const auto& o = outcomes[s];
    report.starts.push_back({o.value, o.iterations, o.stationary});
    if (o.value > outcomes[best].value) best = s;
  }
  report.best_start = best;
  report.measure = EdgeMeasure(k, outcomes[best].x, 1e-9).truncated();
  report.value = objective(report.measure, options.m);
  report.kkt = kkt_residual(report.measure, options.m);
  report.lambda = report.kkt.lambda;
  report.min_scaled_vertex_mass = report.kkt.min_scaled_vertex_mass;
  for (std::size_t i = 0; i < report.measure.edge_count(); ++i) {
    if (report.measure.mass_at(i) > 0.0) {
      report.kkt_edge_residuals[report.measure.edge_at(i)] =
          report.kkt.edge_residuals[i];
    }
  }
  report.converged = report.kkt.stationary(options.tol);
  return report;
}

}  // namespace oddcycle
