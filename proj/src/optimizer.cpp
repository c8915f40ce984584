#include "latdisc/optimizer.hpp"

#include "latdisc/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace latdisc {

namespace {

struct Candidate {
  std::size_t alpha_index = 0;
  std::size_t beta_index = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double probability = -1.0;
  std::size_t feasible = 0;
  std::size_t disagreements = 0;
};

// Strictly better, or equal with smaller (alpha, beta) indices.
bool better(const Candidate& a, const Candidate& b) {
  if (a.probability != b.probability) return a.probability > b.probability;
  if (a.alpha_index != b.alpha_index) return a.alpha_index < b.alpha_index;
  return a.beta_index < b.beta_index;
}

double grid_node(std::size_t i, std::size_t n) {
  return i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
}

// Splits [0, n) into contiguous chunks, evaluates each on its own thread and
// merges the per-chunk winners.
template <typename ChunkFn>
Candidate parallel_reduce(std::size_t n, unsigned threads, ChunkFn&& chunk_fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, n);
  std::vector<Candidate> partial(workers);
  auto run = [&](std::size_t w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    partial[w] = chunk_fn(lo, hi);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  Candidate best = partial.front();
  std::size_t feasible = 0;
  std::size_t disagreements = 0;
  for (const auto& c : partial) {
    feasible += c.feasible;
    disagreements += c.disagreements;
    if (better(c, best)) best = c;
  }
  best.feasible = feasible;
  best.disagreements = disagreements;
  return best;
}

}  // namespace

E0Builder default_e0_builder() { return [](double alpha, double beta) { return build_E0(alpha, beta); }; }

double kernel_family_probability(const Priors& priors, double alpha, double beta) {
  return (priors.eta1() * alpha + priors.eta2() * beta) / 3.0;
}

GridSearchResult grid_search_optimum(const Priors& priors, int resolution, unsigned threads) {
  if (resolution < 100) throw std::invalid_argument("grid_search_optimum: resolution must be >= 100");
  const auto n = static_cast<std::size_t>(resolution);
  const Candidate best = parallel_reduce(n, threads, [&](std::size_t lo, std::size_t hi) {
    Candidate local;
    for (std::size_t i = lo; i < hi; ++i) {
      Candidate c;
      c.alpha_index = i;
      c.alpha = grid_node(i, n);
      c.beta = std::min(1.0, beta_bound(c.alpha));
      c.probability = kernel_family_probability(priors, c.alpha, c.beta);
      if (better(c, local)) local = c;
    }
    return local;
  });
  return {best.alpha, best.beta, best.probability, resolution};
}

ScanResult grid_scan_2d(const Priors& priors, int resolution, unsigned threads, const E0Builder& e0) {
  if (resolution < 2) throw std::invalid_argument("grid_scan_2d: resolution must be >= 2");
  const auto n = static_cast<std::size_t>(resolution);
  const Candidate best = parallel_reduce(n, threads, [&](std::size_t lo, std::size_t hi) {
    Candidate local;
    for (std::size_t i = lo; i < hi; ++i) {
      const double alpha = grid_node(i, n);
      const double bound = beta_bound(alpha);
      for (std::size_t j = 0; j < n; ++j) {
        const double beta = grid_node(j, n);
        const bool feasible = is_psd(e0(alpha, beta), kPsdTol);
        if (feasible && beta > bound + 1e-6) ++local.disagreements;
        if (!feasible && beta <= bound - 1e-9) ++local.disagreements;
        if (!feasible) continue;
        ++local.feasible;
        Candidate c{i, j, alpha, beta, kernel_family_probability(priors, alpha, beta)};
        if (better(c, local)) {
          c.feasible = local.feasible;
          c.disagreements = local.disagreements;
          local = c;
        }
      }
    }
    return local;
  });
  ScanResult out;
  out.best = {best.alpha, best.beta, best.probability, resolution};
  out.feasible_nodes = best.feasible;
  out.bound_disagreements = best.disagreements;
  return out;
}

PiecewiseReport verify_piecewise(int resolution, int eta_samples, unsigned threads) {
  if (eta_samples < 1) throw std::invalid_argument("verify_piecewise: eta_samples must be >= 1");
  PiecewiseReport report;
  report.eta_samples = eta_samples;
  report.resolution = resolution;
  report.tolerance = 10.0 / static_cast<double>(resolution);
  const auto n = static_cast<std::size_t>(eta_samples);
  for (std::size_t i = 0; i < n; ++i) {
    const double eta1 = n == 1 ? 0.5 : grid_node(i, n);
    const Priors priors(eta1);
    const double grid = grid_search_optimum(priors, resolution, threads).best_probability;
    const double analytic = analytic_subspace_optimum(priors).probability;
    const double deviation = std::abs(grid - analytic);
    if (deviation > report.max_deviation) {
      report.max_deviation = deviation;
      report.worst_eta1 = eta1;
    }
  }
  return report;
}

}  // namespace latdisc
