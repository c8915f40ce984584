#pragma once

// Brute-force searches over the kernel POVM family (alpha, beta) used to
// check the analytic optimum. Results are independent of the worker count:
// the reduction keeps the largest probability and breaks ties by smallest
// alpha, then smallest beta.

#include "latdisc/matrix.hpp"
#include "latdisc/states.hpp"

#include <cstddef>
#include <functional>

namespace latdisc {

inline constexpr int kDefaultGridResolution = 10000;
inline constexpr int kDefaultScanResolution = 500;

struct GridSearchResult {
  double best_alpha = 0.0;
  double best_beta = 0.0;
  double best_probability = 0.0;
  int resolution = 0;
};

/// Builds the 3x3 inconclusive element for (alpha, beta).
using E0Builder = std::function<ComplexMatrix(double alpha, double beta)>;

/// The default E0Builder, build_E0.
E0Builder default_e0_builder();

/// P = (eta1 alpha + eta2 beta)/3 on the kernel family.
double kernel_family_probability(const Priors& priors, double alpha, double beta);

/// Fast path: `resolution` alpha nodes on [0, 1], beta = min(1, beta_bound(alpha)).
/// Throws std::invalid_argument for resolution < 100.
GridSearchResult grid_search_optimum(const Priors& priors, int resolution = kDefaultGridResolution,
                                     unsigned threads = 1);

struct ScanResult {
  GridSearchResult best;
  std::size_t feasible_nodes = 0;
  /// Nodes where the eigenvalue test and beta_bound disagree outside the
  /// band (bound - 1e-9, bound + 1e-6].
  std::size_t bound_disagreements = 0;
};

/// Slow cross-check: resolution x resolution nodes on [0,1]^2, feasibility
/// decided only by the eigenvalues of the inconclusive element.
ScanResult grid_scan_2d(const Priors& priors, int resolution = kDefaultScanResolution, unsigned threads = 1,
                        const E0Builder& e0 = default_e0_builder());

struct PiecewiseReport {
  double max_deviation = 0.0;
  double worst_eta1 = 0.0;
  int eta_samples = 0;
  int resolution = 0;
  double tolerance = 0.0;  ///< 10 / resolution
  bool passed() const { return max_deviation <= tolerance; }
};

/// Sweeps eta1 over `eta_samples` evenly spaced points of [0, 1] (the single
/// point 1/2 when eta_samples == 1) and compares grid_search_optimum with
/// analytic_subspace_optimum.
PiecewiseReport verify_piecewise(int resolution = kDefaultGridResolution, int eta_samples = 101, unsigned threads = 1);

}  // namespace latdisc
