#pragma once

// Composite oracle run behind `latdisc verify`.

#include "latdisc/optimizer.hpp"

#include <string>
#include <vector>

namespace latdisc {

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  int resolution = kDefaultGridResolution;
  int eta_samples = 101;
  int quadrature_nodes = kDefaultQuadratureNodes;
  int theta_samples = 50;
  int bound_alpha_samples = 1000;
  int povm_grid = 21;
  unsigned threads = 1;
  /// Self-test of the harness: flips the sign of beta in the inconclusive element.
  bool inject_e0_fault = false;
};

/// Closed-form vs quadrature averaged states on theta_samples points of
/// [0, pi], both hypotheses. Tolerance 1e-11.
CheckResult check_state_equivalence(const VerifyOptions& opts);

/// Grid search vs analytic optimum over the eta1 sweep. Tolerance 10/resolution.
CheckResult check_grid_optimum(const VerifyOptions& opts);

/// Eigenvalue feasibility of the inconclusive element against beta_bound on
/// an alpha grid: PSD at bound - 1e-9, not PSD at bound + 1e-6. Deviation is
/// the number of alpha nodes where either test fails.
CheckResult check_beta_bound(const VerifyOptions& opts);

/// PSD elements, completeness (1e-12) and exact unambiguity (1e-13) of the
/// optimal measurement on a (theta, eta1) grid.
CheckResult check_povm(const VerifyOptions& opts);

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

}  // namespace latdisc
