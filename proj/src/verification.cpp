#include "latdisc/verification.hpp"

#include "latdisc/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latdisc {

namespace {

double sample(int i, int n, double hi) {
  if (n == 1) return hi / 2.0;
  return i + 1 == n ? hi : hi * static_cast<double>(i) / static_cast<double>(n - 1);
}

E0Builder e0_for(const VerifyOptions& opts) {
  if (!opts.inject_e0_fault) return default_e0_builder();
  return [](double alpha, double beta) {
    ComplexMatrix m = build_E0(alpha, beta);
    m(2, 2) += 2.0 * beta;
    return m;
  };
}

}  // namespace

CheckResult check_state_equivalence(const VerifyOptions& opts) {
  CheckResult r{"state_equivalence", 0.0, 1e-11, false};
  for (int i = 0; i < opts.theta_samples; ++i) {
    const double theta = sample(i, opts.theta_samples, kPi);
    for (const auto which : {Hypothesis::first, Hypothesis::second}) {
      const auto closed = average_state_closed(which, theta);
      const auto quad = average_state_quadrature(which, theta, opts.quadrature_nodes);
      r.max_deviation = std::max(r.max_deviation, max_abs_diff(closed.matrix(), quad.matrix()));
    }
  }
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

CheckResult check_grid_optimum(const VerifyOptions& opts) {
  const auto report = verify_piecewise(opts.resolution, opts.eta_samples, opts.threads);
  return {"grid_optimum", report.max_deviation, report.tolerance, report.passed()};
}

CheckResult check_beta_bound(const VerifyOptions& opts) {
  const E0Builder e0 = e0_for(opts);
  CheckResult r{"beta_bound", 0.0, 0.0, false};
  std::size_t failures = 0;
  for (int i = 0; i < opts.bound_alpha_samples; ++i) {
    const double alpha = sample(i, opts.bound_alpha_samples, 1.0);
    const double bound = beta_bound(alpha);
    const double inside = std::max(0.0, bound - 1e-9);
    const double outside = bound + 1e-6;
    bool ok = is_psd(e0(alpha, inside), kPsdTol);
    if (outside <= 1.0) ok = ok && !is_psd(e0(alpha, outside), kPsdTol);
    if (!ok) ++failures;
  }
  r.max_deviation = static_cast<double>(failures);
  r.passed = failures == 0;
  return r;
}

CheckResult check_povm(const VerifyOptions& opts) {
  CheckResult r{"povm_validity", 0.0, 1e-12, true};
  const ComplexMatrix id = ComplexMatrix::identity(8);
  for (int i = 0; i < opts.povm_grid; ++i) {
    const double theta = sample(i, opts.povm_grid, kPi);
    const auto rho1 = average_state_closed(Hypothesis::first, theta);
    const auto rho2 = average_state_closed(Hypothesis::second, theta);
    for (int j = 0; j < opts.povm_grid; ++j) {
      const Priors priors(sample(j, opts.povm_grid, 1.0));
      try {
        const Povm povm = total_povm(priors);
        const ComplexMatrix sum = povm.identify_1() + povm.identify_2() + povm.inconclusive();
        r.max_deviation = std::max(r.max_deviation, max_abs_diff(sum, id));
        const auto [d1, d2] = unambiguity_defect(povm, rho1, rho2);
        if (std::abs(d1) > 1e-13 || std::abs(d2) > 1e-13) r.passed = false;
        r.max_deviation = std::max({r.max_deviation, std::abs(d1), std::abs(d2)});
      } catch (const std::invalid_argument&) {
        r.passed = false;
        r.max_deviation = std::max(r.max_deviation, 1.0);
      }
    }
  }
  r.passed = r.passed && r.max_deviation <= r.tolerance;
  return r;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  if (opts.resolution < 100) throw std::invalid_argument("resolution must be >= 100");
  if (opts.eta_samples < 1) throw std::invalid_argument("eta_samples must be >= 1");
  if (opts.quadrature_nodes < 4) throw std::invalid_argument("quadrature_nodes must be >= 4");
  return {check_state_equivalence(opts), check_grid_optimum(opts), check_beta_bound(opts), check_povm(opts)};
}

}  // namespace latdisc
