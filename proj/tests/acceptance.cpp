// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include "latdisc/discrimination.hpp"
#include "latdisc/optimizer.hpp"
#include "latdisc/simulator.hpp"
#include "latdisc/states.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

using namespace latdisc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

struct CriterionResult {
  bool passed;
  std::string detail;
};

// 1. Closed-form vs quadrature averaged states, 50 latitudes, both labels.
CriterionResult state_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double theta = i == 49 ? kPi : kPi * i / 49.0;
    for (auto which : {Hypothesis::first, Hypothesis::second}) {
      worst = std::max(worst, max_abs_diff(average_state_closed(which, theta).matrix(),
                                           average_state_quadrature(which, theta, 64).matrix()));
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << "max|closed - quadrature| = " << worst << " (tol 1e-11), " << elapsed << " s (limit 5 s)";
  return {worst <= 1e-11 && elapsed < 5.0, os.str()};
}

// 2. Analytic optimum at eta1 = 1/2, grid search at 1e4, 101-point sweep.
CriterionResult optimum_reproduction() {
  const auto t0 = Clock::now();
  const auto opt = analytic_subspace_optimum(Priors(0.5));
  const double analytic_dev =
      std::max({std::abs(opt.probability - 2.0 / 9.0), std::abs(opt.alpha - 2.0 / 3.0), std::abs(opt.beta - 2.0 / 3.0)});
  const auto grid = grid_search_optimum(Priors(0.5), 10000, worker_count());
  const double grid_dev = std::abs(grid.best_probability - opt.probability);
  const auto sweep = verify_piecewise(10000, 101, worker_count());
  const double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << "analytic dev " << analytic_dev << ", grid dev " << grid_dev << ", sweep max dev " << sweep.max_deviation
     << " (tol 1e-3), " << elapsed << " s (limit 30 s)";
  return {analytic_dev <= 1e-15 && grid_dev <= 1e-3 && sweep.max_deviation <= 1e-3 && elapsed < 30.0, os.str()};
}

// 3. Branch agreement at 1/5 and 4/5; projective outside, proper POVM inside.
CriterionResult threshold_behavior() {
  bool ok = true;
  std::ostringstream os;

  const double low_mid = (4.0 / 9.0) * (1.0 - std::sqrt(0.2 * 0.8));
  const double low_branch = 0.8 / 3.0;
  const double high_mid = (4.0 / 9.0) * (1.0 - std::sqrt(0.8 * 0.2));
  const double high_branch = 0.8 / 3.0;
  const double at_low = analytic_subspace_optimum(Priors(0.2)).probability;
  const double at_high = analytic_subspace_optimum(Priors(0.8)).probability;
  const double dev = std::max({std::abs(low_mid - low_branch), std::abs(high_mid - high_branch),
                               std::abs(at_low - 4.0 / 15.0), std::abs(at_high - 4.0 / 15.0)});
  ok = ok && dev <= 1e-12;
  for (double theta : {0.7, kPi / 2.0, 2.0}) {
    const double c2s2 = std::pow(std::sin(theta) / 2.0, 2);
    ok = ok && std::abs(optimal_average_probability(theta, Priors(0.2)) - 0.8 * c2s2) <= 1e-12;
    ok = ok && std::abs(optimal_average_probability(theta, Priors(0.8)) - 0.8 * c2s2) <= 1e-12;
  }
  os << "branch dev " << dev << " (tol 1e-12)";

  int projective_bad = 0;
  int proper_bad = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double eta1 = i / 1000.0;
    const auto opt = analytic_subspace_optimum(Priors(eta1));
    const double product = opt.alpha * opt.beta;
    if (eta1 < 0.2 || eta1 > 0.8) {
      const Povm povm = total_povm(Priors(eta1));
      const bool idempotent = max_abs_diff(povm.identify_1() * povm.identify_1(), povm.identify_1()) < 1e-15 &&
                              max_abs_diff(povm.identify_2() * povm.identify_2(), povm.identify_2()) < 1e-15;
      if (product != 0.0 || !idempotent) ++projective_bad;
    } else if (eta1 > 0.2 && eta1 < 0.8) {
      if (!(product > 0.0) || opt.alpha >= 1.0 || opt.beta >= 1.0) ++proper_bad;
    }
  }
  ok = ok && projective_bad == 0 && proper_bad == 0;
  os << "; c1*c2 != 0 outside [1/5,4/5]: " << projective_bad << ", not a proper POVM inside: " << proper_bad;
  return {ok, os.str()};
}

// 4. Eigenvalue PSD test of E0 flips at beta_bound on a 1000-point alpha grid.
CriterionResult beta_bound_consistency() {
  int failures = 0;
  int checked_outside = 0;
  for (int i = 0; i < 1000; ++i) {
    const double alpha = i == 999 ? 1.0 : i / 999.0;
    const double bound = beta_bound(alpha);
    if (!is_psd(build_E0(alpha, std::max(0.0, bound - 1e-9)), kPsdTol)) ++failures;
    if (bound + 1e-6 <= 1.0) {
      ++checked_outside;
      if (is_psd(build_E0(alpha, bound + 1e-6), kPsdTol)) ++failures;
    }
  }
  std::ostringstream os;
  os << failures << " alpha nodes where the flip misses bound +- 1e-6 (" << checked_outside
     << " nodes with bound + 1e-6 <= 1)";
  return {failures == 0, os.str()};
}

// 5. Headline value 1/6 and the pure-state identity on 500 random draws.
CriterionResult headline_number() {
  const double headline = optimal_average_probability(kPi / 2.0, Priors(0.5));
  const double head_dev = std::abs(headline - 1.0 / 6.0);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2.0 * kPi), et(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double theta = th(rng), phi1 = ph(rng), phi2 = ph(rng);
    const Priors priors(et(rng));
    const double direct = pure_state_success_direct(total_povm(priors), theta, phi1, phi2, priors);
    worst = std::max(worst, std::abs(direct - pure_state_success(theta, phi1, phi2, priors)));
  }
  std::ostringstream os;
  os << "|P_opt(pi/2, 1/2) - 1/6| = " << head_dev << ", max identity dev over 500 draws = " << worst << " (tol 1e-12)";
  return {head_dev <= 1e-12 && worst <= 1e-12, os.str()};
}

// 6. Zero-error Monte Carlo at eta1 = 0.5, 0.1, 0.9.
CriterionResult zero_error_monte_carlo() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream os;
  const double expected[3] = {1.0 / 6.0, 0.225, 0.225};
  const double priors[3] = {0.5, 0.1, 0.9};
  for (int i = 0; i < 3; ++i) {
    SimConfig cfg;
    cfg.theta = kPi / 2.0;
    cfg.eta1 = priors[i];
    cfg.trials = 1'000'000;
    cfg.seed = 42;
    cfg.threads = worker_count();
    const auto r = run_simulation(cfg);
    const double sigma = std::sqrt(expected[i] * (1.0 - expected[i]) / static_cast<double>(cfg.trials));
    const bool within = std::abs(r.empirical_success - expected[i]) <= 3.0 * sigma;
    const bool predicted_ok = std::abs(r.predicted_success - expected[i]) <= 1e-15;
    ok = ok && r.counts.wrong == 0 && within && predicted_ok && r.counts.total() == cfg.trials;
    os << "eta1=" << priors[i] << ": n_wrong=" << r.counts.wrong << " emp=" << r.empirical_success
       << " z=" << r.z_score << "; ";
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 60.0;
  os << elapsed << " s (limit 60 s)";
  return {ok, os.str()};
}

// 7. Pi1, Pi2 do not depend on theta.
CriterionResult theta_independence() {
  double worst = 0.0;
  for (double eta1 : {0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9}) {
    const Priors priors(eta1);
    const Povm reference = assembled_povm(kPi / 4.0, priors);
    const Povm closed = total_povm(priors);
    worst = std::max({worst, max_abs_diff(reference.identify_1(), closed.identify_1()),
                      max_abs_diff(reference.identify_2(), closed.identify_2())});
    for (double theta : {kPi / 2.0, 3.0 * kPi / 4.0}) {
      const Povm other = assembled_povm(theta, priors);
      worst = std::max({worst, max_abs_diff(reference.identify_1(), other.identify_1()),
                        max_abs_diff(reference.identify_2(), other.identify_2())});
    }
  }
  std::ostringstream os;
  os << "max entrywise difference across theta in {pi/4, pi/2, 3pi/4} = " << worst << " (tol 1e-15)";
  return {worst <= 1e-15, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<CriterionResult()> run;
  };
  const Criterion criteria[] = {
      {"1 state-equivalence oracle", state_equivalence},
      {"2 optimum reproduction", optimum_reproduction},
      {"3 threshold behavior", threshold_behavior},
      {"4 beta-bound consistency", beta_bound_consistency},
      {"5 headline number and pure-state identity", headline_number},
      {"6 zero-error Monte Carlo", zero_error_monte_carlo},
      {"7 theta-independent measurement", theta_independence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    CriterionResult o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", c.name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
