#include "latdisc/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace latdisc {

namespace {

constexpr double kNegativeProbabilityTol = 1e-12;
constexpr double kProbabilitySumTol = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

OutcomeCounts run_block(const Povm& povm, const SimConfig& cfg, std::uint64_t block, std::uint64_t trials) {
  std::mt19937_64 rng(stream_seed(cfg.seed, block));
  const Priors priors(cfg.eta1);
  OutcomeCounts counts;
  for (std::uint64_t t = 0; t < trials; ++t) {
    double phi1 = 0.0;
    double phi2 = 0.0;
    if (const auto* fixed = std::get_if<FixedPhases>(&cfg.phase_mode)) {
      phi1 = fixed->phi1;
      phi2 = fixed->phi2;
    } else {
      phi1 = 2.0 * kPi * uniform01(rng);
      phi2 = 2.0 * kPi * uniform01(rng);
    }
    const bool first = uniform01(rng) < priors.eta1();
    const Hypothesis truth = first ? Hypothesis::first : Hypothesis::second;
    const Outcome outcome = sample_outcome(povm, total_input_ket(truth, cfg.theta, phi1, phi2), rng);
    switch (outcome) {
      case Outcome::inconclusive:
        ++counts.inconclusive;
        break;
      case Outcome::identify_1:
        ++(first ? counts.correct_1 : counts.wrong);
        break;
      case Outcome::identify_2:
        ++(first ? counts.wrong : counts.correct_2);
        break;
    }
  }
  return counts;
}

}  // namespace

OutcomeCounts& OutcomeCounts::operator+=(const OutcomeCounts& o) {
  correct_1 += o.correct_1;
  correct_2 += o.correct_2;
  wrong += o.wrong;
  inconclusive += o.inconclusive;
  return *this;
}

void validate(const SimConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be >= 1");
  require_polar_angle(cfg.theta);
  (void)Priors(cfg.eta1);
  if (const auto* fixed = std::get_if<FixedPhases>(&cfg.phase_mode)) {
    if (!std::isfinite(fixed->phi1) || !std::isfinite(fixed->phi2)) {
      throw std::domain_error("fixed phases must be finite");
    }
  }
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::array<double, 3> outcome_probabilities(const Povm& povm, const Ket& state) {
  std::array<double, 3> q{};
  double sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    q[k] = expectation(povm.element(kOutcomes[k]), state);
    if (q[k] < -kNegativeProbabilityTol) {
      throw std::runtime_error("negative outcome probability " + std::to_string(q[k]) + " for " +
                               std::string(to_string(kOutcomes[k])));
    }
    q[k] = std::max(q[k], 0.0);
    sum += q[k];
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTol) {
    throw std::runtime_error("outcome probabilities sum to " + std::to_string(sum));
  }
  for (auto& x : q) x /= sum;
  return q;
}

Outcome sample_outcome(const Povm& povm, const Ket& state, std::mt19937_64& rng) {
  const auto q = outcome_probabilities(povm, state);
  const double u = uniform01(rng);
  if (u < q[0]) return Outcome::identify_1;
  if (u < q[0] + q[1]) return Outcome::identify_2;
  return Outcome::inconclusive;
}

double predicted_success(const SimConfig& cfg) {
  const Priors priors(cfg.eta1);
  if (const auto* fixed = std::get_if<FixedPhases>(&cfg.phase_mode)) {
    return pure_state_success(cfg.theta, fixed->phi1, fixed->phi2, priors);
  }
  return optimal_average_probability(cfg.theta, priors);
}

SimReport run_simulation(const SimConfig& cfg) {
  validate(cfg);
  const Povm povm = total_povm(Priors(cfg.eta1));

  const std::uint64_t blocks = (cfg.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<OutcomeCounts> per_block(blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      const std::uint64_t begin = b * kTrialsPerBlock;
      const std::uint64_t count = std::min(kTrialsPerBlock, cfg.trials - begin);
      per_block[b] = run_block(povm, cfg, b, count);
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp<std::uint64_t>(cfg.threads == 0 ? 1 : cfg.threads, 1, blocks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  SimReport report;
  for (const auto& c : per_block) report.counts += c;
  report.trials = cfg.trials;
  const double n = static_cast<double>(cfg.trials);
  report.empirical_success = static_cast<double>(report.counts.correct_1 + report.counts.correct_2) / n;
  report.predicted_success = predicted_success(cfg);
  const double p = report.predicted_success;
  const double sigma = std::sqrt(p * (1.0 - p) / n);
  const double diff = report.empirical_success - p;
  if (sigma > 0.0) {
    report.z_score = diff / sigma;
  } else {
    report.z_score = diff == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace latdisc
