#pragma once

// Born-rule Monte Carlo of the optimal discriminator.
//
// Trials are cut into fixed-size blocks; block b draws from its own
// mt19937_64 stream seeded with splitmix64(seed, b). Workers pick up whole
// blocks, so the tallies do not depend on the number of threads.

#include "latdisc/discrimination.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <variant>

namespace latdisc {

inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-block-streams";
inline constexpr std::uint64_t kTrialsPerBlock = 1u << 16;

struct UniformPhases {};
struct FixedPhases {
  double phi1;
  double phi2;
};
using PhaseMode = std::variant<UniformPhases, FixedPhases>;

struct SimConfig {
  double theta = kPi / 2.0;
  double eta1 = 0.5;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  PhaseMode phase_mode = UniformPhases{};
  unsigned threads = 1;
};

/// Throws std::invalid_argument / std::domain_error for trials == 0 or
/// theta, eta1, fixed phases out of range.
void validate(const SimConfig& cfg);

struct OutcomeCounts {
  std::uint64_t correct_1 = 0;       ///< identify_1 on a first-hypothesis input
  std::uint64_t correct_2 = 0;       ///< identify_2 on a second-hypothesis input
  std::uint64_t wrong = 0;           ///< identify_k on the other hypothesis
  std::uint64_t inconclusive = 0;
  std::uint64_t total() const { return correct_1 + correct_2 + wrong + inconclusive; }

  OutcomeCounts& operator+=(const OutcomeCounts& o);
  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

struct SimReport {
  OutcomeCounts counts;
  std::uint64_t trials = 0;
  double empirical_success = 0.0;
  double predicted_success = 0.0;
  double z_score = 0.0;  ///< NaN when the predicted variance is zero and the estimate differs
  std::string_view rng = kRngName;
};

/// Block stream seed: splitmix64 of the seed mixed with the block index.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
double uniform01(std::mt19937_64& rng);

/// Outcome probabilities <state|Pi_k|state>, clipped at zero. Throws
/// std::runtime_error if any is below -1e-12 or the sum is off by > 1e-10.
std::array<double, 3> outcome_probabilities(const Povm& povm, const Ket& state);

/// Inverse-CDF draw over (identify_1, identify_2, inconclusive) using one
/// uniform variate.
Outcome sample_outcome(const Povm& povm, const Ket& state, std::mt19937_64& rng);

/// Analytic success probability the simulation should reproduce.
double predicted_success(const SimConfig& cfg);

SimReport run_simulation(const SimConfig& cfg);

}  // namespace latdisc
