#pragma once

// Unambiguous discrimination between the two phase-averaged input states:
// the reduced problems on the invariant subspaces, the rank-one kernel POVM
// family, its feasibility bound, the piecewise optimum and the assembled
// measurement on all three qubits.

#include "latdisc/matrix.hpp"
#include "latdisc/states.hpp"

#include <array>
#include <string_view>
#include <utility>

namespace latdisc {

inline constexpr double kPovmTol = 1e-10;
inline constexpr double kUnambiguityTol = 1e-12;

/// Prior thresholds separating the projective and the proper-POVM optima.
inline constexpr double kLowPriorThreshold = 1.0 / 5.0;
inline constexpr double kHighPriorThreshold = 4.0 / 5.0;

enum class Outcome { identify_1 = 0, identify_2 = 1, inconclusive = 2 };
inline constexpr std::array<Outcome, 3> kOutcomes{Outcome::identify_1, Outcome::identify_2, Outcome::inconclusive};

std::string_view to_string(Outcome o);

/// Three-outcome measurement. Construction checks that every element is
/// positive semidefinite and that the elements sum to the identity, both
/// within kPovmTol.
class Povm {
 public:
  Povm(ComplexMatrix identify_1, ComplexMatrix identify_2, ComplexMatrix inconclusive);

  /// Completes {identify_1, identify_2} with inconclusive = I - identify_1 - identify_2.
  static Povm completed(ComplexMatrix identify_1, ComplexMatrix identify_2);

  const ComplexMatrix& element(Outcome o) const { return elements_[static_cast<std::size_t>(o)]; }
  const ComplexMatrix& identify_1() const { return elements_[0]; }
  const ComplexMatrix& identify_2() const { return elements_[1]; }
  const ComplexMatrix& inconclusive() const { return elements_[2]; }
  std::size_t dim() const noexcept { return elements_[0].rows(); }

 private:
  std::array<ComplexMatrix, 3> elements_;
};

/// Discrimination problem restricted to subspace k (1 or 2): the two
/// normalized reduced states, the probability that the averaged state
/// falls into the subspace, and the kernel directions that carry the
/// identify operators (support of E_2 lies in ker rho_a, of E_1 in ker rho_b).
struct SubspaceProblem {
  int k;
  DensityMatrix rho_a;
  DensityMatrix rho_b;
  double weight;
  Ket kernel_a;  ///< spans ker(rho_a) inside the subspace: |v>|0> for k = 1
  Ket kernel_b;  ///< spans ker(rho_b) inside the subspace: |0>|v> for k = 1
};

/// Builds the k = 1 problem directly; k = 2 is the image of k = 1 under the
/// global bit flip. Throws std::invalid_argument for other k.
SubspaceProblem reduced_problem(int k, double theta);

/// Occurrence weight of subspace k: 3 c^4 s^2 for k = 1, 3 c^2 s^4 for k = 2.
double subspace_weight(int k, double theta);

/// Kernel-supported measurement E_1 = alpha |kernel_b><kernel_b|,
/// E_2 = beta |kernel_a><kernel_a|, completed to the full 8-dim identity.
/// Throws std::domain_error when (alpha, beta) is outside [0,1]^2 and
/// std::invalid_argument when the completion is not positive.
Povm subspace_povm(const SubspaceProblem& problem, double alpha, double beta);

/// (Tr(rho_a E_2), Tr(rho_b E_1)); both vanish for an unambiguous measurement.
std::pair<double, double> unambiguity_defect(const Povm& povm, const DensityMatrix& rho_a,
                                             const DensityMatrix& rho_b);

/// eta1 Tr(rho_a E_1) + eta2 Tr(rho_b E_2). Throws std::domain_error when
/// either unambiguity defect exceeds kUnambiguityTol.
double success_probability(const Povm& povm, const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                           const Priors& priors);

/// Inconclusive element of the k = 1 problem in the orthonormal basis
/// {|001>, |u>|0>, |v>|0>}. Throws std::domain_error outside [0,1]^2.
ComplexMatrix build_E0(double alpha, double beta);

/// Largest beta that keeps build_E0(alpha, beta) positive: (4 - 4a)/(4 - 3a).
double beta_bound(double alpha);

enum class Regime { low, middle, high };
std::string_view to_string(Regime r);
Regime classify_regime(const Priors& priors);

struct OptimumReport {
  Regime regime;
  double alpha;
  double beta;
  double probability;
};

/// Optimal (alpha, beta) and success probability of one subspace problem.
/// The middle regime owns the closed interval [1/5, 4/5].
OptimumReport analytic_subspace_optimum(const Priors& priors);

/// Optimal three-qubit measurement: identify_1 = c1 I (x) |v><v| (singlet on
/// B,C), identify_2 = c2 |v><v| (x) I (singlet on A,B).
Povm total_povm(const Priors& priors);

/// The same measurement assembled from the optimal kernel POVMs of the two
/// subspace problems at latitude theta (identify_k = E_k + E'_k).
Povm assembled_povm(double theta, const Priors& priors);

/// p1 P1opt + p2 P2opt for the averaged states.
double optimal_average_probability(double theta, const Priors& priors);

/// |<psi1|psi2>|^2 for two latitudinal states whose phases differ by dphi.
double overlap_sq(double theta, double dphi);

/// Factor multiplying (1 - |<psi1|psi2>|^2) in the pure-state success
/// probability: (2/3)(1 - sqrt(eta1 eta2)), eta2/2 or eta1/2 by regime.
double pure_state_coefficient(const Priors& priors);

/// Closed-form success probability of the optimal measurement on the pure
/// inputs with phases phi1, phi2.
double pure_state_success(double theta, double phi1, double phi2, const Priors& priors);

/// eta1 <Psi1|Pi1|Psi1> + eta2 <Psi2|Pi2|Psi2> evaluated on the kets.
double pure_state_success_direct(const Povm& povm, double theta, double phi1, double phi2,
                                 const Priors& priors);

}  // namespace latdisc
