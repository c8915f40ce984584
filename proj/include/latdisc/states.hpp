#pragma once

// Latitudinal qubit states, the three-register input states, and their
// phase-averaged density matrices.
//
// Register order is A, B, C with A the most significant qubit: the
// computational basis index of |q_A q_B q_C> is 4*q_A + 2*q_B + q_C.

#include "latdisc/matrix.hpp"

#include <numbers>
#include <vector>

namespace latdisc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr int kDefaultQuadratureNodes = 64;

/// Which of the two hypotheses the data register B carries.
enum class Hypothesis { first = 1, second = 2 };

/// Throws std::invalid_argument unless `which` is 1 or 2.
Hypothesis hypothesis_from_int(int which);

/// Throws std::domain_error unless theta is finite and in [0, pi].
void require_polar_angle(double theta);

/// cos(theta/2), sin(theta/2) with the poles exact (theta = pi gives c = 0).
struct HalfAngle {
  double c;
  double s;
};
HalfAngle half_angle(double theta);

struct LatitudinalParams {
  double theta;
  double phi;

  /// Validates theta and reduces phi into [0, 2 pi).
  static LatitudinalParams make(double theta, double phi);
};

class Priors {
 public:
  /// Throws std::domain_error unless eta1 is in [0, 1].
  explicit Priors(double eta1);

  double eta1() const noexcept { return eta1_; }
  double eta2() const noexcept { return eta2_; }

 private:
  double eta1_;
  double eta2_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (all at 1e-10).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

/// cos(theta/2)|0> + exp(-i phi) sin(theta/2)|1>.
Ket latitudinal_ket(const LatitudinalParams& p);

/// |psi1>|psi1>|psi2> for the first hypothesis, |psi1>|psi2>|psi2> for the second.
Ket total_input_ket(Hypothesis which, double theta, double phi1, double phi2);

DensityMatrix single_copy_average(double theta);
DensityMatrix pair_copy_average(double theta);

/// Closed-form phase average of |Psi_which><Psi_which| (six terms).
DensityMatrix average_state_closed(Hypothesis which, double theta);

/// Double phase average by the periodic trapezoidal rule with `nodes` points
/// per angle. The integrand has frequencies |k| <= 2, so any nodes >= 4 is
/// exact up to roundoff. Throws std::invalid_argument for nodes < 4.
DensityMatrix average_state_quadrature(Hypothesis which, double theta, int nodes = kDefaultQuadratureNodes);

struct SymmetricPair {
  Ket u;  ///< (|01> + |10>)/sqrt 2
  Ket v;  ///< (|01> - |10>)/sqrt 2, the singlet
};
SymmetricPair special_kets();

/// Spanning vectors of the invariant subspaces of the averaged states:
/// k = 0 -> {|000>, |111>}, k = 1 -> {|001>, |u>|0>, |100>, |0>|u>},
/// k = 2 -> {|110>, |u>|1>, |011>, |1>|u>}. Throws for other k.
std::vector<Ket> subspace_basis(int k);

/// Bit flip on all three registers, X (x) X (x) X. Maps the k = 1 subspace
/// onto the k = 2 subspace.
ComplexMatrix global_bit_flip();

}  // namespace latdisc
