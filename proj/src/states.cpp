#include "latdisc/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace latdisc {

namespace {

constexpr double kDensityTol = 1e-10;

Ket ket3(int qa, int qb, int qc) { return Ket::basis(8, static_cast<std::size_t>(4 * qa + 2 * qb + qc)); }

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  return x;
}

}  // namespace

Hypothesis hypothesis_from_int(int which) {
  if (which == 1) return Hypothesis::first;
  if (which == 2) return Hypothesis::second;
  throw std::invalid_argument("hypothesis must be 1 or 2, got " + std::to_string(which));
}

void require_polar_angle(double theta) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) {
    throw std::domain_error("theta must lie in [0, pi], got " + std::to_string(theta));
  }
}

HalfAngle half_angle(double theta) {
  require_polar_angle(theta);
  if (theta == kPi) return {0.0, 1.0};
  return {std::cos(theta / 2.0), std::sin(theta / 2.0)};
}

LatitudinalParams LatitudinalParams::make(double theta, double phi) {
  require_polar_angle(theta);
  if (!std::isfinite(phi)) throw std::domain_error("phi must be finite");
  double reduced = std::fmod(phi, 2.0 * kPi);
  if (reduced < 0.0) reduced += 2.0 * kPi;
  if (reduced >= 2.0 * kPi) reduced = 0.0;
  return {theta, reduced};
}

Priors::Priors(double eta1) : eta1_(eta1), eta2_(1.0 - eta1) {
  if (!std::isfinite(eta1) || eta1 < 0.0 || eta1 > 1.0) {
    throw std::domain_error("eta1 must lie in [0, 1], got " + std::to_string(eta1));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (!mat_.is_square()) throw std::invalid_argument("DensityMatrix: matrix is not square");
  if (hermiticity_defect(mat_) > kDensityTol) throw std::invalid_argument("DensityMatrix: not Hermitian");
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > kDensityTol) throw std::invalid_argument("DensityMatrix: trace is not 1");
  if (!is_psd(mat_, kDensityTol)) throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

Ket latitudinal_ket(const LatitudinalParams& p) {
  const auto [c, s] = half_angle(p.theta);
  return Ket({Complex(c, 0.0), std::polar(s, -p.phi)});
}

Ket total_input_ket(Hypothesis which, double theta, double phi1, double phi2) {
  const Ket psi1 = latitudinal_ket(LatitudinalParams::make(theta, phi1));
  const Ket psi2 = latitudinal_ket(LatitudinalParams::make(theta, phi2));
  if (which == Hypothesis::first) return kron(kron(psi1, psi1), psi2);
  return kron(kron(psi1, psi2), psi2);
}

DensityMatrix single_copy_average(double theta) {
  const auto [c, s] = half_angle(theta);
  return DensityMatrix(ComplexMatrix::diagonal({c * c, s * s}));
}

DensityMatrix pair_copy_average(double theta) {
  const auto [c, s] = half_angle(theta);
  const double c2 = c * c;
  const double s2 = s * s;
  const auto [u, v] = special_kets();
  ComplexMatrix m = c2 * c2 * projector(Ket::basis(4, 0));
  m += s2 * s2 * projector(Ket::basis(4, 3));
  m += 2.0 * c2 * s2 * projector(u);
  return DensityMatrix(std::move(m));
}

DensityMatrix average_state_closed(Hypothesis which, double theta) {
  const auto [c, s] = half_angle(theta);
  const double c2 = c * c;
  const double s2 = s * s;
  const double c6 = c2 * c2 * c2;
  const double s6 = s2 * s2 * s2;
  const double c4s2 = c2 * c2 * s2;
  const double c2s4 = c2 * s2 * s2;

  const ComplexMatrix uu = projector(special_kets().u);
  const ComplexMatrix p0 = ComplexMatrix::diagonal({1.0, 0.0});
  const ComplexMatrix p1 = ComplexMatrix::diagonal({0.0, 1.0});

  ComplexMatrix m = c6 * projector(ket3(0, 0, 0)) + s6 * projector(ket3(1, 1, 1));
  if (which == Hypothesis::first) {
    m += c4s2 * projector(ket3(0, 0, 1));
    m += c2s4 * projector(ket3(1, 1, 0));
    m += 2.0 * c4s2 * kron(uu, p0);
    m += 2.0 * c2s4 * kron(uu, p1);
  } else {
    m += c4s2 * projector(ket3(1, 0, 0));
    m += c2s4 * projector(ket3(0, 1, 1));
    m += 2.0 * c4s2 * kron(p0, uu);
    m += 2.0 * c2s4 * kron(p1, uu);
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix average_state_quadrature(Hypothesis which, double theta, int nodes) {
  require_polar_angle(theta);
  if (nodes < 4) throw std::invalid_argument("average_state_quadrature: nodes must be >= 4");
  const auto n = static_cast<std::size_t>(nodes);
  const double step = 2.0 * kPi / static_cast<double>(nodes);

  ComplexMatrix acc(8, 8);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Ket psi = total_input_ket(which, theta, step * static_cast<double>(i), step * static_cast<double>(j));
      for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) acc(r, c) += psi[r] * std::conj(psi[c]);
      }
    }
  }
  acc *= 1.0 / static_cast<double>(n * n);
  return DensityMatrix(std::move(acc));
}

SymmetricPair special_kets() {
  const double h = 1.0 / std::sqrt(2.0);
  return {Ket({0.0, h, h, 0.0}), Ket({0.0, h, -h, 0.0})};
}

std::vector<Ket> subspace_basis(int k) {
  const Ket zero = Ket::basis(2, 0);
  const Ket one = Ket::basis(2, 1);
  const Ket u = special_kets().u;
  switch (k) {
    case 0:
      return {ket3(0, 0, 0), ket3(1, 1, 1)};
    case 1:
      return {ket3(0, 0, 1), kron(u, zero), ket3(1, 0, 0), kron(zero, u)};
    case 2:
      return {ket3(1, 1, 0), kron(u, one), ket3(0, 1, 1), kron(one, u)};
    default:
      throw std::invalid_argument("subspace index must be 0, 1 or 2, got " + std::to_string(k));
  }
}

ComplexMatrix global_bit_flip() { return kron(kron(pauli_x(), pauli_x()), pauli_x()); }

}  // namespace latdisc
