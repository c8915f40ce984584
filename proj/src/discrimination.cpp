#include "latdisc/discrimination.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace latdisc {

namespace {

void require_unit_interval(double x, const char* name) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

void require_subspace_index(int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("subspace index must be 1 or 2, got " + std::to_string(k));
}

Ket apply(const ComplexMatrix& m, const Ket& k) {
  std::vector<Complex> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * k[c];
  }
  return Ket(std::move(out));
}

// c1, c2 of the optimal measurement; identical to (alpha, beta) of the
// subspace optimum.
std::pair<double, double> optimal_coefficients(const Priors& priors) {
  const auto opt = analytic_subspace_optimum(priors);
  return {opt.alpha, opt.beta};
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::identify_1: return "identify_1";
    case Outcome::identify_2: return "identify_2";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::low: return "low";
    case Regime::middle: return "middle";
    case Regime::high: return "high";
  }
  return "unknown";
}

Povm::Povm(ComplexMatrix identify_1, ComplexMatrix identify_2, ComplexMatrix inconclusive)
    : elements_{std::move(identify_1), std::move(identify_2), std::move(inconclusive)} {
  const std::size_t n = elements_[0].rows();
  ComplexMatrix sum = ComplexMatrix::zeros(n, n);
  for (const auto& e : elements_) {
    if (!e.is_square() || e.rows() != n) throw std::invalid_argument("Povm: elements must be square of equal size");
    if (!is_psd(e, kPovmTol)) throw std::invalid_argument("Povm: element is not positive semidefinite");
    sum += e;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(n)) > kPovmTol) {
    throw std::invalid_argument("Povm: elements do not sum to the identity");
  }
}

Povm Povm::completed(ComplexMatrix identify_1, ComplexMatrix identify_2) {
  if (!identify_1.is_square()) throw std::invalid_argument("Povm: elements must be square");
  ComplexMatrix rest = ComplexMatrix::identity(identify_1.rows()) - identify_1 - identify_2;
  return Povm(std::move(identify_1), std::move(identify_2), std::move(rest));
}

double subspace_weight(int k, double theta) {
  require_subspace_index(k);
  const auto [c, s] = half_angle(theta);
  const double c2 = c * c;
  const double s2 = s * s;
  return k == 1 ? 3.0 * c2 * c2 * s2 : 3.0 * c2 * s2 * s2;
}

SubspaceProblem reduced_problem(int k, double theta) {
  require_subspace_index(k);
  const double weight = subspace_weight(k, theta);

  const auto [u, v] = special_kets();
  const Ket zero = Ket::basis(2, 0);
  const ComplexMatrix rho_a = (1.0 / 3.0) * projector(Ket::basis(8, 1)) + (2.0 / 3.0) * projector(kron(u, zero));
  const ComplexMatrix rho_b = (1.0 / 3.0) * projector(Ket::basis(8, 4)) + (2.0 / 3.0) * projector(kron(zero, u));
  const Ket kernel_a = kron(v, zero);
  const Ket kernel_b = kron(zero, v);

  if (k == 1) return {1, DensityMatrix(rho_a), DensityMatrix(rho_b), weight, kernel_a, kernel_b};

  const ComplexMatrix flip = global_bit_flip();
  return {2,
          DensityMatrix(flip * rho_a * flip),
          DensityMatrix(flip * rho_b * flip),
          weight,
          apply(flip, kernel_a),
          apply(flip, kernel_b)};
}

Povm subspace_povm(const SubspaceProblem& problem, double alpha, double beta) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  return Povm::completed(alpha * projector(problem.kernel_b), beta * projector(problem.kernel_a));
}

std::pair<double, double> unambiguity_defect(const Povm& povm, const DensityMatrix& rho_a,
                                             const DensityMatrix& rho_b) {
  if (rho_a.dim() != povm.dim() || rho_b.dim() != povm.dim()) {
    throw std::invalid_argument("unambiguity_defect: dimension mismatch");
  }
  return {trace_product(rho_a.matrix(), povm.identify_2()), trace_product(rho_b.matrix(), povm.identify_1())};
}

double success_probability(const Povm& povm, const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                           const Priors& priors) {
  const auto [defect_a, defect_b] = unambiguity_defect(povm, rho_a, rho_b);
  if (std::abs(defect_a) > kUnambiguityTol || std::abs(defect_b) > kUnambiguityTol) {
    throw std::domain_error("success_probability: measurement is not unambiguous");
  }
  return priors.eta1() * trace_product(rho_a.matrix(), povm.identify_1()) +
         priors.eta2() * trace_product(rho_b.matrix(), povm.identify_2());
}

ComplexMatrix build_E0(double alpha, double beta) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  const double off = alpha / (2.0 * std::sqrt(2.0));
  return ComplexMatrix{{1.0 - alpha / 2.0, off, off},
                       {off, 1.0 - alpha / 4.0, -alpha / 4.0},
                       {off, -alpha / 4.0, 1.0 - alpha / 4.0 - beta}};
}

double beta_bound(double alpha) {
  require_unit_interval(alpha, "alpha");
  return (4.0 - 4.0 * alpha) / (4.0 - 3.0 * alpha);
}

Regime classify_regime(const Priors& priors) {
  if (priors.eta1() < kLowPriorThreshold) return Regime::low;
  if (priors.eta1() > kHighPriorThreshold) return Regime::high;
  return Regime::middle;
}

OptimumReport analytic_subspace_optimum(const Priors& priors) {
  const double eta1 = priors.eta1();
  const double eta2 = priors.eta2();
  switch (classify_regime(priors)) {
    case Regime::low:
      return {Regime::low, 0.0, 1.0, eta2 / 3.0};
    case Regime::high:
      return {Regime::high, 1.0, 0.0, eta1 / 3.0};
    case Regime::middle:
      break;
  }
  const double alpha = (2.0 / 3.0) * (2.0 - std::sqrt(eta2 / eta1));
  const double beta = (2.0 / 3.0) * (2.0 - std::sqrt(eta1 / eta2));
  return {Regime::middle, alpha, beta, (4.0 / 9.0) * (1.0 - std::sqrt(eta1 * eta2))};
}

Povm total_povm(const Priors& priors) {
  const auto [c1, c2] = optimal_coefficients(priors);
  const ComplexMatrix singlet = projector(special_kets().v);
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  return Povm::completed(c1 * kron(id2, singlet), c2 * kron(singlet, id2));
}

Povm assembled_povm(double theta, const Priors& priors) {
  const auto opt = analytic_subspace_optimum(priors);
  const SubspaceProblem first = reduced_problem(1, theta);
  const SubspaceProblem second = reduced_problem(2, theta);
  ComplexMatrix pi1 = opt.alpha * projector(first.kernel_b) + opt.alpha * projector(second.kernel_b);
  ComplexMatrix pi2 = opt.beta * projector(first.kernel_a) + opt.beta * projector(second.kernel_a);
  return Povm::completed(std::move(pi1), std::move(pi2));
}

double optimal_average_probability(double theta, const Priors& priors) {
  const auto [c, s] = half_angle(theta);
  const double c2s2 = c * c * s * s;
  switch (classify_regime(priors)) {
    case Regime::low: return priors.eta2() * c2s2;
    case Regime::high: return priors.eta1() * c2s2;
    case Regime::middle: break;
  }
  return (4.0 / 3.0) * c2s2 * (1.0 - std::sqrt(priors.eta1() * priors.eta2()));
}

double overlap_sq(double theta, double dphi) {
  const auto [c, s] = half_angle(theta);
  return 1.0 - 2.0 * c * c * s * s * (1.0 - std::cos(dphi));
}

double pure_state_coefficient(const Priors& priors) {
  switch (classify_regime(priors)) {
    case Regime::low: return priors.eta2() / 2.0;
    case Regime::high: return priors.eta1() / 2.0;
    case Regime::middle: break;
  }
  return (2.0 / 3.0) * (1.0 - std::sqrt(priors.eta1() * priors.eta2()));
}

double pure_state_success(double theta, double phi1, double phi2, const Priors& priors) {
  return pure_state_coefficient(priors) * (1.0 - overlap_sq(theta, phi1 - phi2));
}

double pure_state_success_direct(const Povm& povm, double theta, double phi1, double phi2,
                                 const Priors& priors) {
  const Ket psi1 = total_input_ket(Hypothesis::first, theta, phi1, phi2);
  const Ket psi2 = total_input_ket(Hypothesis::second, theta, phi1, phi2);
  return priors.eta1() * expectation(povm.identify_1(), psi1) + priors.eta2() * expectation(povm.identify_2(), psi2);
}

}  // namespace latdisc
