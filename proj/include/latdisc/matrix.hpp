#pragma once

// Small dense complex linear algebra for qubit registers of up to three
// qubits. Everything here operates on values; nothing is shared.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace latdisc {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kKetNormTol = 1e-9;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix diagonal(std::initializer_list<double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Largest absolute entrywise difference; throws on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);

/// Unit-norm complex vector. Construction rejects vectors whose norm
/// deviates from one by more than kKetNormTol.
class Ket {
 public:
  explicit Ket(std::vector<Complex> amplitudes);

  /// Rescales `amplitudes` to unit norm. Throws on a zero vector.
  static Ket normalized(std::vector<Complex> amplitudes);
  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

 private:
  std::vector<Complex> amps_;
};

/// <a|b>, antilinear in the first argument.
Complex inner(const Ket& a, const Ket& b);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
Ket kron(const Ket& a, const Ket& b);

/// |k><k|. Rejects kets whose norm is off by more than kKetNormTol.
ComplexMatrix projector(const Ket& k);

/// Real part of <k|m|k>; m must match the ket dimension.
double expectation(const ComplexMatrix& m, const Ket& k);

/// Real part of Tr(a b) without forming the product.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// All eigenvalues of a Hermitian matrix, ascending. Rejects non-square
/// input and input with hermiticity_defect above kHermitianTol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// min eigenvalue >= -tol.
bool is_psd(const ComplexMatrix& m, double tol = kPsdTol);

/// Numerical rank of the span of the given vectors (singular values above
/// tol relative to the largest).
std::size_t span_rank(std::span<const Ket> vectors, double tol = 1e-10);

}  // namespace latdisc
