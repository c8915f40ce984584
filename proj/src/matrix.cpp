#include "latdisc/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace latdisc {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()) + ")");
  }
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    }
  }
  return out;
}

double squared_norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
  }
  for (const auto& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix is not square");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) acc += (*this)(i, i);
  return acc;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator*: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex lhs = a(r, k);
      if (lhs == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += lhs * b(k, c);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

double max_abs(const ComplexMatrix& m) {
  double worst = 0.0;
  for (const auto& z : m.entries()) worst = std::max(worst, std::abs(z));
  return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermiticity_defect: matrix is not square");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = r; c < m.cols(); ++c) {
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    }
  }
  return worst;
}

Ket::Ket(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw std::invalid_argument("Ket: empty amplitude vector");
  const double n = norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kKetNormTol) {
    throw std::invalid_argument("Ket: amplitudes not normalized (norm " + std::to_string(n) + ")");
  }
}

Ket Ket::normalized(std::vector<Complex> amplitudes) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("Ket::normalized: zero or non-finite vector");
  for (auto& z : amplitudes) z /= n;
  return Ket(std::move(amplitudes));
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("Ket::basis: index outside dimension");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return Ket(std::move(amps));
}

double Ket::norm() const { return std::sqrt(squared_norm(amps_)); }

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

Complex inner(const Ket& a, const Ket& b) { return inner(a.amplitudes(), b.amplitudes()); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex scale = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = scale * b(br, bc);
        }
      }
    }
  }
  return out;
}

Ket kron(const Ket& a, const Ket& b) {
  std::vector<Complex> amps;
  amps.reserve(a.dim() * b.dim());
  for (const auto& x : a.amplitudes()) {
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  }
  return Ket(std::move(amps));
}

ComplexMatrix projector(const Ket& k) {
  if (std::abs(k.norm() - 1.0) > kKetNormTol) throw std::invalid_argument("projector: ket is not normalized");
  const std::size_t n = k.dim();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = k[r] * std::conj(k[c]);
  }
  return out;
}

double expectation(const ComplexMatrix& m, const Ket& k) {
  if (!m.is_square() || m.rows() != k.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex row = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) row += m(r, c) * k[c];
    acc += std::conj(k[r]) * row;
  }
  return acc.real();
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("trace_product: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(k, r);
  }
  return acc.real();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_psd(const ComplexMatrix& m, double tol) { return hermitian_eigenvalues(m).front() >= -tol; }

std::size_t span_rank(std::span<const Ket> vectors, double tol) {
  if (vectors.empty()) return 0;
  const auto dim = static_cast<Eigen::Index>(vectors.front().dim());
  Eigen::MatrixXcd stack(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (static_cast<Eigen::Index>(vectors[j].dim()) != dim) throw std::invalid_argument("span_rank: mixed dimensions");
    for (Eigen::Index i = 0; i < dim; ++i) stack(i, static_cast<Eigen::Index>(j)) = vectors[j][static_cast<std::size_t>(i)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace latdisc
