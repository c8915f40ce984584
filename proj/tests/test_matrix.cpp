#include "latdisc/discrimination.hpp"
#include "latdisc/matrix.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace latdisc;

namespace {

ComplexMatrix from_real3(const oracle::Real3& a) {
  ComplexMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i][j];
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("kron") {
  SUBCASE("identity") { CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4)); }

  SUBCASE("basis projector lands on |01>") {
    const auto m = kron(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0}));
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) CHECK(m(r, c) == Complex(r == 1 && c == 1 ? 1.0 : 0.0));
  }

  SUBCASE("diag(c^2, s^2) squared at theta = pi/3") {
    const double c2 = std::pow(std::cos(kPi / 6.0), 2);
    const double s2 = std::pow(std::sin(kPi / 6.0), 2);
    const auto d = ComplexMatrix::diagonal({c2, s2});
    const auto m = kron(d, d);
    const double expected[4] = {9.0 / 16, 3.0 / 16, 3.0 / 16, 1.0 / 16};
    for (std::size_t i = 0; i < 4; ++i) CHECK(m(i, i).real() == doctest::Approx(expected[i]).epsilon(1e-15));
    CHECK(max_abs(m - ComplexMatrix::diagonal({9.0 / 16, 3.0 / 16, 3.0 / 16, 1.0 / 16})) < 1e-15);
  }

  SUBCASE("shape and block structure") {
    const ComplexMatrix a{{1.0, 2.0}, {3.0, Complex(0, 1)}};
    const ComplexMatrix b{{1.0, -1.0, 2.0}};
    const auto m = kron(a, b);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 6);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 3; ++k) CHECK(m(i, j * 3 + k) == a(i, j) * b(0, k));
  }

  SUBCASE("associative for qubit factors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_hermitian(2, rng);
      const auto b = random_hermitian(2, rng);
      const auto c = random_hermitian(2, rng);
      CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
    }
  }
}

TEST_CASE("projector") {
  CHECK(projector(Ket::basis(2, 0)) == ComplexMatrix::diagonal({1.0, 0.0}));

  const double h = 1.0 / std::sqrt(2.0);
  const auto p = projector(Ket({0.0, h, h, 0.0}));
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const bool inner_block = (r == 1 || r == 2) && (c == 1 || c == 2);
      CHECK(std::abs(p(r, c) - Complex(inner_block ? 0.5 : 0.0)) < 1e-15);
    }
  }

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pk = projector(Ket(oracle::random_unit(8, rng)));
    CHECK(std::abs(pk.trace() - 1.0) <= 1e-12);
    CHECK(max_abs_diff(pk * pk, pk) <= 1e-12);
    CHECK(hermiticity_defect(pk) == 0.0);
  }
}

TEST_CASE("ket normalization is enforced") {
  CHECK_THROWS_AS(Ket({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Ket({1.0 + 1e-8, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(Ket({1.0 + 1e-10, 0.0}));
  CHECK_THROWS_AS(Ket::normalized({0.0, 0.0}), std::invalid_argument);
  CHECK(Ket::normalized({3.0, 4.0})[1].real() == doctest::Approx(0.8));
}

TEST_CASE("hermitian_eigenvalues") {
  SUBCASE("diagonal, ascending") {
    const auto ev = hermitian_eigenvalues(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
    REQUIRE(ev.size() == 3);
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(2.0));
    CHECK(ev[2] == doctest::Approx(3.0));
  }

  SUBCASE("pauli x") {
    const auto ev = hermitian_eigenvalues(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));
  }

  SUBCASE("E0 on the bound is singular") {
    const auto e0 = oracle::e0_matrix(2.0 / 3.0, 2.0 / 3.0);
    CHECK(std::abs(oracle::det3(e0)) < 1e-12);
    CHECK(std::abs(oracle::symmetric3_eigenvalues(e0)[0]) < 1e-10);
    CHECK(std::abs(hermitian_eigenvalues(build_E0(2.0 / 3.0, 2.0 / 3.0))[0]) < 1e-10);
  }

  SUBCASE("agrees with the characteristic polynomial on E0") {
    for (double a = 0.0; a <= 1.0; a += 0.05) {
      for (double b = 0.0; b <= 1.0; b += 0.05) {
        const auto expected = oracle::symmetric3_eigenvalues(oracle::e0_matrix(a, b));
        const auto got = hermitian_eigenvalues(from_real3(oracle::e0_matrix(a, b)));
        // The trigonometric cubic loses about half the digits at a repeated root (beta = 0).
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-8);
        const auto m = oracle::e0_matrix(a, b);
        double tr2 = 0.0;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) tr2 += m[r][c] * m[c][r];
        CHECK(std::abs(got[0] + got[1] + got[2] - (m[0][0] + m[1][1] + m[2][2])) < 1e-12);
        CHECK(std::abs(got[0] * got[0] + got[1] * got[1] + got[2] * got[2] - tr2) < 1e-12);
        CHECK(std::abs(got[0] * got[1] * got[2] - oracle::det3(m)) < 1e-12);
      }
    }
  }

  SUBCASE("sum equals trace") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 2u, 3u, 4u, 8u}) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_hermitian(n, rng);
        double sum = 0.0;
        for (double e : hermitian_eigenvalues(m)) sum += e;
        CHECK(std::abs(sum - m.trace().real()) <= 1e-9 * std::max(1.0, max_abs(m)));
      }
    }
  }

  SUBCASE("rejects bad input") {
    CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), std::invalid_argument);
    CHECK_NOTHROW(hermitian_eigenvalues(ComplexMatrix{{0.0, 1.0}, {1.0 + 1e-10, 0.0}}));
  }
}

TEST_CASE("is_psd") {
  CHECK(is_psd(ComplexMatrix::diagonal({0.0, 1.0}), 1e-10));
  CHECK_FALSE(is_psd(ComplexMatrix::diagonal({-1e-3, 1.0}), 1e-10));
  CHECK_FALSE(is_psd(build_E0(1.0, 0.5), 1e-10));
  CHECK(oracle::symmetric3_eigenvalues(oracle::e0_matrix(1.0, 0.5))[0] < -0.1);
  CHECK_THROWS_AS(is_psd(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("span_rank") {
  const std::vector<Ket> vs{Ket::basis(4, 0), Ket::basis(4, 1), Ket::normalized({1.0, 1.0, 0.0, 0.0})};
  CHECK(span_rank(vs) == 2);
  CHECK(span_rank(std::span(vs).first(1)) == 1);
}

TEST_CASE("matrix arithmetic guards shapes") {
  CHECK_THROWS_AS(ComplexMatrix::identity(2) + ComplexMatrix::identity(3), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(NAN, 0.0)}), std::invalid_argument);
  const ComplexMatrix a{{1.0, Complex(0, 2)}, {3.0, 4.0}};
  CHECK(a.adjoint()(0, 1) == Complex(3.0));
  CHECK(a.adjoint()(1, 0) == Complex(0, -2));
  CHECK(trace_product(a, ComplexMatrix::identity(2)) == doctest::Approx(5.0));
}
