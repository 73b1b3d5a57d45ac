#include "qcorr/linalg.hpp"

#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace qcorr;

TEST_CASE("herm_eigvals matches characteristic polynomial roots") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const ComplexMatrix m = random_hermitian(n, seed);
    const auto got = herm_eigvals(m);
    const auto want = oracle::hermitian_eigenvalues(m);
    REQUIRE(got.size() == want.size());
    CHECK(std::is_sorted(got.rbegin(), got.rend()));
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
  }
}

TEST_CASE("herm_eig vectors diagonalize the input") {
  const ComplexMatrix m = random_hermitian(5, 99);
  const HermitianEigen eig = herm_eig(m);
  const ComplexMatrix& v = eig.vectors;
  CHECK((v.adjoint() * v - ComplexMatrix::Identity(5, 5)).norm() < 1e-12);
  Eigen::VectorXd vals(5);
  for (int i = 0; i < 5; ++i) vals[i] = eig.values[static_cast<std::size_t>(i)];
  CHECK((v * vals.cast<Complex>().asDiagonal() * v.adjoint() - m).norm() < 1e-12);
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK(hermiticity_defect(m) == doctest::Approx(1.0));
  CHECK_CODE(herm_eig(m), ErrorCode::NotHermitian);
  CHECK_CODE(herm_eigvals(m), ErrorCode::NotHermitian);
  CHECK_CODE(herm_eigvals(ComplexMatrix::Zero(2, 3)), ErrorCode::InvalidArgument);
}

TEST_CASE("general_eigvals of a triangular matrix are its diagonal") {
  ComplexMatrix m(3, 3);
  m << Complex(1, 1), 2.0, 3.0, 0.0, Complex(-2, 0.5), 4.0, 0.0, 0.0, 0.25;
  auto vals = general_eigvals(m);
  std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(vals[0] - Complex(-2, 0.5)) < 1e-12);
  CHECK(std::abs(vals[1] - Complex(0.25, 0)) < 1e-12);
  CHECK(std::abs(vals[2] - Complex(1, 1)) < 1e-12);
}

TEST_CASE("general_eigvals agrees with the oracle on a random matrix") {
  const ComplexMatrix m = random_hermitian(4, 5) * random_hermitian(4, 6);
  auto got = general_eigvals(m);
  const auto want = oracle::eigenvalues(m);
  std::sort(got.begin(), got.end(), [](Complex a, Complex b) { return a.real() > b.real(); });
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-8);
}

TEST_CASE("singular values and trace norm") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  d(2, 2) = Complex(0.0, 0.5);
  CHECK(trace_norm(d) == doctest::Approx(3.5));
  const ComplexMatrix m = random_hermitian(4, 8) * random_hermitian(4, 9);
  const auto sv = singular_values(m);
  const auto sq = oracle::hermitian_eigenvalues(m.adjoint() * m);
  for (std::size_t i = 0; i < sv.size(); ++i) CHECK(sv[i] * sv[i] == doctest::Approx(sq[i]).epsilon(1e-9));
}

TEST_CASE("sqrt_psd squares back and rejects negative spectra") {
  const ComplexMatrix rho = random_density(4, 3);
  const ComplexMatrix root = sqrt_psd(rho);
  CHECK((root * root - rho).norm() < 1e-12);
  CHECK(hermiticity_defect(root) < 1e-14);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(1, 1) = -1.0;
  CHECK_CODE(sqrt_psd(bad), ErrorCode::NotPSD);
  bad(1, 1) = -1e-12;
  CHECK(sqrt_psd(bad)(1, 1) == Complex(0.0, 0.0));
}

TEST_CASE("kron and pauli_y") {
  const ComplexMatrix y = pauli_y();
  CHECK(y(0, 1) == Complex(0, -1));
  CHECK(y(1, 0) == Complex(0, 1));
  ComplexMatrix a(2, 2), b(2, 3);
  a << 1.0, 2.0, 3.0, 4.0;
  b << 0.0, 1.0, Complex(0, 1), 2.0, 3.0, 5.0;
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c) CHECK(k(i * 2 + r, j * 3 + c) == a(i, j) * b(r, c));
  CHECK((kron(y, y) * kron(y, y) - ComplexMatrix::Identity(4, 4)).norm() < 1e-15);
}
