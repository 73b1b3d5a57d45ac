#pragma once

// Dense complex matrix kernel. Matrices here are small (at most a few dozen
// rows), so everything is plain dense Eigen storage.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default absolute tolerance for Hermiticity and positivity checks.
inline constexpr double kDefaultTol = 1e-10;

/// max_ij |m_ij - conj(m_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i belongs to values[i]
};

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when
/// hermiticity_defect(m) > tol.
HermitianEigen herm_eig(const ComplexMatrix& m, double tol = kDefaultTol);

/// Eigenvalues of a Hermitian matrix, sorted descending.
std::vector<double> herm_eigvals(const ComplexMatrix& m, double tol = kDefaultTol);

/// All eigenvalues of a general square matrix (unsorted). Throws
/// ConvergenceFailure if the Schur iteration does not converge.
std::vector<Complex> general_eigvals(const ComplexMatrix& m);

std::vector<double> singular_values(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// (-tol, 0) are clamped to zero; anything below -tol raises NotPSD.
ComplexMatrix sqrt_psd(const ComplexMatrix& m, double tol = kDefaultTol);

/// Kronecker product: out(i*db + k, j*db + l) = a(i, j) * b(k, l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix pauli_y();

}  // namespace qcorr
