#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " requires a non-empty square matrix");
  }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen herm_eig(const ComplexMatrix& m, double tol) {
  require_square(m, "herm_eig");
  const double defect = hermiticity_defect(m);
  if (defect > tol) {
    throw Error(ErrorCode::NotHermitian, "Hermiticity defect " + std::to_string(defect) + " exceeds tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = sym.rows();
  HermitianEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

std::vector<double> herm_eigvals(const ComplexMatrix& m, double tol) {
  require_square(m, "herm_eigvals");
  const double defect = hermiticity_defect(m);
  if (defect > tol) {
    throw Error(ErrorCode::NotHermitian, "Hermiticity defect " + std::to_string(defect) + " exceeds tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + sym.rows());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

std::vector<Complex> general_eigvals(const ComplexMatrix& m) {
  require_square(m, "general_eigvals");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "complex Schur iteration did not converge");
  }
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows()};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

double trace_norm(const ComplexMatrix& m) {
  double total = 0.0;
  for (double s : singular_values(m)) total += s;
  return total;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m, double tol) {
  const HermitianEigen eig = herm_eig(m, tol);
  const Eigen::Index n = m.rows();
  Eigen::VectorXd roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = eig.values[static_cast<std::size_t>(i)];
    if (v < -tol) {
      throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(v) + " below -tolerance");
    }
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix pauli_y() {
  ComplexMatrix y(2, 2);
  y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return y;
}

}  // namespace qcorr
