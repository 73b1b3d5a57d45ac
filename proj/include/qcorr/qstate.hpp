#pragma once

// Multipartite pure and mixed states on a big-endian tensor layout: factor 0
// is the slowest-varying index, so the basis ket |a0 a1 ... a_{n-1}> sits at
// position sum_i a_i * prod_{j>i} d_j. Factor indices are zero-based.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

using Dims = std::vector<std::size_t>;

/// Normalization tolerance enforced by PureState.
inline constexpr double kNormTol = 1e-12;

class PureState {
 public:
  /// Throws InvalidArgument on bad dims and NotNormalized if the norm is off by
  /// more than kNormTol.
  PureState(ComplexVector amplitudes, Dims factor_dims);

  /// Rescales `amplitudes` to unit norm before validating.
  static PureState normalized(ComplexVector amplitudes, Dims factor_dims);

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  const Dims& factor_dims() const noexcept { return dims_; }
  std::size_t num_factors() const noexcept { return dims_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  ComplexVector amplitudes_;
  Dims dims_;
};

/// Hermitian, unit-trace, positive semidefinite operator on a tensor product.
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and spectrum against `tol`. Throws
  /// NotHermitian, NotPSD or InvalidArgument.
  DensityMatrix(ComplexMatrix matrix, Dims factor_dims, double tol = kDefaultTol);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& factor_dims() const noexcept { return dims_; }
  std::size_t num_factors() const noexcept { return dims_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

/// Bipartition of the factors into side A and its complement.
class Partition {
 public:
  /// `side_a` must be a nonempty proper subset of [0, num_factors); throws
  /// InvalidPartition otherwise. Duplicates are rejected.
  Partition(std::vector<std::size_t> side_a, std::size_t num_factors);

  /// {0} | rest, the A1 | A2...An cut used throughout.
  static Partition first_factor(std::size_t num_factors) { return Partition({0}, num_factors); }

  const std::vector<std::size_t>& side_a() const noexcept { return side_a_; }
  std::vector<std::size_t> side_b() const;
  bool in_side_a(std::size_t factor) const noexcept;
  std::size_t num_factors() const noexcept { return num_factors_; }

 private:
  std::vector<std::size_t> side_a_;  // sorted
  std::size_t num_factors_;
};

DensityMatrix density_from_pure(const PureState& psi);

/// Traces out the listed factors; survivors keep their relative order.
/// Throws InvalidPartition if `traced_out` is empty, covers every factor, or
/// names a factor twice.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> traced_out);

/// Reduced operator on side A of a pure state, computed from the amplitude
/// reshaping M M^dagger without forming the full projector.
ComplexMatrix reduced_density(const PureState& psi, const Partition& part);

/// Amplitudes arranged as a (dim A) x (dim B) matrix; its singular values are
/// the Schmidt coefficients of the cut.
ComplexMatrix coefficient_matrix(const PureState& psi, const Partition& part);

/// Transposes every factor on side A.
ComplexMatrix partial_transpose(const DensityMatrix& rho, const Partition& part);

/// Three-qubit canonical state with amplitudes
///   l0 on (A1,A2,A3) = (0,0,0), l1 e^{i theta} on (1,0,0), l2 on (1,1,0),
///   l3 on (1,0,1), l4 on (1,1,1),
/// so that C(A1A2) = 2 l0 l2 and C(A1A3) = 2 l0 l3. Requires l_i >= 0,
/// sum l_i^2 = 1 within 1e-10 (NotNormalized) and 0 <= theta <= pi
/// (ThetaOutOfRange).
PureState gsd_state(const std::array<double, 5>& lambdas, double theta = 0.0);

/// Haar-random pure state: normalized iid standard complex Gaussians drawn
/// from Rng(seed).
PureState random_pure(const Dims& factor_dims, std::uint64_t seed);

std::size_t total_dim(const Dims& dims);

}  // namespace qcorr
