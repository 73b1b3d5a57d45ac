#include "qcorr/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorr/error.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

namespace {

void validate_dims(const Dims& dims, std::size_t expected_size) {
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "factor_dims must be nonempty");
  for (std::size_t d : dims) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "every factor dimension must be at least 2");
  }
  if (total_dim(dims) != expected_size) {
    throw Error(ErrorCode::InvalidArgument, "product of factor_dims (" + std::to_string(total_dim(dims)) +
                                                ") does not match size " + std::to_string(expected_size));
  }
}

// Splits every full basis index into (index over `group`, index over the
// remaining factors), both big-endian in original factor order.
struct SplitIndex {
  std::vector<std::size_t> group;
  std::vector<std::size_t> rest;
  std::size_t group_dim = 1;
  std::size_t rest_dim = 1;
};

SplitIndex split_index(const Dims& dims, const std::vector<bool>& in_group) {
  SplitIndex out;
  const std::size_t total = total_dim(dims);
  out.group.assign(total, 0);
  out.rest.assign(total, 0);
  for (std::size_t f = 0; f < dims.size(); ++f) (in_group[f] ? out.group_dim : out.rest_dim) *= dims[f];
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    std::size_t g = 0, r = 0, gstride = 1, rstride = 1;
    for (std::size_t f = dims.size(); f-- > 0;) {
      const std::size_t digit = rem % dims[f];
      rem /= dims[f];
      if (in_group[f]) {
        g += digit * gstride;
        gstride *= dims[f];
      } else {
        r += digit * rstride;
        rstride *= dims[f];
      }
    }
    out.group[idx] = g;
    out.rest[idx] = r;
  }
  return out;
}

std::vector<bool> validated_mask(std::span<const std::size_t> factors, std::size_t num_factors) {
  std::vector<bool> mask(num_factors, false);
  for (std::size_t f : factors) {
    if (f >= num_factors) {
      throw Error(ErrorCode::InvalidPartition, "factor index " + std::to_string(f) + " out of range");
    }
    if (mask[f]) throw Error(ErrorCode::InvalidPartition, "factor index " + std::to_string(f) + " repeated");
    mask[f] = true;
  }
  return mask;
}

}  // namespace

std::size_t total_dim(const Dims& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

PureState::PureState(ComplexVector amplitudes, Dims factor_dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(factor_dims)) {
  validate_dims(dims_, static_cast<std::size_t>(amplitudes_.size()));
  const double norm2 = amplitudes_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized, "squared norm " + std::to_string(norm2) + " differs from 1");
  }
}

PureState PureState::normalized(ComplexVector amplitudes, Dims factor_dims) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::NotNormalized, "zero vector cannot be normalized");
  amplitudes /= norm;
  return PureState(std::move(amplitudes), std::move(factor_dims));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims factor_dims, double tol)
    : matrix_(std::move(matrix)), dims_(std::move(factor_dims)) {
  if (matrix_.rows() != matrix_.cols()) throw Error(ErrorCode::InvalidArgument, "density matrix must be square");
  validate_dims(dims_, static_cast<std::size_t>(matrix_.rows()));
  const double trace_err = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (trace_err > tol) throw Error(ErrorCode::InvalidArgument, "trace differs from 1 by " + std::to_string(trace_err));
  const std::vector<double> spectrum = herm_eigvals(matrix_, tol);
  if (spectrum.back() < -tol) {
    throw Error(ErrorCode::NotPSD, "smallest eigenvalue " + std::to_string(spectrum.back()));
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
}

Partition::Partition(std::vector<std::size_t> side_a, std::size_t num_factors)
    : side_a_(std::move(side_a)), num_factors_(num_factors) {
  validated_mask(side_a_, num_factors_);
  if (side_a_.empty() || side_a_.size() >= num_factors_) {
    throw Error(ErrorCode::InvalidPartition, "side A must be a nonempty proper subset of the factors");
  }
  std::sort(side_a_.begin(), side_a_.end());
}

std::vector<std::size_t> Partition::side_b() const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < num_factors_; ++f) {
    if (!in_side_a(f)) out.push_back(f);
  }
  return out;
}

bool Partition::in_side_a(std::size_t factor) const noexcept {
  return std::binary_search(side_a_.begin(), side_a_.end(), factor);
}

DensityMatrix density_from_pure(const PureState& psi) {
  ComplexMatrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(std::move(rho), psi.factor_dims());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> traced_out) {
  const Dims& dims = rho.factor_dims();
  const std::vector<bool> traced = validated_mask(traced_out, dims.size());
  if (traced_out.empty() || traced_out.size() >= dims.size()) {
    throw Error(ErrorCode::InvalidPartition, "traced factors must be a nonempty proper subset");
  }
  std::vector<bool> kept(dims.size());
  Dims kept_dims;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    kept[f] = !traced[f];
    if (kept[f]) kept_dims.push_back(dims[f]);
  }
  const SplitIndex split = split_index(dims, kept);
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(split.group_dim),
                                          static_cast<Eigen::Index>(split.group_dim));
  const std::size_t n = rho.dim();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (split.rest[a] != split.rest[b]) continue;
      out(static_cast<Eigen::Index>(split.group[a]), static_cast<Eigen::Index>(split.group[b])) +=
          m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return DensityMatrix(std::move(out), std::move(kept_dims));
}

ComplexMatrix coefficient_matrix(const PureState& psi, const Partition& part) {
  const Dims& dims = psi.factor_dims();
  if (part.num_factors() != dims.size()) {
    throw Error(ErrorCode::InvalidPartition, "partition does not match the number of factors");
  }
  std::vector<bool> side_a(dims.size());
  for (std::size_t f = 0; f < dims.size(); ++f) side_a[f] = part.in_side_a(f);
  const SplitIndex split = split_index(dims, side_a);
  ComplexMatrix reshaped(static_cast<Eigen::Index>(split.group_dim), static_cast<Eigen::Index>(split.rest_dim));
  for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
    reshaped(static_cast<Eigen::Index>(split.group[idx]), static_cast<Eigen::Index>(split.rest[idx])) =
        psi.amplitudes()(static_cast<Eigen::Index>(idx));
  }
  return reshaped;
}

ComplexMatrix reduced_density(const PureState& psi, const Partition& part) {
  const ComplexMatrix m = coefficient_matrix(psi, part);
  return m * m.adjoint();
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const Partition& part) {
  const Dims& dims = rho.factor_dims();
  if (part.num_factors() != dims.size()) {
    throw Error(ErrorCode::InvalidPartition, "partition does not match the number of factors");
  }
  std::vector<bool> side_a(dims.size());
  for (std::size_t f = 0; f < dims.size(); ++f) side_a[f] = part.in_side_a(f);
  const SplitIndex split = split_index(dims, side_a);

  // Full index from (A index, B index).
  std::vector<std::size_t> compose(split.group_dim * split.rest_dim);
  for (std::size_t idx = 0; idx < rho.dim(); ++idx) compose[split.group[idx] * split.rest_dim + split.rest[idx]] = idx;

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < rho.dim(); ++a) {
    for (std::size_t b = 0; b < rho.dim(); ++b) {
      // <a_A a_B| rho^{T_A} |b_A b_B> = <b_A a_B| rho |a_A b_B>
      const std::size_t src_row = compose[split.group[b] * split.rest_dim + split.rest[a]];
      const std::size_t src_col = compose[split.group[a] * split.rest_dim + split.rest[b]];
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          m(static_cast<Eigen::Index>(src_row), static_cast<Eigen::Index>(src_col));
    }
  }
  return out;
}

PureState gsd_state(const std::array<double, 5>& lambdas, double theta) {
  double norm2 = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw Error(ErrorCode::InvalidArgument, "canonical amplitudes must be nonnegative");
    norm2 += l * l;
  }
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "sum of squared amplitudes is " + std::to_string(norm2));
  }
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw Error(ErrorCode::ThetaOutOfRange, "theta must lie in [0, pi]");
  }
  // Index = 4*a1 + 2*a2 + a3.
  ComplexVector amps = ComplexVector::Zero(8);
  amps(0) = lambdas[0];
  amps(4) = std::polar(lambdas[1], theta);
  amps(6) = lambdas[2];
  amps(5) = lambdas[3];
  amps(7) = lambdas[4];
  return PureState::normalized(std::move(amps), {2, 2, 2});
}

PureState random_pure(const Dims& factor_dims, std::uint64_t seed) {
  const std::size_t n = total_dim(factor_dims);
  validate_dims(factor_dims, n);
  Rng rng(seed);
  ComplexVector amps(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = rng.complex_normal();
  return PureState::normalized(std::move(amps), factor_dims);
}

}  // namespace qcorr
