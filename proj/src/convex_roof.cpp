#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

namespace {

constexpr double kRankTol = 1e-13;

// Weighted pure-state measure p * E(w / |w|) of a subnormalized vector w with
// p = |w|^2, written so that it stays finite (and zero) as w -> 0.
class WeightedTerm {
 public:
  WeightedTerm(const Dims& dims, const Partition& part, MeasureKind kind) : kind_(kind) {
    two_qubit_ = dims.size() == 2 && dims[0] == 2 && dims[1] == 2;
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    row_.resize(total);
    col_.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx, a = 0, b = 0, sa = 1, sb = 1;
      for (std::size_t f = dims.size(); f-- > 0;) {
        const std::size_t digit = rem % dims[f];
        rem /= dims[f];
        if (part.in_side_a(f)) {
          a += digit * sa;
          sa *= dims[f];
        } else {
          b += digit * sb;
          sb *= dims[f];
        }
      }
      row_[idx] = static_cast<Eigen::Index>(a);
      col_[idx] = static_cast<Eigen::Index>(b);
    }
    dim_a_ = 1;
    dim_b_ = 1;
    for (std::size_t f = 0; f < dims.size(); ++f) (part.in_side_a(f) ? dim_a_ : dim_b_) *= static_cast<Eigen::Index>(dims[f]);
    qubit_side_ = dim_a_ == 2 || dim_b_ == 2;
    if (qubit_side_ && dim_a_ != 2) std::swap(row_, col_);
  }

  double operator()(const ComplexVector& w) const {
    if (two_qubit_) {
      // Pure two-qubit concurrence and negativity both equal 2|w00 w11 - w01 w10|.
      return 2.0 * std::abs(w(0) * w(3) - w(1) * w(2));
    }
    if (qubit_side_) {
      // With a qubit on one side both measures reduce to 2 sqrt(det G) for the
      // 2 x 2 Gram matrix G of the two rows of the coefficient matrix.
      double g00 = 0.0, g11 = 0.0;
      Complex g01 = 0.0;
      const Eigen::Index other = dim_a_ == 2 ? dim_b_ : dim_a_;
      buffer_.resize(2 * other);
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        buffer_[row_[static_cast<std::size_t>(i)] * other + col_[static_cast<std::size_t>(i)]] = w(i);
      }
      for (Eigen::Index j = 0; j < other; ++j) {
        const Complex x = buffer_[j], y = buffer_[other + j];
        g00 += std::norm(x);
        g11 += std::norm(y);
        g01 += x * std::conj(y);
      }
      return 2.0 * std::sqrt(std::max(0.0, g00 * g11 - std::norm(g01)));
    }
    ComplexMatrix m(dim_a_, dim_b_);
    for (Eigen::Index i = 0; i < w.size(); ++i) m(row_[static_cast<std::size_t>(i)], col_[static_cast<std::size_t>(i)]) = w(i);
    const ComplexMatrix gram = dim_a_ <= dim_b_ ? ComplexMatrix(m * m.adjoint()) : ComplexMatrix(m.adjoint() * m);
    const double weight = w.squaredNorm();
    if (kind_ == MeasureKind::Concurrence) {
      return std::sqrt(std::max(0.0, 2.0 * (weight * weight - gram.squaredNorm())));
    }
    double sum = 0.0, sum_sq = 0.0;
    for (double mu : gram_spectrum(gram)) {
      const double root = std::sqrt(std::max(mu, 0.0));
      sum += root;
      sum_sq += root * root;
    }
    return std::max(0.0, sum * sum - sum_sq);
  }

 private:
  static std::vector<double> gram_spectrum(const ComplexMatrix& g) {
    if (g.rows() == 2) {
      const double a = g(0, 0).real(), d = g(1, 1).real();
      const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(g(0, 1)));
      return {0.5 * (a + d) + half_gap, 0.5 * (a + d) - half_gap};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(g, Eigen::EigenvaluesOnly);
    return {solver.eigenvalues().data(), solver.eigenvalues().data() + g.rows()};
  }

  MeasureKind kind_;
  bool two_qubit_ = false;
  bool qubit_side_ = false;
  mutable std::vector<Complex> buffer_;
  std::vector<Eigen::Index> row_, col_;
  Eigen::Index dim_a_ = 1, dim_b_ = 1;
};

struct RestartResult {
  ComplexMatrix ensemble;  // columns are subnormalized members
  double objective = 0.0;  // signed: minimized
};

RestartResult search_from(ComplexMatrix ensemble, const WeightedTerm& term, double sign, const OptimizerBudget& budget) {
  const Eigen::Index size = ensemble.cols();
  std::vector<double> terms(static_cast<std::size_t>(size));
  for (Eigen::Index j = 0; j < size; ++j) terms[static_cast<std::size_t>(j)] = sign * term(ensemble.col(j));

  const std::array<std::pair<double, double>, 4> directions{{
      {1.0, 0.0}, {-1.0, 0.0}, {1.0, 0.5 * std::numbers::pi}, {-1.0, 0.5 * std::numbers::pi}}};
  constexpr int kMaxRepeats = 64;
  constexpr double kMinGain = 1e-13;
  // A sweep gaining less than this counts as stalled and halves the step.
  constexpr double kSweepGain = 1e-11;

  double step = 0.25 * std::numbers::pi;
  std::size_t sweeps = 0;
  ComplexVector va, vb;
  while (step >= budget.min_step && sweeps < budget.max_sweeps) {
    double gain = 0.0;
    for (Eigen::Index a = 0; a < size; ++a) {
      for (Eigen::Index b = a + 1; b < size; ++b) {
        auto& ta = terms[static_cast<std::size_t>(a)];
        auto& tb = terms[static_cast<std::size_t>(b)];
        for (const auto& [dir, phase] : directions) {
          const double c = std::cos(dir * step), s = std::sin(dir * step);
          const Complex e = std::polar(1.0, phase);
          for (int rep = 0; rep < kMaxRepeats; ++rep) {
            va = c * ensemble.col(a) + s * e * ensemble.col(b);
            vb = -s * std::conj(e) * ensemble.col(a) + c * ensemble.col(b);
            const double na = sign * term(va), nb = sign * term(vb);
            if (na + nb - ta - tb > -kMinGain) break;
            ensemble.col(a) = va;
            ensemble.col(b) = vb;
            gain += ta + tb - na - nb;
            ta = na;
            tb = nb;
          }
        }
      }
    }
    if (gain < kSweepGain) step *= 0.5;
    ++sweeps;
  }
  RestartResult out{std::move(ensemble), 0.0};
  for (double t : terms) out.objective += t;
  return out;
}

}  // namespace

RoofResult convex_roof(const DensityMatrix& rho, const Partition& part, MeasureKind kind, RoofDirection direction,
                       const OptimizerBudget& budget) {
  if (kind != MeasureKind::Concurrence && kind != MeasureKind::Negativity) {
    throw Error(ErrorCode::Unsupported, "convex roof is defined for Concurrence and Negativity only");
  }
  if (part.num_factors() != rho.num_factors()) {
    throw Error(ErrorCode::InvalidPartition, "partition does not match the number of factors");
  }
  if (budget.restarts == 0) throw Error(ErrorCode::OptimizerFailure, "budget allows no restarts");

  const HermitianEigen eig = herm_eig(rho.matrix());
  Eigen::Index rank = 0;
  while (rank < static_cast<Eigen::Index>(eig.values.size()) && eig.values[static_cast<std::size_t>(rank)] > kRankTol) {
    ++rank;
  }
  if (rank == 0) throw Error(ErrorCode::OptimizerFailure, "state has no support above the rank tolerance");

  if (rank == 1) {
    PureState psi = PureState::normalized(eig.vectors.col(0), rho.factor_dims());
    const double value = kind == MeasureKind::Concurrence ? concurrence_pure(psi, part) : negativity_pure(psi, part);
    RoofResult out{value, {}};
    out.ensemble.weights.push_back(1.0);
    out.ensemble.states.push_back(std::move(psi));
    return out;
  }

  const Eigen::Index cap =
      budget.ensemble_cap == 0 ? 2 * rank : static_cast<Eigen::Index>(budget.ensemble_cap);
  if (cap < rank) throw Error(ErrorCode::OptimizerFailure, "ensemble cap is below the rank of the state");

  ComplexMatrix eigen_ensemble = ComplexMatrix::Zero(rho.matrix().rows(), cap);
  for (Eigen::Index i = 0; i < rank; ++i) {
    eigen_ensemble.col(i) = std::sqrt(eig.values[static_cast<std::size_t>(i)]) * eig.vectors.col(i);
  }

  const WeightedTerm term(rho.factor_dims(), part, kind);
  const double sign = direction == RoofDirection::Min ? 1.0 : -1.0;

  RestartResult best{ComplexMatrix(), std::numeric_limits<double>::infinity()};
  for (std::size_t restart = 0; restart < budget.restarts; ++restart) {
    ComplexMatrix start = eigen_ensemble;
    if (restart > 0) {
      Rng rng(derive_seed(budget.seed, restart));
      start = eigen_ensemble * random_unitary(cap, rng).transpose();
    }
    RestartResult candidate = search_from(std::move(start), term, sign, budget);
    if (candidate.objective < best.objective) best = std::move(candidate);
  }
  if (!std::isfinite(best.objective)) throw Error(ErrorCode::OptimizerFailure, "no finite decomposition found");

  RoofResult out;
  for (Eigen::Index j = 0; j < best.ensemble.cols(); ++j) {
    const double weight = best.ensemble.col(j).squaredNorm();
    if (weight <= 1e-15) continue;
    PureState member = PureState::normalized(best.ensemble.col(j), rho.factor_dims());
    out.value += weight * (kind == MeasureKind::Concurrence ? concurrence_pure(member, part) : negativity_pure(member, part));
    out.ensemble.weights.push_back(weight);
    out.ensemble.states.push_back(std::move(member));
  }
  return out;
}

}  // namespace qcorr
