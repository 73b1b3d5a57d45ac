#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qcorr/qstate.hpp"

namespace qcorr {

enum class MeasureKind {
  Concurrence,
  Negativity,
  CREN,  // convex-roof extended negativity
  NegativityOfAssistance,
  ConcurrenceOfAssistance,
  EntanglementOfFormation,
};

std::string_view to_string(MeasureKind kind) noexcept;
/// Accepts the enumerator names plus the short forms "noa" and "coa",
/// case-insensitively. Throws InvalidArgument.
MeasureKind measure_kind_from_string(std::string_view name);

enum class RoofDirection { Min, Max };

/// Search budget for the convex-roof optimizer.
struct OptimizerBudget {
  std::size_t restarts = 32;
  std::size_t ensemble_cap = 0;  // 0 selects 2 * rank
  std::size_t max_sweeps = 2000;
  double min_step = 1e-8;
  std::uint64_t seed = 0;
};

struct EnsembleDecomposition {
  std::vector<double> weights;
  std::vector<PureState> states;

  /// sum_i weights[i] |states[i]><states[i]|
  ComplexMatrix reconstruct() const;
};

struct RoofResult {
  double value = 0.0;
  EnsembleDecomposition ensemble;
};

/// Measure values below this are treated as exactly zero by the bound engine.
inline constexpr double kMeasureZero = 1e-12;

/// Returns 0 for v < kMeasureZero, v otherwise.
double clamp_measure(double v) noexcept;

/// sqrt(2 (1 - tr rho_A^2)) for the cut `part`, evaluated from the Schmidt
/// coefficients.
double concurrence_pure(const PureState& psi, const Partition& part);

/// Wootters lambdas of a two-qubit state: the square roots of the eigenvalues
/// of rho (Y x Y) rho* (Y x Y), descending. Computed as the singular values of
/// the symmetric matrix V^T (Y x Y) V over the subnormalized eigen-ensemble V
/// of rho, which avoids taking square roots of round-off sized eigenvalues.
std::array<double, 4> wootters_lambdas(const DensityMatrix& rho);

/// max(l1 - l2 - l3 - l4, 0). Throws WrongDimension unless rho is 2 x 2.
double concurrence_wootters(const DensityMatrix& rho);

/// ||rho^{T_A}||_tr - 1, clamped at zero.
double negativity(const DensityMatrix& rho, const Partition& part);

/// Pure-state negativity. Evaluates both 2 sum_{i<j} sqrt(mu_i mu_j) and
/// (tr sqrt(rho_A))^2 - 1, with sqrt(mu_i) taken as the Schmidt coefficients
/// (singular values of coefficient_matrix) rather than roots of the spectrum
/// of rho_A; throws InternalInconsistency if they differ by more than 1e-8.
double negativity_pure(const PureState& psi, const Partition& part);

/// Convex-roof extension of the pure-state concurrence or negativity.
///
/// Ensembles of up to L elements are parametrized as W = V U^T, where V holds
/// the subnormalized eigenvectors sqrt(mu_i) e_i of rho padded with zeros to
/// L columns and U is an L x L unitary; every L-element ensemble of rho has
/// this form. U is searched by coordinate-wise Givens rotations with a
/// shrinking step, from `budget.restarts` starting points (the eigen-ensemble,
/// then Haar-random U seeded from budget.seed and the restart index). Min
/// gives an upper bound on the roof, Max a lower bound on the roof of
/// assistance. Deterministic for a given budget.
RoofResult convex_roof(const DensityMatrix& rho, const Partition& part, MeasureKind kind, RoofDirection direction,
                       const OptimizerBudget& budget = {});

/// Dispatches to closed forms where they exist:
///   pure input: pure-state formula for every kind;
///   2 x 2 mixed: Wootters for Concurrence and CREN, eof_2q for EoF;
///   Negativity: trace-norm formula for any shape.
/// Remaining roof measures go to convex_roof. Throws Unsupported otherwise.
double measure(const PureState& psi, const Partition& part, MeasureKind kind);
double measure(const DensityMatrix& rho, const Partition& part, MeasureKind kind, const OptimizerBudget& budget = {});

/// Binary entropy in bits.
double binary_entropy(double x);

/// Two-qubit entanglement of formation h((1 + sqrt(1 - C^2)) / 2).
double eof_2q(const DensityMatrix& rho);

/// Returns the unit eigenvector when rho has rank one (second eigenvalue below
/// `rank_tol`), nothing otherwise.
std::optional<PureState> as_pure(const DensityMatrix& rho, double rank_tol = 1e-13);

}  // namespace qcorr
