#include "qcorr/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

constexpr double kRankTol = 1e-13;

bool is_two_qubit(const Dims& dims) { return dims.size() == 2 && dims[0] == 2 && dims[1] == 2; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double entanglement_entropy(const PureState& psi, const Partition& part) {
  double h = 0.0;
  for (double mu : herm_eigvals(reduced_density(psi, part))) {
    if (mu > 0.0) h -= mu * std::log2(mu);
  }
  return std::max(h, 0.0);
}

}  // namespace

std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::Concurrence: return "Concurrence";
    case MeasureKind::Negativity: return "Negativity";
    case MeasureKind::CREN: return "CREN";
    case MeasureKind::NegativityOfAssistance: return "NegativityOfAssistance";
    case MeasureKind::ConcurrenceOfAssistance: return "ConcurrenceOfAssistance";
    case MeasureKind::EntanglementOfFormation: return "EntanglementOfFormation";
  }
  return "Unknown";
}

MeasureKind measure_kind_from_string(std::string_view name) {
  const std::string key = lowercase(name);
  if (key == "concurrence") return MeasureKind::Concurrence;
  if (key == "negativity") return MeasureKind::Negativity;
  if (key == "cren") return MeasureKind::CREN;
  if (key == "negativityofassistance" || key == "noa") return MeasureKind::NegativityOfAssistance;
  if (key == "concurrenceofassistance" || key == "coa") return MeasureKind::ConcurrenceOfAssistance;
  if (key == "entanglementofformation" || key == "eof") return MeasureKind::EntanglementOfFormation;
  throw Error(ErrorCode::InvalidArgument, "unknown measure kind '" + std::string(name) + "'");
}

ComplexMatrix EnsembleDecomposition::reconstruct() const {
  if (states.empty()) return {};
  const auto n = static_cast<Eigen::Index>(states.front().dim());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < states.size(); ++i) {
    out += weights[i] * states[i].amplitudes() * states[i].amplitudes().adjoint();
  }
  return out;
}

double clamp_measure(double v) noexcept { return v < kMeasureZero ? 0.0 : v; }

double concurrence_pure(const PureState& psi, const Partition& part) {
  // 2 (1 - tr rho_A^2) = 4 sum_{i<j} s_i^2 s_j^2 over the Schmidt coefficients.
  const std::vector<double> sigma = singular_values(coefficient_matrix(psi, part));
  double cross = 0.0, partial = 0.0;
  for (double v : sigma) {
    cross += partial * v * v;
    partial += v * v;
  }
  return 2.0 * std::sqrt(cross);
}

std::array<double, 4> wootters_lambdas(const DensityMatrix& rho) {
  if (!is_two_qubit(rho.factor_dims())) {
    throw Error(ErrorCode::WrongDimension, "Wootters concurrence needs a 2 x 2 state");
  }
  const HermitianEigen eig = herm_eig(rho.matrix());
  Eigen::Index rank = 0;
  while (rank < 4 && eig.values[static_cast<std::size_t>(rank)] > kRankTol) ++rank;
  ComplexMatrix ensemble(4, rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    ensemble.col(i) = std::sqrt(eig.values[static_cast<std::size_t>(i)]) * eig.vectors.col(i);
  }
  const ComplexMatrix spin_flip = kron(pauli_y(), pauli_y());
  const ComplexMatrix tau = ensemble.transpose() * spin_flip * ensemble;
  std::array<double, 4> lambdas{0.0, 0.0, 0.0, 0.0};
  const std::vector<double> sv = singular_values(tau);
  std::copy(sv.begin(), sv.end(), lambdas.begin());
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return lambdas;
}

double concurrence_wootters(const DensityMatrix& rho) {
  const std::array<double, 4> l = wootters_lambdas(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double negativity(const DensityMatrix& rho, const Partition& part) {
  return std::max(0.0, trace_norm(partial_transpose(rho, part)) - 1.0);
}

double negativity_pure(const PureState& psi, const Partition& part) {
  const std::vector<double> sigma = singular_values(coefficient_matrix(psi, part));

  double pairwise = 0.0;
  double root_trace = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    root_trace += sigma[i];
    for (std::size_t j = i + 1; j < sigma.size(); ++j) pairwise += sigma[i] * sigma[j];
  }
  pairwise *= 2.0;

  const double squared_form = root_trace * root_trace - 1.0;
  if (std::abs(pairwise - squared_form) > 1e-8) {
    throw Error(ErrorCode::InternalInconsistency,
                "pure-state negativity forms disagree: " + std::to_string(pairwise) + " vs " + std::to_string(squared_form));
  }
  return std::max(0.0, pairwise);
}

std::optional<PureState> as_pure(const DensityMatrix& rho, double rank_tol) {
  const HermitianEigen eig = herm_eig(rho.matrix());
  if (eig.values.size() > 1 && eig.values[1] > rank_tol) return std::nullopt;
  return PureState::normalized(eig.vectors.col(0), rho.factor_dims());
}

double measure(const PureState& psi, const Partition& part, MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Concurrence:
    case MeasureKind::ConcurrenceOfAssistance:
      return concurrence_pure(psi, part);
    case MeasureKind::Negativity:
    case MeasureKind::CREN:
    case MeasureKind::NegativityOfAssistance:
      return negativity_pure(psi, part);
    case MeasureKind::EntanglementOfFormation:
      return entanglement_entropy(psi, part);
  }
  throw Error(ErrorCode::Unsupported, "unknown measure kind");
}

double measure(const DensityMatrix& rho, const Partition& part, MeasureKind kind, const OptimizerBudget& budget) {
  if (part.num_factors() != rho.num_factors()) {
    throw Error(ErrorCode::InvalidPartition, "partition does not match the number of factors");
  }
  if (kind == MeasureKind::Negativity) return negativity(rho, part);
  if (const auto psi = as_pure(rho)) return measure(*psi, part, kind);

  const bool two_qubit = is_two_qubit(rho.factor_dims());
  switch (kind) {
    case MeasureKind::Concurrence:
      return two_qubit ? concurrence_wootters(rho)
                       : convex_roof(rho, part, MeasureKind::Concurrence, RoofDirection::Min, budget).value;
    case MeasureKind::CREN:
      // Pure two-qubit negativity equals concurrence, so the roofs coincide.
      return two_qubit ? concurrence_wootters(rho)
                       : convex_roof(rho, part, MeasureKind::Negativity, RoofDirection::Min, budget).value;
    case MeasureKind::NegativityOfAssistance:
      return convex_roof(rho, part, MeasureKind::Negativity, RoofDirection::Max, budget).value;
    case MeasureKind::ConcurrenceOfAssistance:
      return convex_roof(rho, part, MeasureKind::Concurrence, RoofDirection::Max, budget).value;
    case MeasureKind::EntanglementOfFormation:
      if (two_qubit) return eof_2q(rho);
      throw Error(ErrorCode::Unsupported, "entanglement of formation is only available for 2 x 2 mixed states");
    case MeasureKind::Negativity:
      break;
  }
  throw Error(ErrorCode::Unsupported, "measure kind not supported for this state");
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof_2q(const DensityMatrix& rho) {
  const double c = std::min(1.0, concurrence_wootters(rho));
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

}  // namespace qcorr
