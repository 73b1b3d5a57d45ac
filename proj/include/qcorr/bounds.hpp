#pragma once

// Scalar monogamy / polygamy bound engine. Everything here works on measure
// values, never on states, so the same evaluators serve any correlation
// measure whose base inequality holds.
//
// Conventions shared by all evaluators:
//   * inputs below kMeasureZero are clamped to exactly 0 first;
//   * 0^0 = 1, and 0^e with e < 0 raises ZeroMeasure;
//   * a condition a >= k b is tested with relative tolerance 1e-9, and when
//     both branches hold the tail-dominant one (listed first) is taken.

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string_view>

namespace qcorr {

struct BoundParams {
  double p = 1.0;
  double q = 1.0;
  double k = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double r = 2.0;
  double s = 2.0;
};

/// k >= 1, 1/2 <= p <= 1, r >= 2, 0 <= alpha <= r/2. Throws DomainError.
void validate_monogamy(const BoundParams& params);
/// k >= 1, 0 < q <= 1, s >= 2, beta <= 0.
void validate_concurrence_polygamy(const BoundParams& params);
/// k >= 1, 0 < q <= 1, 0 < s <= 1, beta >= s.
void validate_negativity_polygamy(const BoundParams& params);

/// Which hypothesis of a theorem matched. For a pair (c12, c13) the tail is
/// c13: TailDominant means k c12^r <= c13^r, PairDominant means
/// c12^r >= k c13^r. For chains the same test runs at every index against the
/// tail value, and Mixed marks a run of tail-dominant indices followed by
/// pair-dominant ones.
enum class Branch { TailDominant, PairDominant, Mixed };

std::string_view to_string(Branch branch) noexcept;

enum class PolygamyDomain { Concurrence, NegativityOfAssistance };

struct BoundReport {
  double lhs = std::numeric_limits<double>::quiet_NaN();  // joint^exponent, NaN when no joint value given
  double bound = 0.0;
  double slack = std::numeric_limits<double>::quiet_NaN();  // lhs - bound (monogamy) or bound - lhs (polygamy)
  Branch branch = Branch::TailDominant;
  std::size_t tail_dominant_count = 0;  // leading indices on the tail-dominant side
  std::optional<double> comparator_bound;
  BoundParams params;
};

/// base^exponent with 0^0 = 1; throws ZeroMeasure for 0 to a negative power.
double power0(double base, double exponent);

/// (1+t)^x - p^x - ((1+k)^x - p^x)/k^x t^x, for k >= 1, t >= k,
/// 1/2 <= p <= 1, 0 <= x <= 1/2 (DomainError otherwise).
double lemma1_gap(double t, double k, double p, double x);

/// q^x + ((1+k)^x - q^x)/k^x t^x - (1+t)^x, for 0 < q <= 1, k >= 1, t >= k and
/// x >= 1 or x <= 0.
double lemma2_gap(double t, double k, double q, double x);

/// Lower bound on C^alpha of A1|A2A3 from the pair concurrences:
///   TailDominant: p^{a/r} c12^a + l c13^a
///   PairDominant: p^{a/r} c13^a + l c12^a
/// with l = ((1+k)^{a/r} - p^{a/r}) / k^{a/r}. The comparator is the same
/// expression at p = 1. Throws NoBranch when neither hypothesis holds.
BoundReport mono_pair_bound(double c12, double c13, const BoundParams& params,
                            std::optional<double> joint = std::nullopt);

/// n-party chain. `pairs` = [C_{A1A2}, ..., C_{A1An}] (n-1 values), `tails` =
/// [C_{A1|A3..An}, ..., C_{A1An}] (n-2 values, classification only). Index i is
/// tail-dominant when k pairs[i]^r <= tails[i]^r and pair-dominant when
/// pairs[i]^r >= k tails[i]^r. Accepted patterns: all tail-dominant, all
/// pair-dominant, or tail-dominant for i < m-1 and pair-dominant afterwards;
/// others raise PatternUnsupported. Ties pick the first accepted pattern in
/// that order. Comparator: the same chain at p = 1.
BoundReport mono_chain_bound(std::span<const double> pairs, std::span<const double> tails, const BoundParams& params,
                             std::optional<double> joint = std::nullopt);

/// Upper bound on C^beta of A1|A2A3 (beta <= 0, s >= 2):
///   TailDominant: q^{b/s} c12^b + l c13^b, l = ((1+k)^{b/s} - q^{b/s}) / k^{b/s}
/// and symmetrically. Comparator: (c12^b + c13^b) / 2.
BoundReport poly_pair_bound_concurrence(double c12, double c13, const BoundParams& params,
                                        std::optional<double> joint = std::nullopt);

/// Upper bound on N_a^beta of A1|A2A3 (beta >= s, 0 < s <= 1). Both branches
/// use q^{b/s}.
BoundReport poly_pair_bound_noa(double n12, double n13, const BoundParams& params,
                                std::optional<double> joint = std::nullopt);

/// Polygamy counterpart of mono_chain_bound with q, beta, s in place of p,
/// alpha, r. `domain` picks the parameter domain to validate.
BoundReport poly_chain_bound(std::span<const double> pairs, std::span<const double> tails, const BoundParams& params,
                             PolygamyDomain domain, std::optional<double> joint = std::nullopt);

/// Pair monogamy bound at p = 1.
double comparator_ref15(double c12, double c13, double k, double alpha, double r);

/// (c12^beta + c13^beta) / 2.
double comparator_ref7(double c12, double c13, double beta);

}  // namespace qcorr
