#pragma once

// Verification sweeps, figure data and example reproduction.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/bounds.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

/// Inclusive arithmetic grid min, min + step, ..., up to max. Points within
/// 1e-9 step of an endpoint snap to it.
struct Grid {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  /// Throws InvalidArgument for step <= 0 or max < min.
  std::vector<double> points() const;
};

struct VerificationSummary {
  std::uint64_t samples_total = 0;
  std::uint64_t samples_applicable = 0;   // a theorem branch matched
  std::uint64_t samples_unsupported = 0;  // chain patterns outside the theorem
  std::uint64_t violations = 0;           // applicable samples with slack < -tolerance
  double worst_slack = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> worst_point;        // grid coordinates or sample index of worst_slack
  // Base inequality the theorem rests on, checked on every sample.
  std::uint64_t base_checked = 0;
  std::uint64_t base_violations = 0;
  double base_worst_slack = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
};

/// Numeric table with a header row. str() renders comma-separated lines with
/// shortest round-trip doubles, so output is byte-stable.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string str() const;
  /// Throws IoError.
  void write(const std::string& path) const;
};

struct SweepResult {
  VerificationSummary summary;
  CsvTable table;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Three-qubit measures feeding the pair bounds: C or N of A1|A2A3 and the two
/// reduced pairs.
struct TripartiteMeasures {
  double joint = 0.0;
  double pair12 = 0.0;
  double pair13 = 0.0;
};

/// Concurrences of a 3-qubit pure state: pure formula for the cut, Wootters
/// for the reductions.
TripartiteMeasures tripartite_concurrences(const PureState& psi);

inline constexpr double kExampleTolerance = 1e-12;

/// Figure data for the canonical state with l0 = l2 = 1/2, l3 = sqrt(2)/2
/// (p = 1/2, k = sqrt(2)). Columns: alpha, r, lhs, z1 (bound at p), z2 (p = 1
/// comparator), zprime = z1 - z2. Every point must satisfy
/// lhs >= z1 >= z2 - 1e-12; failures are counted as violations.
/// Requires 0 <= alpha <= 1 and r >= 2 on the grid (DomainError).
SweepResult run_example1(const Grid& alpha, const Grid& r, double p = 0.5, double k = 1.4142135623730951);

/// Figure data for the canonical state with l0 = l3 = 1/2, l1 = l2 = l4 =
/// sqrt(6)/6 (q = 1/2, k = sqrt(6)/2). Columns: beta, s, lhs, z1 (concurrence
/// polygamy bound), z2 (mean of the pair powers), gap = z2 - z1. Every point
/// must satisfy lhs <= z1 <= z2 + 1e-12. Requires beta <= 0 and s in [2, 5].
SweepResult run_example2(const Grid& beta, const Grid& s, double q = 0.5, double k = 1.2247448713915890);

/// Throws AssertionFailure naming the worst point when an example run recorded
/// any violation.
void require_no_violations(const SweepResult& result);

struct VerifyConfig {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  BoundParams params;
  std::size_t n_qubits = 3;
  double tolerance = 1e-9;
  OptimizerBudget budget;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

enum class SampleStatus { Applicable, NoBranch, Unsupported, Trivial };

/// One Haar sample through the monogamy checks.
struct MonogamySample {
  double joint = 0.0;
  std::vector<double> pairs;  // C_{A1A2}, ..., C_{A1An}
  std::vector<double> tails;  // C_{A1|A3..An}, ..., C_{A1An}
  double base_slack = 0.0;    // C^2(joint) - sum C^2(pairs)
  SampleStatus status = SampleStatus::NoBranch;
  std::optional<BoundReport> report;
};

/// Evaluates the base inequality and the pair (n = 3) or chain (n = 4) bound.
/// Tail bipartitions with more than one remaining party are mixed 2 x 2^m
/// states; their concurrence comes from convex_roof(Min).
MonogamySample evaluate_monogamy(const PureState& psi, const BoundParams& params, const OptimizerBudget& budget = {});

/// Samples Haar pure states on n_qubits in {3, 4}, stream i seeded by
/// derive_seed(seed, i). Throws DomainError for out-of-domain params.
VerificationSummary verify_monogamy(const VerifyConfig& config);

struct PolygamySample {
  double joint = 0.0;
  double pair12 = 0.0;
  double pair13 = 0.0;
  double base_slack = 0.0;
  SampleStatus status = SampleStatus::NoBranch;
  std::optional<BoundReport> report;
};

/// kind = Concurrence: Wootters pairs against the beta <= 0 bound; a zero pair
/// makes the sample trivial. Base check C^s(joint) >= C^s12 + C^s13.
/// kind = NegativityOfAssistance: the joint value is the exact pure-state
/// negativity and the pairs come from convex_roof(Max), which can only
/// underestimate them and so only tightens the check. Base check
/// N_a^s(joint) <= N_a^s12 + N_a^s13.
PolygamySample evaluate_polygamy(const PureState& psi, const BoundParams& params, MeasureKind kind,
                                 const OptimizerBudget& budget = {});

/// Samples Haar 3-qubit states. Throws DomainError for params outside the
/// domain matching `kind` and Unsupported for other kinds.
VerificationSummary verify_polygamy(const VerifyConfig& config, MeasureKind kind);

struct LemmaGridConfig {
  std::vector<double> k_values;
  std::vector<double> param_values;  // p for the first lemma, q for the second
  double t_span = 10.0;              // t runs over [k, k + t_span]
  double t_step = 0.1;
  std::vector<Grid> x_grids;

  /// Default grids: k in {1, 1.5, 2, 5}; p in {0.5, 0.75, 1}, x in [0, 0.5]
  /// step 0.01 for the first lemma; q in {0.25, 0.5, 1}, x in [1, 3] and
  /// [-3, 0] step 0.05 for the second.
  static LemmaGridConfig defaults(int which);
};

/// Evaluates lemma1_gap or lemma2_gap over the whole grid. worst_slack is the
/// minimum gap, worst_point its (t, k, p|q, x), violations count gaps below
/// -1e-12. base_worst_slack records max |gap| over the t = k points.
VerificationSummary lemma_grid(int which, const LemmaGridConfig& grid);

enum class SweepFamily { Monogamy, Polygamy };
enum class SweepSource { Example1, Example2, Random };

struct SweepConfig {
  SweepFamily family = SweepFamily::Monogamy;
  Grid exponent_grid{0.0, 1.0, 0.01};
  Grid r_grid{2.0, 5.0, 0.05};  // r for monogamy, s for polygamy
  BoundParams params;           // p, q, k used; exponents come from the grids
  SweepSource source = SweepSource::Example1;
  std::uint64_t seed = 1;
  std::uint64_t count = 1;
  std::string out;
  double tolerance = 1e-9;
};

/// Evaluates the pair bound of `family` (monogamy: p-bound with the p = 1
/// comparator; polygamy: beta <= 0 concurrence bound with the mean comparator)
/// at every grid point for every source state. Columns: state, exponent, r,
/// lhs, bound, comparator, slack, branch (0 tail-dominant, 1 pair-dominant).
/// Grid points without a matching branch or with a zero pair are skipped.
SweepResult sweep(const SweepConfig& config);

}  // namespace qcorr
