#include "qcorr/bounds.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

namespace {

constexpr double kBranchRelTol = 1e-9;
constexpr double kDomainSlack = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DomainError, what);
}

// a >= b up to a relative tolerance.
bool at_least(double a, double b) { return a >= b - kBranchRelTol * std::max(std::abs(a), std::abs(b)); }

std::vector<double> clamped(std::span<const double> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    require(std::isfinite(v) && v >= -kMeasureZero, "measure values must be finite and nonnegative");
    out.push_back(clamp_measure(v));
  }
  return out;
}

// Per-family constants: damping = base^x and the Lemma coefficient
// l = ((1+k)^x - base^x) / k^x with x = exponent / cond_exponent.
struct Family {
  double exponent;       // alpha or beta
  double cond_exponent;  // r or s
  double damping;        // p^x or q^x
  double l;
};

Family make_family(double base, double k, double exponent, double cond_exponent) {
  const double x = exponent / cond_exponent;
  const double damping = std::pow(base, x);
  return {exponent, cond_exponent, damping, (std::pow(1.0 + k, x) - damping) / std::pow(k, x)};
}

// Number of leading tail-dominant indices for the first accepted pattern.
std::size_t classify(const std::vector<double>& pairs, const std::vector<double>& tails, double k, double cond_exponent) {
  const std::size_t conditions = tails.size();
  std::vector<bool> tail_ok(conditions), pair_ok(conditions);
  for (std::size_t i = 0; i < conditions; ++i) {
    const double pr = std::pow(pairs[i], cond_exponent);
    const double tr = std::pow(tails[i], cond_exponent);
    tail_ok[i] = at_least(tr, k * pr);
    pair_ok[i] = at_least(pr, k * tr);
    if (!tail_ok[i] && !pair_ok[i]) {
      throw Error(ErrorCode::NoBranch, "neither branch condition holds at index " + std::to_string(i) +
                                           " (k too large for these values)");
    }
  }
  auto all_of_range = [](const std::vector<bool>& v, std::size_t lo, std::size_t hi) {
    return std::all_of(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi),
                       [](bool b) { return b; });
  };
  if (all_of_range(tail_ok, 0, conditions)) return conditions;
  for (std::size_t t = conditions - 1; t >= 1; --t) {
    if (all_of_range(tail_ok, 0, t) && all_of_range(pair_ok, t, conditions)) return t;
  }
  if (all_of_range(pair_ok, 0, conditions)) return 0;
  throw Error(ErrorCode::PatternUnsupported,
              "branch conditions are not a tail-dominant run followed by a pair-dominant run");
}

// Chain value for `tail_count` leading tail-dominant indices; see header.
double chain_value(const std::vector<double>& pairs, std::size_t tail_count, const Family& fam) {
  const std::size_t n_values = pairs.size();
  const std::size_t last = n_values - 1;
  std::vector<double> v(n_values);
  for (std::size_t i = 0; i < n_values; ++i) v[i] = power0(pairs[i], fam.exponent);
  const double d = fam.damping, l = fam.l;

  if (tail_count == last) {
    double head = 0.0;
    for (std::size_t i = 0; i < last; ++i) head += std::pow(l, static_cast<double>(i)) * v[i];
    return d * head + std::pow(l, static_cast<double>(last)) * v[last];
  }
  if (tail_count == 0) {
    double head = 0.0;
    for (std::size_t i = 0; i < last; ++i) head += std::pow(d, static_cast<double>(i)) * v[i];
    return l * head + std::pow(d, static_cast<double>(last)) * v[last];
  }
  const std::size_t t = tail_count;
  double front = 0.0;
  for (std::size_t i = 0; i < t; ++i) front += std::pow(l, static_cast<double>(i)) * v[i];
  double middle = 0.0;
  for (std::size_t j = t; j < last; ++j) middle += std::pow(d, static_cast<double>(j - t)) * v[j];
  return d * front + std::pow(l, static_cast<double>(t + 1)) * middle +
         std::pow(l, static_cast<double>(t)) * std::pow(d, static_cast<double>(last - t)) * v[last];
}

Branch branch_for(std::size_t tail_count, std::size_t conditions) {
  if (tail_count == conditions) return Branch::TailDominant;
  if (tail_count == 0) return Branch::PairDominant;
  return Branch::Mixed;
}

struct ChainInput {
  std::vector<double> pairs;
  std::vector<double> tails;
};

ChainInput chain_input(std::span<const double> pairs, std::span<const double> tails) {
  if (pairs.size() < 2) throw Error(ErrorCode::InvalidArgument, "a chain needs at least two pair values");
  if (tails.size() != pairs.size() - 1) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(pairs.size() - 1) + " tail values, got " +
                                                std::to_string(tails.size()));
  }
  return {clamped(pairs), clamped(tails)};
}

void fill_lhs(BoundReport& report, std::optional<double> joint, double exponent, bool monogamy) {
  if (!joint) return;
  require(std::isfinite(*joint) && *joint >= -kMeasureZero, "joint measure must be finite and nonnegative");
  report.lhs = power0(clamp_measure(*joint), exponent);
  report.slack = monogamy ? report.lhs - report.bound : report.bound - report.lhs;
}

BoundReport evaluate_mono(const ChainInput& in, const BoundParams& params, std::optional<double> joint) {
  validate_monogamy(params);
  const Family fam = make_family(params.p, params.k, params.alpha, params.r);
  const std::size_t t = classify(in.pairs, in.tails, params.k, params.r);
  BoundReport report;
  report.params = params;
  report.tail_dominant_count = t;
  report.branch = branch_for(t, in.tails.size());
  report.bound = chain_value(in.pairs, t, fam);
  report.comparator_bound = chain_value(in.pairs, t, make_family(1.0, params.k, params.alpha, params.r));
  fill_lhs(report, joint, params.alpha, true);
  return report;
}

BoundReport evaluate_poly(const ChainInput& in, const BoundParams& params, std::optional<double> joint) {
  const Family fam = make_family(params.q, params.k, params.beta, params.s);
  const std::size_t t = classify(in.pairs, in.tails, params.k, params.s);
  BoundReport report;
  report.params = params;
  report.tail_dominant_count = t;
  report.branch = branch_for(t, in.tails.size());
  report.bound = chain_value(in.pairs, t, fam);
  fill_lhs(report, joint, params.beta, false);
  return report;
}

}  // namespace

void validate_monogamy(const BoundParams& params) {
  require(params.k >= 1.0, "k must be >= 1");
  require(params.p >= 0.5 && params.p <= 1.0, "p must lie in [1/2, 1]");
  require(params.r >= 2.0, "r must be >= 2");
  require(params.alpha >= 0.0 && params.alpha <= params.r / 2.0, "alpha must lie in [0, r/2]");
}

void validate_concurrence_polygamy(const BoundParams& params) {
  require(params.k >= 1.0, "k must be >= 1");
  require(params.q > 0.0 && params.q <= 1.0, "q must lie in (0, 1]");
  require(params.s >= 2.0, "s must be >= 2");
  require(params.beta <= 0.0, "beta must be <= 0");
}

void validate_negativity_polygamy(const BoundParams& params) {
  require(params.k >= 1.0, "k must be >= 1");
  require(params.q > 0.0 && params.q <= 1.0, "q must lie in (0, 1]");
  require(params.s > 0.0 && params.s <= 1.0, "s must lie in (0, 1]");
  require(params.beta >= params.s, "beta must be >= s");
}

std::string_view to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::TailDominant: return "tail_dominant";
    case Branch::PairDominant: return "pair_dominant";
    case Branch::Mixed: return "mixed";
  }
  return "unknown";
}

double power0(double base, double exponent) {
  if (base == 0.0) {
    if (exponent == 0.0) return 1.0;
    if (exponent < 0.0) throw Error(ErrorCode::ZeroMeasure, "zero measure raised to a negative power");
    return 0.0;
  }
  return std::pow(base, exponent);
}

double lemma1_gap(double t, double k, double p, double x) {
  require(k >= 1.0, "k must be >= 1");
  require(t >= k - kDomainSlack, "t must be >= k");
  require(p >= 0.5 && p <= 1.0, "p must lie in [1/2, 1]");
  require(x >= 0.0 && x <= 0.5, "x must lie in [0, 1/2]");
  const double px = std::pow(p, x);
  return std::pow(1.0 + t, x) - (px + (std::pow(1.0 + k, x) - px) / std::pow(k, x) * std::pow(t, x));
}

double lemma2_gap(double t, double k, double q, double x) {
  require(k >= 1.0, "k must be >= 1");
  require(t >= k - kDomainSlack, "t must be >= k");
  require(q > 0.0 && q <= 1.0, "q must lie in (0, 1]");
  require(x >= 1.0 || x <= 0.0, "x must be >= 1 or <= 0");
  const double qx = std::pow(q, x);
  return qx + (std::pow(1.0 + k, x) - qx) / std::pow(k, x) * std::pow(t, x) - std::pow(1.0 + t, x);
}

BoundReport mono_pair_bound(double c12, double c13, const BoundParams& params, std::optional<double> joint) {
  const std::array<double, 2> pairs{c12, c13};
  const std::array<double, 1> tails{c13};
  return evaluate_mono(chain_input(pairs, tails), params, joint);
}

BoundReport mono_chain_bound(std::span<const double> pairs, std::span<const double> tails, const BoundParams& params,
                             std::optional<double> joint) {
  return evaluate_mono(chain_input(pairs, tails), params, joint);
}

BoundReport poly_pair_bound_concurrence(double c12, double c13, const BoundParams& params,
                                        std::optional<double> joint) {
  validate_concurrence_polygamy(params);
  const std::array<double, 2> pairs{c12, c13};
  const std::array<double, 1> tails{c13};
  BoundReport report = evaluate_poly(chain_input(pairs, tails), params, joint);
  report.comparator_bound = comparator_ref7(clamp_measure(c12), clamp_measure(c13), params.beta);
  return report;
}

BoundReport poly_pair_bound_noa(double n12, double n13, const BoundParams& params, std::optional<double> joint) {
  validate_negativity_polygamy(params);
  const std::array<double, 2> pairs{n12, n13};
  const std::array<double, 1> tails{n13};
  return evaluate_poly(chain_input(pairs, tails), params, joint);
}

BoundReport poly_chain_bound(std::span<const double> pairs, std::span<const double> tails, const BoundParams& params,
                             PolygamyDomain domain, std::optional<double> joint) {
  if (domain == PolygamyDomain::Concurrence) {
    validate_concurrence_polygamy(params);
  } else {
    validate_negativity_polygamy(params);
  }
  return evaluate_poly(chain_input(pairs, tails), params, joint);
}

double comparator_ref15(double c12, double c13, double k, double alpha, double r) {
  BoundParams params;
  params.p = 1.0;
  params.k = k;
  params.alpha = alpha;
  params.r = r;
  return mono_pair_bound(c12, c13, params).bound;
}

double comparator_ref7(double c12, double c13, double beta) {
  require(std::isfinite(c12) && std::isfinite(c13) && c12 >= 0.0 && c13 >= 0.0,
          "measure values must be finite and nonnegative");
  return 0.5 * (power0(c12, beta) + power0(c13, beta));
}

}  // namespace qcorr
