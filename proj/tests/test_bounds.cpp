#include "qcorr/bounds.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"

using namespace qcorr;

namespace {

// Applies the lemma step index by index from the end of the chain:
//   tail-dominant i: X_i -> D v_i + l X_{i+1}
//   pair-dominant i: X_i -> l v_i + D X_{i+1}
// with X_last = v_last and v = value^exponent.
double recursive_chain(const std::vector<double>& values, const std::vector<bool>& tail_dominant, double base, double k,
                       double exponent, double cond_exponent) {
  const double x = exponent / cond_exponent;
  const double d = std::pow(base, x);
  const double l = (std::pow(1.0 + k, x) - d) / std::pow(k, x);
  double acc = std::pow(values.back(), exponent);
  for (std::size_t i = values.size() - 1; i-- > 0;) {
    const double v = std::pow(values[i], exponent);
    acc = tail_dominant[i] ? d * v + l * acc : l * v + d * acc;
  }
  return acc;
}

// Joint value and tails that make the base inequality an equality:
// X_last = c_last, X_i = (c_i^e + X_{i+1}^e)^{1/e}.
struct TightChain {
  std::vector<double> tails;
  double joint;
};

TightChain tight_chain(const std::vector<double>& c, double e) {
  TightChain out;
  double x = c.back();
  out.tails.assign(c.size() - 1, 0.0);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    out.tails[i] = x;
    x = std::pow(std::pow(c[i], e) + std::pow(x, e), 1.0 / e);
  }
  out.joint = x;
  return out;
}

BoundParams mono(double p, double k, double alpha, double r) {
  BoundParams b;
  b.p = p;
  b.k = k;
  b.alpha = alpha;
  b.r = r;
  return b;
}

BoundParams poly(double q, double k, double beta, double s) {
  BoundParams b;
  b.q = q;
  b.k = k;
  b.beta = beta;
  b.s = s;
  return b;
}

}  // namespace

TEST_CASE("power0 conventions") {
  CHECK(power0(0.0, 0.0) == 1.0);
  CHECK(power0(0.0, 2.0) == 0.0);
  CHECK(power0(4.0, 0.5) == 2.0);
  CHECK_CODE(power0(0.0, -1.0), ErrorCode::ZeroMeasure);
}

TEST_CASE("parameter domains") {
  CHECK_NOTHROW(validate_monogamy(mono(0.5, 1.0, 1.0, 2.0)));
  CHECK_CODE(validate_monogamy(mono(0.4, 1.0, 1.0, 2.0)), ErrorCode::DomainError);
  CHECK_CODE(validate_monogamy(mono(0.5, 0.9, 1.0, 2.0)), ErrorCode::DomainError);
  CHECK_CODE(validate_monogamy(mono(0.5, 1.0, 1.0, 1.5)), ErrorCode::DomainError);
  CHECK_CODE(validate_monogamy(mono(0.5, 1.0, 3.0, 3.0)), ErrorCode::DomainError);
  CHECK_NOTHROW(validate_concurrence_polygamy(poly(0.5, 1.0, -1.0, 2.0)));
  CHECK_CODE(validate_concurrence_polygamy(poly(0.5, 1.0, 0.5, 2.0)), ErrorCode::DomainError);
  CHECK_CODE(validate_concurrence_polygamy(poly(0.0, 1.0, -1.0, 2.0)), ErrorCode::DomainError);
  CHECK_NOTHROW(validate_negativity_polygamy(poly(0.5, 1.0, 2.0, 1.0)));
  CHECK_CODE(validate_negativity_polygamy(poly(0.5, 1.0, 0.5, 1.0)), ErrorCode::DomainError);
  CHECK_CODE(validate_negativity_polygamy(poly(0.5, 1.0, 2.0, 1.5)), ErrorCode::DomainError);
}

TEST_CASE("lemma gaps vanish at t = k and stay nonnegative") {
  for (double k : {1.0, 1.5, 3.0}) {
    CHECK(std::abs(lemma1_gap(k, k, 0.5, 0.3)) < 1e-14);
    CHECK(std::abs(lemma2_gap(k, k, 0.5, 2.0)) < 1e-14);
    CHECK(std::abs(lemma2_gap(k, k, 0.5, -1.0)) < 1e-14);
    for (double t = k; t < k + 20.0; t += 0.37) {
      CHECK(lemma1_gap(t, k, 0.75, 0.4) >= -1e-12);
      CHECK(lemma2_gap(t, k, 0.25, 2.5) >= -1e-12);
      CHECK(lemma2_gap(t, k, 0.25, -2.5) >= -1e-12);
    }
  }
  // At x = 0 the first gap is identically zero.
  CHECK(lemma1_gap(7.0, 2.0, 0.5, 0.0) == doctest::Approx(0.0));
  CHECK_CODE(lemma1_gap(0.5, 1.0, 0.5, 0.3), ErrorCode::DomainError);
  CHECK_CODE(lemma1_gap(2.0, 1.0, 0.5, 0.7), ErrorCode::DomainError);
  CHECK_CODE(lemma2_gap(2.0, 1.0, 0.5, 0.5), ErrorCode::DomainError);
  CHECK_CODE(lemma2_gap(2.0, 1.0, 1.5, 2.0), ErrorCode::DomainError);
}

TEST_CASE("mono pair bound formulas") {
  const double c12 = 0.3, c13 = 0.8;
  const BoundParams params = mono(0.5, 2.0, 1.0, 2.0);
  const BoundReport tail = mono_pair_bound(c12, c13, params);
  CHECK(tail.branch == Branch::TailDominant);
  CHECK(tail.bound == doctest::Approx(recursive_chain({c12, c13}, {true}, 0.5, 2.0, 1.0, 2.0)).epsilon(1e-14));
  const double x = 0.5;
  CHECK(tail.bound == doctest::Approx(std::pow(0.5, x) * c12 + (std::pow(3.0, x) - std::pow(0.5, x)) / std::pow(2.0, x) * c13));
  const BoundReport pair = mono_pair_bound(c13, c12, params);
  CHECK(pair.branch == Branch::PairDominant);
  CHECK(pair.bound == doctest::Approx(recursive_chain({c13, c12}, {false}, 0.5, 2.0, 1.0, 2.0)).epsilon(1e-14));
  CHECK(std::isnan(tail.lhs));
  CHECK(std::isnan(tail.slack));
  REQUIRE(tail.comparator_bound.has_value());
  CHECK(*tail.comparator_bound == doctest::Approx(comparator_ref15(c12, c13, 2.0, 1.0, 2.0)));
  CHECK(*tail.comparator_bound == doctest::Approx(recursive_chain({c12, c13}, {true}, 1.0, 2.0, 1.0, 2.0)));
  CHECK_CODE(mono_pair_bound(0.5, 0.6, params), ErrorCode::NoBranch);
}

TEST_CASE("first example point") {
  // alpha = 1, r = 2, p = 1/2, k = sqrt 2 on C12 = 1/2, C13 = sqrt2/2.
  const double k = std::sqrt(2.0);
  const BoundReport rep = mono_pair_bound(0.5, std::sqrt(2.0) / 2.0, mono(0.5, k, 1.0, 2.0), std::sqrt(3.0) / 2.0);
  const double want = std::sqrt(0.5) * 0.5 + (std::sqrt(1.0 + k) - std::sqrt(0.5)) / std::pow(2.0, 0.25) * (std::sqrt(2.0) / 2.0);
  CHECK(rep.bound == doctest::Approx(want).epsilon(1e-14));
  CHECK(rep.lhs == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(rep.slack == doctest::Approx(rep.lhs - rep.bound));
  CHECK(rep.slack >= 0.0);
}

TEST_CASE("a branch tie takes the tail-dominant side") {
  const BoundReport rep = mono_pair_bound(0.5, 0.5, mono(0.5, 1.0, 1.0, 2.0));
  CHECK(rep.branch == Branch::TailDominant);
}

TEST_CASE("three-party chain equals the pair bound") {
  const std::vector<double> pairs{0.2, 0.7};
  const std::vector<double> tails{0.7};
  const BoundParams params = mono(0.6, 1.5, 0.8, 3.0);
  const BoundReport chain = mono_chain_bound(pairs, tails, params, 0.9);
  const BoundReport pair = mono_pair_bound(0.2, 0.7, params, 0.9);
  CHECK(chain.bound == pair.bound);
  CHECK(*chain.comparator_bound == *pair.comparator_bound);
  CHECK(chain.slack == pair.slack);
}

TEST_CASE("chain patterns") {
  const BoundParams params = mono(0.5, 1.0, 1.0, 2.0);
  // Tails chosen by hand: index 0 tail-dominant, index 1 pair-dominant.
  const std::vector<double> pairs{0.1, 0.6, 0.3};
  const std::vector<double> mixed_tails{0.8, 0.3};
  const BoundReport mixed = mono_chain_bound(pairs, mixed_tails, params);
  CHECK(mixed.branch == Branch::Mixed);
  CHECK(mixed.tail_dominant_count == 1);
  CHECK(mixed.bound == doctest::Approx(recursive_chain(pairs, {true, false}, 0.5, 1.0, 1.0, 2.0)).epsilon(1e-14));

  const std::vector<double> tail_tails{0.8, 0.7};
  const std::vector<double> tail_pairs{0.1, 0.2, 0.7};
  const BoundReport all_tail = mono_chain_bound(tail_pairs, tail_tails, params);
  CHECK(all_tail.branch == Branch::TailDominant);
  CHECK(all_tail.bound == doctest::Approx(recursive_chain(tail_pairs, {true, true}, 0.5, 1.0, 1.0, 2.0)).epsilon(1e-14));

  const std::vector<double> pair_pairs{0.9, 0.5, 0.1};
  const std::vector<double> pair_tails{0.5, 0.1};
  const BoundReport all_pair = mono_chain_bound(pair_pairs, pair_tails, params);
  CHECK(all_pair.branch == Branch::PairDominant);
  CHECK(all_pair.bound == doctest::Approx(recursive_chain(pair_pairs, {false, false}, 0.5, 1.0, 1.0, 2.0)).epsilon(1e-14));

  // Pair-dominant first and tail-dominant afterwards is outside the theorem.
  const std::vector<double> bad_pairs{0.9, 0.1, 0.5};
  const std::vector<double> bad_tails{0.5, 0.5};
  CHECK_CODE(mono_chain_bound(bad_pairs, bad_tails, mono(0.5, 1.2, 1.0, 2.0)), ErrorCode::PatternUnsupported);
  CHECK_CODE(mono_chain_bound(bad_pairs, std::vector<double>{0.5}, params), ErrorCode::InvalidArgument);
  CHECK_CODE(mono_chain_bound(std::vector<double>{0.5}, std::vector<double>{}, params), ErrorCode::InvalidArgument);
}

TEST_CASE("measure inputs are clamped and checked") {
  const BoundParams params = mono(0.5, 1.0, 1.0, 2.0);
  CHECK(mono_pair_bound(1e-13, 0.5, params).bound == mono_pair_bound(0.0, 0.5, params).bound);
  CHECK_CODE(mono_pair_bound(-0.1, 0.5, params), ErrorCode::DomainError);
  CHECK_CODE(mono_pair_bound(std::nan(""), 0.5, params), ErrorCode::DomainError);
  CHECK_CODE(poly_pair_bound_concurrence(0.0, 0.5, poly(0.5, 1.0, -1.0, 2.0)), ErrorCode::ZeroMeasure);
}

TEST_CASE("concurrence polygamy bound") {
  const double c12 = std::sqrt(6.0) / 6.0, c13 = 0.5;
  const double k = std::sqrt(6.0) / 2.0;
  const BoundReport rep = poly_pair_bound_concurrence(c12, c13, poly(0.5, k, -1.0, 2.0), std::sqrt(21.0) / 6.0);
  const double x = -0.5;
  const double want = std::pow(0.5, x) / c12 + (std::pow(1.0 + k, x) - std::pow(0.5, x)) / std::pow(k, x) / c13;
  CHECK(rep.bound == doctest::Approx(want).epsilon(1e-14));
  CHECK(*rep.comparator_bound == doctest::Approx(0.5 * (std::sqrt(6.0) + 2.0)).epsilon(1e-14));
  CHECK(rep.slack == doctest::Approx(rep.bound - rep.lhs));
  CHECK(comparator_ref7(0.5, 0.25, 0.0) == 1.0);
}

TEST_CASE("negativity of assistance polygamy bound") {
  const BoundParams params = poly(0.5, 1.0, 2.0, 1.0);
  const BoundReport rep = poly_pair_bound_noa(0.4, 0.6, params, 1.0);
  CHECK(rep.bound == doctest::Approx(recursive_chain({0.4, 0.6}, {true}, 0.5, 1.0, 2.0, 1.0)).epsilon(1e-14));
  CHECK_FALSE(rep.comparator_bound.has_value());
  // GHZ pairs: N_a = 1 on both sides and jointly.
  const BoundReport ghz = poly_pair_bound_noa(1.0, 1.0, params, 1.0);
  CHECK(ghz.slack >= 0.0);
  const std::vector<double> pairs{0.4, 0.6};
  const std::vector<double> tails{0.6};
  CHECK(poly_chain_bound(pairs, tails, params, PolygamyDomain::NegativityOfAssistance).bound == rep.bound);
  CHECK_CODE(poly_chain_bound(pairs, tails, params, PolygamyDomain::Concurrence), ErrorCode::DomainError);
}

TEST_CASE("property: monogamy bounds hold whenever the base inequality does") {
  std::mt19937_64 gen(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    std::vector<double> c(n);
    for (auto& v : c) v = 0.05 + 0.95 * u(gen);
    const double r = 2.0 + 3.0 * u(gen);
    const BoundParams params = mono(0.5 + 0.5 * u(gen), 1.0 + 2.0 * u(gen), u(gen) * r / 2.0, r);
    const TightChain tc = tight_chain(c, r);
    try {
      const BoundReport rep = mono_chain_bound(c, tc.tails, params, tc.joint);
      CHECK(rep.slack >= -1e-12 * (1.0 + rep.lhs));
      if (n == 2) CHECK(rep.bound >= *rep.comparator_bound - 1e-12);
      ++checked;
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::NoBranch || e.code() == ErrorCode::PatternUnsupported));
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("property: concurrence polygamy bound holds for beta <= 0") {
  std::mt19937_64 gen(321);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const std::vector<double> c{0.05 + 0.95 * u(gen), 0.05 + 0.95 * u(gen)};
    const double s = 2.0 + 3.0 * u(gen);
    const BoundParams params = poly(0.05 + 0.95 * u(gen), 1.0 + 2.0 * u(gen), -3.0 * u(gen), s);
    const TightChain tc = tight_chain(c, s);
    try {
      const BoundReport rep = poly_pair_bound_concurrence(c[0], c[1], params, tc.joint);
      CHECK(rep.slack >= -1e-12 * (1.0 + rep.lhs));
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoBranch);
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("property: negativity polygamy bound holds for beta >= s") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    std::vector<double> c(n);
    for (auto& v : c) v = 0.05 + 0.95 * u(gen);
    const double s = 0.1 + 0.9 * u(gen);
    const BoundParams params = poly(0.05 + 0.95 * u(gen), 1.0 + 2.0 * u(gen), s + 2.0 * u(gen), s);
    const TightChain tc = tight_chain(c, s);
    try {
      const BoundReport rep =
          poly_chain_bound(c, tc.tails, params, PolygamyDomain::NegativityOfAssistance, tc.joint);
      CHECK(rep.slack >= -1e-12 * (1.0 + rep.lhs));
      ++checked;
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::NoBranch || e.code() == ErrorCode::PatternUnsupported));
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("branch names") {
  CHECK(to_string(Branch::TailDominant) == "tail_dominant");
  CHECK(to_string(Branch::PairDominant) == "pair_dominant");
  CHECK(to_string(Branch::Mixed) == "mixed");
}
