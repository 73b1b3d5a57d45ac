#include "qcorr/harness.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace qcorr;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PureState w_state() {
  ComplexVector w = ComplexVector::Zero(8);
  w[1] = w[2] = w[4] = 1.0 / std::sqrt(3.0);
  return PureState(w, {2, 2, 2});
}

PureState ghz_state() {
  ComplexVector g = ComplexVector::Zero(8);
  g[0] = g[7] = 1.0 / std::sqrt(2.0);
  return PureState(g, {2, 2, 2});
}

}  // namespace

TEST_CASE("grid points") {
  CHECK(Grid{0.0, 1.0, 0.25}.points() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto pts = Grid{2.0, 5.0, 0.05}.points();
  CHECK(pts.size() == 61);
  CHECK(pts.back() == 5.0);
  CHECK(Grid{-2.0, 0.0, 0.02}.points().back() == 0.0);
  CHECK(Grid{1.0, 1.0, 0.1}.points() == std::vector<double>{1.0});
  CHECK_CODE(Grid({0.0, 1.0, 0.0}).points(), ErrorCode::InvalidArgument);
  CHECK_CODE(Grid({1.0, 0.0, 0.1}).points(), ErrorCode::InvalidArgument);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678, std::sqrt(2.0)}) {
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(std::nan("")) == "nan");
  CsvTable t{{"a", "b"}, {{1.0, 0.5}, {-2.0, 0.25}}};
  CHECK(t.str() == "a,b\n1,0.5\n-2,0.25\n");
}

TEST_CASE("tripartite concurrences of the canonical states") {
  const TripartiteMeasures m1 = tripartite_concurrences(gsd_state({0.5, 0.0, 0.5, std::sqrt(2.0) / 2.0, 0.0}));
  CHECK(m1.joint == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(m1.pair12 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m1.pair13 == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
  const TripartiteMeasures w = tripartite_concurrences(w_state());
  CHECK(w.pair12 == doctest::Approx(2.0 / 3.0));
  CHECK_CODE(tripartite_concurrences(random_pure({2, 2}, 1)), ErrorCode::DomainError);
}

TEST_CASE("first example rows") {
  const SweepResult res = run_example1({0.0, 1.0, 1.0}, {2.0, 2.0, 1.0});
  REQUIRE(res.table.rows.size() == 2);
  const auto& zero = res.table.rows[0];
  CHECK(zero[2] == doctest::Approx(1.0));
  CHECK(zero[3] == doctest::Approx(1.0));
  CHECK(zero[4] == doctest::Approx(1.0));
  CHECK(std::abs(zero[5]) < 1e-14);
  const auto& one = res.table.rows[1];
  const double k = std::sqrt(2.0);
  CHECK(one[2] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(one[3] == doctest::Approx(std::sqrt(0.5) * 0.5 + (std::sqrt(1.0 + k) - std::sqrt(0.5)) / std::pow(2.0, 0.25) *
                                                            (std::sqrt(2.0) / 2.0))
                      .epsilon(1e-14));
  CHECK(res.summary.violations == 0);
  CHECK_NOTHROW(require_no_violations(res));
  CHECK(res.table.header == std::vector<std::string>{"alpha", "r", "lhs", "z1", "z2", "zprime"});
  CHECK_CODE(run_example1({0.0, 1.5, 0.5}, {2.0, 3.0, 1.0}), ErrorCode::DomainError);
  CHECK_CODE(run_example1({0.0, 1.0, 0.5}, {1.0, 3.0, 1.0}), ErrorCode::DomainError);
}

TEST_CASE("second example rows") {
  const SweepResult res = run_example2({-1.0, 0.0, 1.0}, {2.0, 2.0, 1.0});
  REQUIRE(res.table.rows.size() == 2);
  const auto& minus_one = res.table.rows[0];
  CHECK(minus_one[2] == doctest::Approx(6.0 / std::sqrt(21.0)).epsilon(1e-14));
  CHECK(minus_one[4] == doctest::Approx(0.5 * (std::sqrt(6.0) + 2.0)).epsilon(1e-14));
  const auto& zero = res.table.rows[1];
  CHECK(zero[2] == doctest::Approx(1.0));
  CHECK(zero[3] == doctest::Approx(1.0));
  CHECK(zero[4] == doctest::Approx(1.0));
  CHECK_CODE(run_example2({-1.0, 1.0, 1.0}, {2.0, 3.0, 1.0}), ErrorCode::DomainError);
  CHECK_CODE(run_example2({-1.0, 0.0, 1.0}, {2.0, 6.0, 1.0}), ErrorCode::DomainError);
}

TEST_CASE("example violations raise AssertionFailure") {
  // beta = -2, s = 5 is a point where the bound exceeds the mean comparator.
  const SweepResult res = run_example2({-2.0, -2.0, 1.0}, {5.0, 5.0, 1.0});
  CHECK(res.summary.violations == 1);
  CHECK(res.table.rows[0][5] < 0.0);
  CHECK_CODE(require_no_violations(res), ErrorCode::AssertionFailure);
}

TEST_CASE("monogamy samples of reference states") {
  const BoundParams params = [] {
    BoundParams p;
    p.p = 0.5;
    return p;
  }();
  const MonogamySample w = evaluate_monogamy(w_state(), params);
  CHECK(std::abs(w.base_slack) < 1e-12);
  CHECK(w.status == SampleStatus::Applicable);
  CHECK(w.report->slack >= -1e-12);
  const MonogamySample g = evaluate_monogamy(ghz_state(), params);
  CHECK(g.pairs[0] < 1e-12);
  CHECK(g.pairs[1] < 1e-12);
  CHECK(g.base_slack == doctest::Approx(1.0));
  CHECK(g.report->slack >= 0.0);
}

TEST_CASE("four-qubit monogamy sample") {
  BoundParams params;
  params.p = 0.5;
  OptimizerBudget budget;
  budget.restarts = 4;
  const MonogamySample s = evaluate_monogamy(random_pure({2, 2, 2, 2}, 5), params, budget);
  CHECK(s.pairs.size() == 3);
  CHECK(s.tails.size() == 2);
  CHECK(s.tails[1] == s.pairs[2]);
  CHECK(s.base_slack >= -1e-12);
}

TEST_CASE("verify_monogamy rejects out-of-domain parameters") {
  VerifyConfig cfg;
  cfg.samples = 10;
  cfg.params.alpha = 2.0;
  cfg.params.r = 2.0;
  CHECK_CODE(verify_monogamy(cfg), ErrorCode::DomainError);
  cfg.params.alpha = 1.0;
  cfg.n_qubits = 5;
  CHECK_CODE(verify_monogamy(cfg), ErrorCode::DomainError);
}

TEST_CASE("verify_monogamy is independent of the worker count") {
  VerifyConfig cfg;
  cfg.samples = 300;
  cfg.params.p = 0.5;
  cfg.params.k = std::sqrt(2.0);
  cfg.threads = 1;
  const VerificationSummary a = verify_monogamy(cfg);
  cfg.threads = 3;
  const VerificationSummary b = verify_monogamy(cfg);
  CHECK(a.samples_applicable == b.samples_applicable);
  CHECK(a.worst_slack == b.worst_slack);
  CHECK(a.worst_point == b.worst_point);
  CHECK(a.base_worst_slack == b.base_worst_slack);
  CHECK(a.violations == 0);
  CHECK(a.samples_applicable <= a.samples_total);
}

TEST_CASE("polygamy samples") {
  BoundParams noa;
  noa.q = 0.5;
  noa.beta = 2.0;
  noa.s = 1.0;
  const PolygamySample g = evaluate_polygamy(ghz_state(), noa, MeasureKind::NegativityOfAssistance);
  CHECK(g.joint == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.pair12 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.pair13 == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(g.report.has_value());
  CHECK(g.report->bound >= 1.0);

  BoundParams conc;
  conc.q = 0.5;
  conc.beta = -1.0;
  conc.s = 2.0;
  const PolygamySample trivial = evaluate_polygamy(ghz_state(), conc, MeasureKind::Concurrence);
  CHECK(trivial.status == SampleStatus::Trivial);
  CHECK_CODE(evaluate_polygamy(ghz_state(), conc, MeasureKind::CREN), ErrorCode::Unsupported);

  VerifyConfig cfg;
  cfg.samples = 20;
  cfg.params = noa;
  cfg.tolerance = 5e-3;
  cfg.budget.restarts = 8;
  const VerificationSummary sum = verify_polygamy(cfg, MeasureKind::NegativityOfAssistance);
  CHECK(sum.violations == 0);
  CHECK(sum.base_violations == 0);
  cfg.params.beta = 0.5;
  CHECK_CODE(verify_polygamy(cfg, MeasureKind::NegativityOfAssistance), ErrorCode::DomainError);
}

TEST_CASE("lemma grids") {
  LemmaGridConfig one;
  one.k_values = {1.5};
  one.param_values = {0.5};
  one.t_span = 0.0;
  one.x_grids = {Grid{0.3, 0.3, 1.0}};
  const VerificationSummary s = lemma_grid(1, one);
  CHECK(s.samples_total == 1);
  CHECK(std::abs(s.worst_slack) < 1e-12);
  CHECK(s.worst_point == std::vector<double>{1.5, 1.5, 0.5, 0.3});

  const VerificationSummary l1 = lemma_grid(1, LemmaGridConfig::defaults(1));
  CHECK(l1.violations == 0);
  CHECK(l1.base_worst_slack <= 1e-12);
  const VerificationSummary l2 = lemma_grid(2, LemmaGridConfig::defaults(2));
  CHECK(l2.violations == 0);

  LemmaGridConfig bad = LemmaGridConfig::defaults(1);
  bad.x_grids = {Grid{0.0, 1.0, 0.5}};
  CHECK_CODE(lemma_grid(1, bad), ErrorCode::DomainError);
  CHECK_CODE(lemma_grid(3, one), ErrorCode::InvalidArgument);
}

TEST_CASE("sweeps are reproducible") {
  SweepConfig cfg;
  cfg.source = SweepSource::Random;
  cfg.count = 3;
  cfg.seed = 8;
  cfg.exponent_grid = {0.0, 1.0, 0.25};
  cfg.r_grid = {2.0, 3.0, 0.5};
  cfg.params.p = 0.5;
  const SweepResult a = sweep(cfg);
  const SweepResult b = sweep(cfg);
  CHECK(a.table.str() == b.table.str());
  CHECK(a.summary.samples_total == 3 * 5 * 3);
  CHECK(a.summary.violations == 0);

  const std::string path = "sweep_test.csv";
  a.table.write(path);
  CHECK(slurp(path) == a.table.str());
  std::remove(path.c_str());

  cfg.family = SweepFamily::Polygamy;
  cfg.exponent_grid = {-1.0, 0.0, 0.5};
  cfg.params.q = 0.5;
  const SweepResult p = sweep(cfg);
  CHECK(p.summary.samples_applicable <= p.summary.samples_total);
  cfg.exponent_grid = {0.0, 1.0, 0.5};
  CHECK_CODE(sweep(cfg), ErrorCode::DomainError);
  cfg.exponent_grid = {-1.0, 0.0, 0.5};
  cfg.count = 0;
  CHECK_CODE(sweep(cfg), ErrorCode::InvalidArgument);
}
