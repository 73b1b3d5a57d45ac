#include "qcorr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include "qcorr/error.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs fn(i) for i in [0, n) on a small thread pool. Each index is
// independent; the first exception thrown is rethrown after joining.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

void track_worst(VerificationSummary& summary, double slack, std::vector<double> point) {
  if (std::isnan(summary.worst_slack) || slack < summary.worst_slack) {
    summary.worst_slack = slack;
    summary.worst_point = std::move(point);
  }
}

void track_base(VerificationSummary& summary, double slack, double tolerance) {
  ++summary.base_checked;
  if (slack < -tolerance) ++summary.base_violations;
  if (std::isnan(summary.base_worst_slack) || slack < summary.base_worst_slack) summary.base_worst_slack = slack;
}

PureState example1_state() { return gsd_state({0.5, 0.0, 0.5, std::sqrt(2.0) / 2.0, 0.0}); }

PureState example2_state() {
  const double a = std::sqrt(6.0) / 6.0;
  return gsd_state({0.5, a, a, 0.5, a});
}

DensityMatrix keep_factors(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < rho.num_factors(); ++f) {
    if (std::find(keep.begin(), keep.end(), f) == keep.end()) traced.push_back(f);
  }
  return partial_trace(rho, traced);
}

void require_qubits(const PureState& psi, std::size_t min_n, std::size_t max_n) {
  const Dims& dims = psi.factor_dims();
  const bool qubits = std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 2; });
  if (!qubits || dims.size() < min_n || dims.size() > max_n) {
    throw Error(ErrorCode::DomainError, "state must consist of " + std::to_string(min_n) + " to " +
                                            std::to_string(max_n) + " qubits");
  }
}

}  // namespace

std::vector<double> Grid::points() const {
  if (!(step > 0.0) || !std::isfinite(min) || !std::isfinite(max) || max < min) {
    throw Error(ErrorCode::InvalidArgument, "grid needs finite bounds with max >= min and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    double v = min + static_cast<double>(i) * step;
    if (std::abs(v - max) < 1e-9 * step) v = max;
    if (std::abs(v) < 1e-9 * step) v = 0.0;
    out[i] = v;
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << str();
  if (!file) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

TripartiteMeasures tripartite_concurrences(const PureState& psi) {
  require_qubits(psi, 3, 3);
  const DensityMatrix rho = density_from_pure(psi);
  return {concurrence_pure(psi, Partition::first_factor(3)), concurrence_wootters(keep_factors(rho, {0, 1})),
          concurrence_wootters(keep_factors(rho, {0, 2}))};
}

SweepResult run_example1(const Grid& alpha, const Grid& r, double p, double k) {
  const auto start = Clock::now();
  const std::vector<double> alphas = alpha.points();
  const std::vector<double> rs = r.points();
  if (alphas.front() < 0.0 || alphas.back() > 1.0) throw Error(ErrorCode::DomainError, "alpha grid must lie in [0, 1]");
  if (rs.front() < 2.0) throw Error(ErrorCode::DomainError, "r grid must satisfy r >= 2");

  const TripartiteMeasures m = tripartite_concurrences(example1_state());
  SweepResult result;
  result.table.header = {"alpha", "r", "lhs", "z1", "z2", "zprime"};
  VerificationSummary& summary = result.summary;
  summary.tolerance = kExampleTolerance;
  for (double a : alphas) {
    for (double rv : rs) {
      BoundParams params;
      params.p = p;
      params.k = k;
      params.alpha = a;
      params.r = rv;
      const BoundReport report = mono_pair_bound(m.pair12, m.pair13, params, m.joint);
      const double z1 = report.bound;
      const double z2 = comparator_ref15(m.pair12, m.pair13, k, a, rv);
      const double zprime = z1 - z2;
      result.table.rows.push_back({a, rv, report.lhs, z1, z2, zprime});

      ++summary.samples_total;
      ++summary.samples_applicable;
      const double slack = std::min(report.lhs - z1, zprime);
      if (slack < -kExampleTolerance) ++summary.violations;
      track_worst(summary, slack, {a, rv});
    }
  }
  summary.runtime_seconds = seconds_since(start);
  return result;
}

SweepResult run_example2(const Grid& beta, const Grid& s, double q, double k) {
  const auto start = Clock::now();
  const std::vector<double> betas = beta.points();
  const std::vector<double> ss = s.points();
  if (betas.back() > 0.0) throw Error(ErrorCode::DomainError, "beta grid must satisfy beta <= 0");
  if (ss.front() < 2.0 || ss.back() > 5.0) throw Error(ErrorCode::DomainError, "s grid must lie in [2, 5]");

  const TripartiteMeasures m = tripartite_concurrences(example2_state());
  SweepResult result;
  result.table.header = {"beta", "s", "lhs", "z1", "z2", "gap"};
  VerificationSummary& summary = result.summary;
  summary.tolerance = kExampleTolerance;
  for (double b : betas) {
    for (double sv : ss) {
      BoundParams params;
      params.q = q;
      params.k = k;
      params.beta = b;
      params.s = sv;
      const BoundReport report = poly_pair_bound_concurrence(m.pair12, m.pair13, params, m.joint);
      const double z1 = report.bound;
      const double z2 = comparator_ref7(m.pair12, m.pair13, b);
      result.table.rows.push_back({b, sv, report.lhs, z1, z2, z2 - z1});

      ++summary.samples_total;
      ++summary.samples_applicable;
      const double slack = std::min(z1 - report.lhs, z2 - z1);
      if (slack < -kExampleTolerance) ++summary.violations;
      track_worst(summary, slack, {b, sv});
    }
  }
  summary.runtime_seconds = seconds_since(start);
  return result;
}

void require_no_violations(const SweepResult& result) {
  const VerificationSummary& s = result.summary;
  if (s.violations == 0) return;
  std::string where;
  for (double v : s.worst_point) where += (where.empty() ? "" : ", ") + format_double(v);
  throw Error(ErrorCode::AssertionFailure, std::to_string(s.violations) + " grid points violate the ordering; worst slack " +
                                               format_double(s.worst_slack) + " at (" + where + ")");
}

MonogamySample evaluate_monogamy(const PureState& psi, const BoundParams& params, const OptimizerBudget& budget) {
  require_qubits(psi, 3, 4);
  const std::size_t n = psi.num_factors();
  const DensityMatrix rho = density_from_pure(psi);

  MonogamySample sample;
  sample.joint = concurrence_pure(psi, Partition::first_factor(n));
  for (std::size_t i = 1; i < n; ++i) sample.pairs.push_back(concurrence_wootters(keep_factors(rho, {0, i})));
  for (std::size_t i = 2; i + 1 < n; ++i) {
    // A1 | A_{i+1} ... A_n in one-based labels.
    std::vector<std::size_t> keep{0};
    for (std::size_t f = i; f < n; ++f) keep.push_back(f);
    sample.tails.push_back(measure(keep_factors(rho, keep), Partition::first_factor(keep.size()),
                                   MeasureKind::Concurrence, budget));
  }
  sample.tails.push_back(sample.pairs.back());

  sample.base_slack = sample.joint * sample.joint;
  for (double c : sample.pairs) sample.base_slack -= c * c;

  try {
    sample.report = mono_chain_bound(sample.pairs, sample.tails, params, sample.joint);
    sample.status = SampleStatus::Applicable;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoBranch) {
      sample.status = SampleStatus::NoBranch;
    } else if (e.code() == ErrorCode::PatternUnsupported) {
      sample.status = SampleStatus::Unsupported;
    } else {
      throw;
    }
  }
  return sample;
}

VerificationSummary verify_monogamy(const VerifyConfig& config) {
  const auto start = Clock::now();
  validate_monogamy(config.params);
  if (config.n_qubits != 3 && config.n_qubits != 4) throw Error(ErrorCode::DomainError, "n_qubits must be 3 or 4");
  if (config.samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");

  const Dims dims(config.n_qubits, 2);
  std::vector<MonogamySample> samples(config.samples);
  parallel_for(samples.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t stream = derive_seed(config.seed, i);
    OptimizerBudget budget = config.budget;
    budget.seed = derive_seed(stream, 1);
    samples[i] = evaluate_monogamy(random_pure(dims, stream), config.params, budget);
  });

  VerificationSummary summary;
  summary.seed = config.seed;
  summary.tolerance = config.tolerance;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const MonogamySample& s = samples[i];
    ++summary.samples_total;
    track_base(summary, s.base_slack, config.tolerance);
    if (s.status == SampleStatus::Unsupported) ++summary.samples_unsupported;
    if (s.status != SampleStatus::Applicable) continue;
    ++summary.samples_applicable;
    if (s.report->slack < -config.tolerance) ++summary.violations;
    track_worst(summary, s.report->slack, {static_cast<double>(i)});
  }
  summary.runtime_seconds = seconds_since(start);
  return summary;
}

PolygamySample evaluate_polygamy(const PureState& psi, const BoundParams& params, MeasureKind kind,
                                 const OptimizerBudget& budget) {
  require_qubits(psi, 3, 3);
  PolygamySample sample;
  if (kind == MeasureKind::Concurrence) {
    const TripartiteMeasures m = tripartite_concurrences(psi);
    sample.joint = m.joint;
    sample.pair12 = m.pair12;
    sample.pair13 = m.pair13;
    sample.base_slack = std::pow(m.joint, params.s) - std::pow(m.pair12, params.s) - std::pow(m.pair13, params.s);
    if (params.beta < 0.0 && (clamp_measure(m.pair12) == 0.0 || clamp_measure(m.pair13) == 0.0)) {
      sample.status = SampleStatus::Trivial;
      return sample;
    }
  } else if (kind == MeasureKind::NegativityOfAssistance) {
    const DensityMatrix rho = density_from_pure(psi);
    const Partition cut = Partition::first_factor(2);
    sample.joint = negativity_pure(psi, Partition::first_factor(3));
    sample.pair12 = convex_roof(keep_factors(rho, {0, 1}), cut, MeasureKind::Negativity, RoofDirection::Max, budget).value;
    sample.pair13 = convex_roof(keep_factors(rho, {0, 2}), cut, MeasureKind::Negativity, RoofDirection::Max, budget).value;
    sample.base_slack = std::pow(sample.pair12, params.s) + std::pow(sample.pair13, params.s) -
                        std::pow(sample.joint, params.s);
  } else {
    throw Error(ErrorCode::Unsupported, "polygamy verification supports Concurrence and NegativityOfAssistance");
  }

  try {
    sample.report = kind == MeasureKind::Concurrence
                        ? poly_pair_bound_concurrence(sample.pair12, sample.pair13, params, sample.joint)
                        : poly_pair_bound_noa(sample.pair12, sample.pair13, params, sample.joint);
    sample.status = SampleStatus::Applicable;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoBranch) throw;
    sample.status = SampleStatus::NoBranch;
  }
  return sample;
}

VerificationSummary verify_polygamy(const VerifyConfig& config, MeasureKind kind) {
  const auto start = Clock::now();
  if (kind == MeasureKind::Concurrence) {
    validate_concurrence_polygamy(config.params);
  } else if (kind == MeasureKind::NegativityOfAssistance) {
    validate_negativity_polygamy(config.params);
  } else {
    throw Error(ErrorCode::Unsupported, "polygamy verification supports Concurrence and NegativityOfAssistance");
  }
  if (config.samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");

  const Dims dims{2, 2, 2};
  std::vector<PolygamySample> samples(config.samples);
  parallel_for(samples.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t stream = derive_seed(config.seed, i);
    OptimizerBudget budget = config.budget;
    budget.seed = derive_seed(stream, 1);
    samples[i] = evaluate_polygamy(random_pure(dims, stream), config.params, kind, budget);
  });

  VerificationSummary summary;
  summary.seed = config.seed;
  summary.tolerance = config.tolerance;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const PolygamySample& s = samples[i];
    ++summary.samples_total;
    track_base(summary, s.base_slack, config.tolerance);
    if (s.status != SampleStatus::Applicable) continue;
    ++summary.samples_applicable;
    if (s.report->slack < -config.tolerance) ++summary.violations;
    track_worst(summary, s.report->slack, {static_cast<double>(i)});
  }
  summary.runtime_seconds = seconds_since(start);
  return summary;
}

LemmaGridConfig LemmaGridConfig::defaults(int which) {
  LemmaGridConfig cfg;
  cfg.k_values = {1.0, 1.5, 2.0, 5.0};
  if (which == 1) {
    cfg.param_values = {0.5, 0.75, 1.0};
    cfg.x_grids = {Grid{0.0, 0.5, 0.01}};
  } else {
    cfg.param_values = {0.25, 0.5, 1.0};
    cfg.x_grids = {Grid{1.0, 3.0, 0.05}, Grid{-3.0, 0.0, 0.05}};
  }
  return cfg;
}

VerificationSummary lemma_grid(int which, const LemmaGridConfig& grid) {
  const auto start = Clock::now();
  if (which != 1 && which != 2) throw Error(ErrorCode::InvalidArgument, "lemma must be 1 or 2");
  if (!(grid.t_step > 0.0) || !(grid.t_span >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "t grid needs t_step > 0 and t_span >= 0");
  }
  if (grid.k_values.empty() || grid.param_values.empty() || grid.x_grids.empty()) {
    throw Error(ErrorCode::InvalidArgument, "lemma grid has an empty axis");
  }
  const auto t_count = static_cast<std::size_t>(std::floor(grid.t_span / grid.t_step + 1e-9)) + 1;
  constexpr double kGapTol = 1e-12;

  VerificationSummary summary;
  summary.tolerance = kGapTol;
  for (double k : grid.k_values) {
    for (double param : grid.param_values) {
      for (const Grid& xg : grid.x_grids) {
        for (double x : xg.points()) {
          for (std::size_t i = 0; i < t_count; ++i) {
            const double t = k + static_cast<double>(i) * grid.t_step;
            const double gap = which == 1 ? lemma1_gap(t, k, param, x) : lemma2_gap(t, k, param, x);
            ++summary.samples_total;
            ++summary.samples_applicable;
            if (gap < -kGapTol) ++summary.violations;
            track_worst(summary, gap, {t, k, param, x});
            if (i == 0) {
              ++summary.base_checked;
              const double mag = std::abs(gap);
              if (mag > kGapTol) ++summary.base_violations;
              if (std::isnan(summary.base_worst_slack) || mag > summary.base_worst_slack) summary.base_worst_slack = mag;
            }
          }
        }
      }
    }
  }
  summary.runtime_seconds = seconds_since(start);
  return summary;
}

SweepResult sweep(const SweepConfig& config) {
  const auto start = Clock::now();
  const std::vector<double> exponents = config.exponent_grid.points();
  const std::vector<double> rs = config.r_grid.points();
  const bool monogamy = config.family == SweepFamily::Monogamy;

  auto params_at = [&](double e, double rv) {
    BoundParams params = config.params;
    if (monogamy) {
      params.alpha = e;
      params.r = rv;
      validate_monogamy(params);
    } else {
      params.beta = e;
      params.s = rv;
      validate_concurrence_polygamy(params);
    }
    return params;
  };
  for (double e : exponents) {
    for (double rv : rs) params_at(e, rv);
  }

  std::vector<PureState> states;
  switch (config.source) {
    case SweepSource::Example1: states.push_back(example1_state()); break;
    case SweepSource::Example2: states.push_back(example2_state()); break;
    case SweepSource::Random:
      if (config.count == 0) throw Error(ErrorCode::InvalidArgument, "random source needs count >= 1");
      for (std::uint64_t i = 0; i < config.count; ++i) states.push_back(random_pure({2, 2, 2}, derive_seed(config.seed, i)));
      break;
  }

  SweepResult result;
  result.table.header = {"state", "exponent", "r", "lhs", "bound", "comparator", "slack", "branch"};
  VerificationSummary& summary = result.summary;
  summary.seed = config.seed;
  summary.tolerance = config.tolerance;
  for (std::size_t si = 0; si < states.size(); ++si) {
    const TripartiteMeasures m = tripartite_concurrences(states[si]);
    for (double e : exponents) {
      for (double rv : rs) {
        ++summary.samples_total;
        const BoundParams params = params_at(e, rv);
        BoundReport report;
        try {
          report = monogamy ? mono_pair_bound(m.pair12, m.pair13, params, m.joint)
                            : poly_pair_bound_concurrence(m.pair12, m.pair13, params, m.joint);
        } catch (const Error& err) {
          if (err.code() == ErrorCode::NoBranch || err.code() == ErrorCode::ZeroMeasure) continue;
          throw;
        }
        ++summary.samples_applicable;
        if (report.slack < -config.tolerance) ++summary.violations;
        track_worst(summary, report.slack, {static_cast<double>(si), e, rv});
        result.table.rows.push_back({static_cast<double>(si), e, rv, report.lhs, report.bound,
                                     report.comparator_bound.value_or(std::nan("")), report.slack,
                                     report.branch == Branch::TailDominant ? 0.0 : 1.0});
      }
    }
  }
  summary.runtime_seconds = seconds_since(start);
  return result;
}

}  // namespace qcorr
