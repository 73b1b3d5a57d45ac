#include "qcorr/qcorr.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <optional>
#include <string>

#include "qcorr/error.hpp"
#include "qcorr/harness.hpp"
#include "qcorr/json_io.hpp"

struct qcorr_pure_state {
  qcorr::PureState state;
};

struct qcorr_density {
  qcorr::DensityMatrix rho;
};

namespace {

thread_local std::string g_last_error;

qcorr_status status_of(qcorr::ErrorCode code) {
  return static_cast<qcorr_status>(static_cast<int>(code) + 1);
}

qcorr_status fail(qcorr_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
qcorr_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const qcorr::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(QCORR_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(QCORR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QCORR_ERR_INTERNAL, "unknown exception");
  }
}

#define QCORR_REQUIRE(ptr)                                                   \
  do {                                                                       \
    if ((ptr) == nullptr) return fail(QCORR_ERR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

qcorr::Dims to_dims(const size_t* dims, size_t n) { return qcorr::Dims(dims, dims + n); }

qcorr::ComplexVector to_vector(const double* re, const double* im, size_t len) {
  qcorr::ComplexVector v(static_cast<Eigen::Index>(len));
  for (size_t i = 0; i < len; ++i) v[static_cast<Eigen::Index>(i)] = qcorr::Complex(re[i], im ? im[i] : 0.0);
  return v;
}

qcorr::BoundParams to_params(const qcorr_bound_params& p) { return {p.p, p.q, p.k, p.alpha, p.beta, p.r, p.s}; }

qcorr_bound_params from_params(const qcorr::BoundParams& p) { return {p.p, p.q, p.k, p.alpha, p.beta, p.r, p.s}; }

qcorr::OptimizerBudget to_budget(const qcorr_budget& b) {
  return {b.restarts, b.ensemble_cap, b.max_sweeps, b.min_step, b.seed};
}

qcorr::Grid to_grid(const qcorr_grid& g) { return {g.min, g.max, g.step}; }

qcorr::MeasureKind to_kind(qcorr_measure kind) {
  switch (kind) {
    case QCORR_MEASURE_CONCURRENCE: return qcorr::MeasureKind::Concurrence;
    case QCORR_MEASURE_NEGATIVITY: return qcorr::MeasureKind::Negativity;
    case QCORR_MEASURE_CREN: return qcorr::MeasureKind::CREN;
    case QCORR_MEASURE_NEGATIVITY_OF_ASSISTANCE: return qcorr::MeasureKind::NegativityOfAssistance;
    case QCORR_MEASURE_CONCURRENCE_OF_ASSISTANCE: return qcorr::MeasureKind::ConcurrenceOfAssistance;
    case QCORR_MEASURE_ENTANGLEMENT_OF_FORMATION: return qcorr::MeasureKind::EntanglementOfFormation;
  }
  throw qcorr::Error(qcorr::ErrorCode::InvalidArgument, "unknown measure kind");
}

void fill_report(const qcorr::BoundReport& r, qcorr_bound_report* out) {
  out->lhs = r.lhs;
  out->bound = r.bound;
  out->slack = r.slack;
  out->branch = static_cast<qcorr_branch>(r.branch);
  out->tail_dominant_count = r.tail_dominant_count;
  out->has_comparator = r.comparator_bound.has_value() ? 1 : 0;
  out->comparator_bound = r.comparator_bound.value_or(std::numeric_limits<double>::quiet_NaN());
  out->params = from_params(r.params);
}

qcorr::BoundReport to_report(const qcorr_bound_report& r) {
  qcorr::BoundReport out;
  out.lhs = r.lhs;
  out.bound = r.bound;
  out.slack = r.slack;
  out.branch = static_cast<qcorr::Branch>(r.branch);
  out.tail_dominant_count = r.tail_dominant_count;
  if (r.has_comparator) out.comparator_bound = r.comparator_bound;
  out.params = to_params(r.params);
  return out;
}

void fill_summary(const qcorr::VerificationSummary& s, qcorr_summary* out) {
  *out = qcorr_summary{};
  out->samples_total = s.samples_total;
  out->samples_applicable = s.samples_applicable;
  out->samples_unsupported = s.samples_unsupported;
  out->violations = s.violations;
  out->worst_slack = s.worst_slack;
  out->worst_point_len = std::min<size_t>(s.worst_point.size(), QCORR_MAX_POINT);
  for (size_t i = 0; i < out->worst_point_len; ++i) out->worst_point[i] = s.worst_point[i];
  out->base_checked = s.base_checked;
  out->base_violations = s.base_violations;
  out->base_worst_slack = s.base_worst_slack;
  out->tolerance = s.tolerance;
  out->runtime_seconds = s.runtime_seconds;
  out->seed = s.seed;
}

qcorr::VerificationSummary to_summary(const qcorr_summary& s) {
  qcorr::VerificationSummary out;
  out.samples_total = s.samples_total;
  out.samples_applicable = s.samples_applicable;
  out.samples_unsupported = s.samples_unsupported;
  out.violations = s.violations;
  out.worst_slack = s.worst_slack;
  out.worst_point.assign(s.worst_point, s.worst_point + std::min<size_t>(s.worst_point_len, QCORR_MAX_POINT));
  out.base_checked = s.base_checked;
  out.base_violations = s.base_violations;
  out.base_worst_slack = s.base_worst_slack;
  out.tolerance = s.tolerance;
  out.runtime_seconds = s.runtime_seconds;
  out.seed = s.seed;
  return out;
}

qcorr::VerifyConfig to_verify_config(const qcorr_verify_config& c) {
  qcorr::VerifyConfig out;
  out.samples = c.samples;
  out.seed = c.seed;
  out.params = to_params(c.params);
  out.n_qubits = c.n_qubits;
  out.tolerance = c.tolerance;
  out.budget = to_budget(c.budget);
  out.threads = c.threads;
  return out;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<double> joint_of(const double* joint) {
  return joint ? std::optional<double>(*joint) : std::nullopt;
}

qcorr_status finish_example(const qcorr::SweepResult& result, const char* csv_path, qcorr_summary* out) {
  if (csv_path) result.table.write(csv_path);
  fill_summary(result.summary, out);
  qcorr::require_no_violations(result);
  return QCORR_OK;
}

}  // namespace

extern "C" {

const char* qcorr_version(void) { return "1.0.0"; }

const char* qcorr_status_name(qcorr_status status) {
  switch (status) {
    case QCORR_OK: return "Ok";
    case QCORR_ERR_NULL_ARGUMENT: return "NullArgument";
    case QCORR_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status > QCORR_OK && status < QCORR_ERR_NULL_ARGUMENT) {
    return qcorr::to_string(static_cast<qcorr::ErrorCode>(static_cast<int>(status) - 1)).data();
  }
  return "Unknown";
}

const char* qcorr_last_error(void) { return g_last_error.c_str(); }

void qcorr_string_free(char* str) { delete[] str; }

void qcorr_bound_params_default(qcorr_bound_params* params) {
  if (params) *params = from_params(qcorr::BoundParams{});
}

void qcorr_budget_default(qcorr_budget* budget) {
  if (!budget) return;
  const qcorr::OptimizerBudget b;
  *budget = {b.restarts, b.ensemble_cap, b.max_sweeps, b.min_step, b.seed};
}

void qcorr_verify_config_default(qcorr_verify_config* config) {
  if (!config) return;
  const qcorr::VerifyConfig c;
  config->samples = c.samples;
  config->seed = c.seed;
  config->params = from_params(c.params);
  config->n_qubits = c.n_qubits;
  config->tolerance = c.tolerance;
  qcorr_budget_default(&config->budget);
  config->threads = c.threads;
}

qcorr_status qcorr_pure_state_new(const double* re, const double* im, size_t len, const size_t* dims,
                                  size_t n_factors, qcorr_pure_state** out) {
  QCORR_REQUIRE(re);
  QCORR_REQUIRE(dims);
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = new qcorr_pure_state{qcorr::PureState(to_vector(re, im, len), to_dims(dims, n_factors))};
    return QCORR_OK;
  });
}

qcorr_status qcorr_gsd_state(const double lambdas[5], double theta, qcorr_pure_state** out) {
  QCORR_REQUIRE(lambdas);
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = new qcorr_pure_state{qcorr::gsd_state({lambdas[0], lambdas[1], lambdas[2], lambdas[3], lambdas[4]}, theta)};
    return QCORR_OK;
  });
}

qcorr_status qcorr_random_pure(const size_t* dims, size_t n_factors, uint64_t seed, qcorr_pure_state** out) {
  QCORR_REQUIRE(dims);
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = new qcorr_pure_state{qcorr::random_pure(to_dims(dims, n_factors), seed)};
    return QCORR_OK;
  });
}

qcorr_status qcorr_pure_state_from_json(const char* json, qcorr_pure_state** out) {
  QCORR_REQUIRE(json);
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = new qcorr_pure_state{qcorr::state_from_json(qcorr::Json::parse(json))};
    return QCORR_OK;
  });
}

qcorr_status qcorr_pure_state_to_json(const qcorr_pure_state* state, char** out) {
  QCORR_REQUIRE(state);
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(qcorr::state_to_json(state->state).dump());
    return QCORR_OK;
  });
}

qcorr_status qcorr_pure_state_amplitudes(const qcorr_pure_state* state, double* re, double* im, size_t len) {
  QCORR_REQUIRE(state);
  QCORR_REQUIRE(re);
  QCORR_REQUIRE(im);
  if (len != state->state.dim()) return fail(QCORR_ERR_WRONG_DIMENSION, "buffer length does not match the state");
  for (size_t i = 0; i < len; ++i) {
    re[i] = state->state.amplitudes()[static_cast<Eigen::Index>(i)].real();
    im[i] = state->state.amplitudes()[static_cast<Eigen::Index>(i)].imag();
  }
  g_last_error.clear();
  return QCORR_OK;
}

size_t qcorr_pure_state_dim(const qcorr_pure_state* state) { return state ? state->state.dim() : 0; }

void qcorr_pure_state_free(qcorr_pure_state* state) { delete state; }

qcorr_status qcorr_density_new(const double* re, const double* im, size_t dim, const size_t* dims,
                               size_t n_factors, qcorr_density** out) {
  QCORR_REQUIRE(re);
  QCORR_REQUIRE(dims);
  QCORR_REQUIRE(out);
  return guarded([&] {
    const auto n = static_cast<Eigen::Index>(dim);
    qcorr::ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto idx = static_cast<size_t>(i * n + j);
        m(i, j) = qcorr::Complex(re[idx], im ? im[idx] : 0.0);
      }
    }
    *out = new qcorr_density{qcorr::DensityMatrix(std::move(m), to_dims(dims, n_factors))};
    return QCORR_OK;
  });
}

qcorr_status qcorr_density_from_pure(const qcorr_pure_state* state, qcorr_density** out) {
  QCORR_REQUIRE(state);
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = new qcorr_density{qcorr::density_from_pure(state->state)};
    return QCORR_OK;
  });
}

qcorr_status qcorr_partial_trace(const qcorr_density* rho, const size_t* traced_out, size_t n_traced,
                                 qcorr_density** out) {
  QCORR_REQUIRE(rho);
  QCORR_REQUIRE(traced_out);
  QCORR_REQUIRE(out);
  return guarded([&] {
    const std::vector<std::size_t> traced(traced_out, traced_out + n_traced);
    *out = new qcorr_density{qcorr::partial_trace(rho->rho, traced)};
    return QCORR_OK;
  });
}

qcorr_status qcorr_density_matrix(const qcorr_density* rho, double* re, double* im, size_t dim) {
  QCORR_REQUIRE(rho);
  QCORR_REQUIRE(re);
  QCORR_REQUIRE(im);
  if (dim != rho->rho.dim()) return fail(QCORR_ERR_WRONG_DIMENSION, "buffer dimension does not match the state");
  const auto n = static_cast<Eigen::Index>(dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      re[i * n + j] = rho->rho.matrix()(i, j).real();
      im[i * n + j] = rho->rho.matrix()(i, j).imag();
    }
  }
  g_last_error.clear();
  return QCORR_OK;
}

size_t qcorr_density_dim(const qcorr_density* rho) { return rho ? rho->rho.dim() : 0; }

void qcorr_density_free(qcorr_density* rho) { delete rho; }

qcorr_status qcorr_measure_pure(const qcorr_pure_state* state, const size_t* side_a, size_t n_side_a,
                                qcorr_measure kind, double* out) {
  QCORR_REQUIRE(state);
  QCORR_REQUIRE(side_a);
  QCORR_REQUIRE(out);
  return guarded([&] {
    const qcorr::Partition part({side_a, side_a + n_side_a}, state->state.num_factors());
    *out = qcorr::measure(state->state, part, to_kind(kind));
    return QCORR_OK;
  });
}

qcorr_status qcorr_measure_density(const qcorr_density* rho, const size_t* side_a, size_t n_side_a,
                                   qcorr_measure kind, const qcorr_budget* budget, double* out) {
  QCORR_REQUIRE(rho);
  QCORR_REQUIRE(side_a);
  QCORR_REQUIRE(out);
  return guarded([&] {
    const qcorr::Partition part({side_a, side_a + n_side_a}, rho->rho.num_factors());
    *out = qcorr::measure(rho->rho, part, to_kind(kind), budget ? to_budget(*budget) : qcorr::OptimizerBudget{});
    return QCORR_OK;
  });
}

qcorr_status qcorr_mono_pair_bound(double c12, double c13, const qcorr_bound_params* params, const double* joint,
                                   qcorr_bound_report* out) {
  QCORR_REQUIRE(params);
  QCORR_REQUIRE(out);
  return guarded([&] {
    fill_report(qcorr::mono_pair_bound(c12, c13, to_params(*params), joint_of(joint)), out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_mono_chain_bound(const double* pairs, size_t n_pairs, const double* tails, size_t n_tails,
                                    const qcorr_bound_params* params, const double* joint, qcorr_bound_report* out) {
  QCORR_REQUIRE(pairs);
  QCORR_REQUIRE(tails);
  QCORR_REQUIRE(params);
  QCORR_REQUIRE(out);
  return guarded([&] {
    fill_report(qcorr::mono_chain_bound({pairs, n_pairs}, {tails, n_tails}, to_params(*params), joint_of(joint)), out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_poly_pair_bound_concurrence(double c12, double c13, const qcorr_bound_params* params,
                                               const double* joint, qcorr_bound_report* out) {
  QCORR_REQUIRE(params);
  QCORR_REQUIRE(out);
  return guarded([&] {
    fill_report(qcorr::poly_pair_bound_concurrence(c12, c13, to_params(*params), joint_of(joint)), out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_poly_pair_bound_noa(double n12, double n13, const qcorr_bound_params* params, const double* joint,
                                       qcorr_bound_report* out) {
  QCORR_REQUIRE(params);
  QCORR_REQUIRE(out);
  return guarded([&] {
    fill_report(qcorr::poly_pair_bound_noa(n12, n13, to_params(*params), joint_of(joint)), out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_poly_chain_bound(const double* pairs, size_t n_pairs, const double* tails, size_t n_tails,
                                    const qcorr_bound_params* params, qcorr_polygamy_domain domain,
                                    const double* joint, qcorr_bound_report* out) {
  QCORR_REQUIRE(pairs);
  QCORR_REQUIRE(tails);
  QCORR_REQUIRE(params);
  QCORR_REQUIRE(out);
  return guarded([&] {
    const auto d = domain == QCORR_POLYGAMY_CONCURRENCE ? qcorr::PolygamyDomain::Concurrence
                                                        : qcorr::PolygamyDomain::NegativityOfAssistance;
    fill_report(qcorr::poly_chain_bound({pairs, n_pairs}, {tails, n_tails}, to_params(*params), d, joint_of(joint)),
                out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_lemma1_gap(double t, double k, double p, double x, double* out) {
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = qcorr::lemma1_gap(t, k, p, x);
    return QCORR_OK;
  });
}

qcorr_status qcorr_lemma2_gap(double t, double k, double q, double x, double* out) {
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = qcorr::lemma2_gap(t, k, q, x);
    return QCORR_OK;
  });
}

qcorr_status qcorr_bound_report_to_json(const qcorr_bound_report* report, char** out) {
  QCORR_REQUIRE(report);
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(qcorr::bound_report_to_json(to_report(*report)).dump());
    return QCORR_OK;
  });
}

qcorr_status qcorr_run_example1(const qcorr_grid* alpha, const qcorr_grid* r, double p, double k, const char* csv_path,
                                qcorr_summary* out) {
  QCORR_REQUIRE(alpha);
  QCORR_REQUIRE(r);
  QCORR_REQUIRE(out);
  return guarded([&] { return finish_example(qcorr::run_example1(to_grid(*alpha), to_grid(*r), p, k), csv_path, out); });
}

qcorr_status qcorr_run_example2(const qcorr_grid* beta, const qcorr_grid* s, double q, double k, const char* csv_path,
                                qcorr_summary* out) {
  QCORR_REQUIRE(beta);
  QCORR_REQUIRE(s);
  QCORR_REQUIRE(out);
  return guarded([&] { return finish_example(qcorr::run_example2(to_grid(*beta), to_grid(*s), q, k), csv_path, out); });
}

qcorr_status qcorr_verify_monogamy(const qcorr_verify_config* config, qcorr_summary* out) {
  QCORR_REQUIRE(config);
  QCORR_REQUIRE(out);
  return guarded([&] {
    fill_summary(qcorr::verify_monogamy(to_verify_config(*config)), out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_verify_polygamy(const qcorr_verify_config* config, qcorr_measure kind, qcorr_summary* out) {
  QCORR_REQUIRE(config);
  QCORR_REQUIRE(out);
  return guarded([&] {
    fill_summary(qcorr::verify_polygamy(to_verify_config(*config), to_kind(kind)), out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_lemma_grid(int which, const char* config_json, qcorr_summary* out) {
  QCORR_REQUIRE(out);
  return guarded([&] {
    if (which != 1 && which != 2) throw qcorr::Error(qcorr::ErrorCode::InvalidArgument, "lemma must be 1 or 2");
    const qcorr::LemmaGridConfig cfg = config_json
                                           ? qcorr::lemma_grid_config_from_json(qcorr::Json::parse(config_json), which)
                                           : qcorr::LemmaGridConfig::defaults(which);
    fill_summary(qcorr::lemma_grid(which, cfg), out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_sweep(const char* config_json, const char* csv_path, qcorr_summary* out) {
  QCORR_REQUIRE(config_json);
  QCORR_REQUIRE(out);
  return guarded([&] {
    qcorr::SweepConfig cfg = qcorr::sweep_config_from_json(qcorr::Json::parse(config_json));
    if (csv_path) cfg.out = csv_path;
    const qcorr::SweepResult result = qcorr::sweep(cfg);
    if (!cfg.out.empty()) result.table.write(cfg.out);
    fill_summary(result.summary, out);
    return QCORR_OK;
  });
}

qcorr_status qcorr_summary_to_json(const qcorr_summary* summary, char** out) {
  QCORR_REQUIRE(summary);
  QCORR_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(qcorr::summary_to_json(to_summary(*summary)).dump(2));
    return QCORR_OK;
  });
}

}  // extern "C"
