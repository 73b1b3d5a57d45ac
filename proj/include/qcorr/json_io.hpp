#pragma once

// JSON forms of states, ensembles, bound reports, summaries and sweep configs.

#include <json.hpp>

#include "qcorr/bounds.hpp"
#include "qcorr/harness.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

using Json = nlohmann::ordered_json;

/// {factor_dims: [...], re: [...], im: [...]}
Json state_to_json(const PureState& psi);
/// Throws InvalidArgument for malformed documents, NotNormalized for an
/// unnormalized amplitude vector.
PureState state_from_json(const Json& doc);

/// {weights: [...], states: [state, ...]}
Json ensemble_to_json(const EnsembleDecomposition& ensemble);
EnsembleDecomposition ensemble_from_json(const Json& doc);

Json params_to_json(const BoundParams& params);
/// Missing fields keep the BoundParams defaults.
BoundParams params_from_json(const Json& doc);

/// {lhs, bound, slack, branch, comparator_bound, params}; NaN and absent
/// values become null.
Json bound_report_to_json(const BoundReport& report);

Json summary_to_json(const VerificationSummary& summary);

/// Accepts
///   {"family": "monogamy" | "polygamy",
///    "exponent_grid": {"min", "max", "step"} or [min, max, step],
///    "r_grid" | "s_grid": same,
///    "p", "q", "k",
///    "source": "example1" | "example2" | {"kind": "random", "seed", "count"},
///    "out": path, "tolerance": real}
/// Unspecified fields keep the SweepConfig defaults. Throws InvalidArgument.
SweepConfig sweep_config_from_json(const Json& doc);

/// Starts from LemmaGridConfig::defaults(which) and overrides any of
/// k_values, param_values, t_span, t_step, x_grids (list of grids).
LemmaGridConfig lemma_grid_config_from_json(const Json& doc, int which);

}  // namespace qcorr
