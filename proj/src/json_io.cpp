#include "qcorr/json_io.hpp"

#include <cmath>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
T field(const Json& doc, const char* name) {
  if (!doc.contains(name)) throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("field '") + name + "': " + e.what());
  }
}

template <class T>
void optional_field(const Json& doc, const char* name, T& out) {
  if (doc.contains(name)) out = field<T>(doc, name);
}

Grid grid_from_json(const Json& doc, const char* name) {
  if (doc.is_array()) {
    if (doc.size() != 3) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be [min, max, step]");
    return {doc[0].get<double>(), doc[1].get<double>(), doc[2].get<double>()};
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be an object or array");
  return {field<double>(doc, "min"), field<double>(doc, "max"), field<double>(doc, "step")};
}

}  // namespace

Json state_to_json(const PureState& psi) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    re.push_back(psi.amplitudes()[i].real());
    im.push_back(psi.amplitudes()[i].imag());
  }
  return Json{{"factor_dims", psi.factor_dims()}, {"re", re}, {"im", im}};
}

PureState state_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "state document must be an object");
  const auto dims = field<Dims>(doc, "factor_dims");
  const auto re = field<std::vector<double>>(doc, "re");
  const auto im = field<std::vector<double>>(doc, "im");
  if (re.size() != im.size()) throw Error(ErrorCode::InvalidArgument, "re and im must have equal length");
  ComplexVector amps(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) amps[static_cast<Eigen::Index>(i)] = Complex(re[i], im[i]);
  return PureState(std::move(amps), dims);
}

Json ensemble_to_json(const EnsembleDecomposition& ensemble) {
  Json states = Json::array();
  for (const auto& s : ensemble.states) states.push_back(state_to_json(s));
  return Json{{"weights", ensemble.weights}, {"states", states}};
}

EnsembleDecomposition ensemble_from_json(const Json& doc) {
  EnsembleDecomposition out;
  out.weights = field<std::vector<double>>(doc, "weights");
  const auto states = field<Json>(doc, "states");
  if (!states.is_array() || states.size() != out.weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "states must be an array matching weights");
  }
  for (const auto& s : states) out.states.push_back(state_from_json(s));
  return out;
}

Json params_to_json(const BoundParams& params) {
  return Json{{"p", params.p},         {"q", params.q},         {"k", params.k}, {"alpha", params.alpha},
              {"beta", params.beta}, {"r", params.r}, {"s", params.s}};
}

BoundParams params_from_json(const Json& doc) {
  BoundParams params;
  optional_field(doc, "p", params.p);
  optional_field(doc, "q", params.q);
  optional_field(doc, "k", params.k);
  optional_field(doc, "alpha", params.alpha);
  optional_field(doc, "beta", params.beta);
  optional_field(doc, "r", params.r);
  optional_field(doc, "s", params.s);
  return params;
}

Json bound_report_to_json(const BoundReport& report) {
  return Json{{"lhs", number_or_null(report.lhs)},
              {"bound", number_or_null(report.bound)},
              {"slack", number_or_null(report.slack)},
              {"branch", std::string(to_string(report.branch))},
              {"comparator_bound", report.comparator_bound ? number_or_null(*report.comparator_bound) : Json(nullptr)},
              {"params", params_to_json(report.params)}};
}

Json summary_to_json(const VerificationSummary& s) {
  return Json{{"samples_total", s.samples_total},
              {"samples_applicable", s.samples_applicable},
              {"samples_unsupported", s.samples_unsupported},
              {"violations", s.violations},
              {"worst_slack", number_or_null(s.worst_slack)},
              {"worst_point", s.worst_point},
              {"base_checked", s.base_checked},
              {"base_violations", s.base_violations},
              {"base_worst_slack", number_or_null(s.base_worst_slack)},
              {"tolerance", s.tolerance},
              {"runtime_seconds", s.runtime_seconds},
              {"seed", s.seed}};
}

SweepConfig sweep_config_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "sweep config must be an object");
  SweepConfig cfg;
  if (doc.contains("family")) {
    const auto family = field<std::string>(doc, "family");
    if (family == "monogamy") {
      cfg.family = SweepFamily::Monogamy;
    } else if (family == "polygamy") {
      cfg.family = SweepFamily::Polygamy;
    } else {
      throw Error(ErrorCode::InvalidArgument, "family must be 'monogamy' or 'polygamy'");
    }
  }
  if (cfg.family == SweepFamily::Polygamy) {
    cfg.exponent_grid = {-2.0, 0.0, 0.02};
    cfg.source = SweepSource::Example2;
  }
  if (doc.contains("exponent_grid")) cfg.exponent_grid = grid_from_json(doc["exponent_grid"], "exponent_grid");
  if (doc.contains("r_grid") && doc.contains("s_grid")) {
    throw Error(ErrorCode::InvalidArgument, "give either r_grid or s_grid, not both");
  }
  if (doc.contains("r_grid")) cfg.r_grid = grid_from_json(doc["r_grid"], "r_grid");
  if (doc.contains("s_grid")) cfg.r_grid = grid_from_json(doc["s_grid"], "s_grid");
  if (doc.contains("params")) cfg.params = params_from_json(doc["params"]);
  optional_field(doc, "p", cfg.params.p);
  optional_field(doc, "q", cfg.params.q);
  optional_field(doc, "k", cfg.params.k);
  optional_field(doc, "out", cfg.out);
  optional_field(doc, "tolerance", cfg.tolerance);
  optional_field(doc, "seed", cfg.seed);

  if (doc.contains("source")) {
    const Json& src = doc["source"];
    const std::string kind = src.is_string() ? src.get<std::string>() : field<std::string>(src, "kind");
    if (kind == "example1") {
      cfg.source = SweepSource::Example1;
    } else if (kind == "example2") {
      cfg.source = SweepSource::Example2;
    } else if (kind == "random") {
      cfg.source = SweepSource::Random;
      if (src.is_object()) {
        optional_field(src, "seed", cfg.seed);
        optional_field(src, "count", cfg.count);
      }
    } else {
      throw Error(ErrorCode::InvalidArgument, "source must be example1, example2 or random");
    }
  }
  if (cfg.source == SweepSource::Random && cfg.count == 0) {
    throw Error(ErrorCode::InvalidArgument, "random source needs count >= 1");
  }
  // Validates the grids up front.
  cfg.exponent_grid.points();
  cfg.r_grid.points();
  return cfg;
}

LemmaGridConfig lemma_grid_config_from_json(const Json& doc, int which) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "lemma grid config must be an object");
  LemmaGridConfig cfg = LemmaGridConfig::defaults(which);
  optional_field(doc, "k_values", cfg.k_values);
  optional_field(doc, "param_values", cfg.param_values);
  optional_field(doc, "t_span", cfg.t_span);
  optional_field(doc, "t_step", cfg.t_step);
  if (doc.contains("x_grids")) {
    if (!doc["x_grids"].is_array()) throw Error(ErrorCode::InvalidArgument, "x_grids must be a list of grids");
    cfg.x_grids.clear();
    for (const auto& g : doc["x_grids"]) cfg.x_grids.push_back(grid_from_json(g, "x_grids"));
  }
  return cfg;
}

}  // namespace qcorr
