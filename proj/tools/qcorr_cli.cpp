// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qcorr/qcorr.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::uint64_t> samples;
  std::string config;
  std::optional<double> tolerance;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--out", c.out, "output CSV path");
  cmd->add_option("--samples", c.samples, "number of random samples");
  cmd->add_option("--config", c.config, "JSON configuration file");
  cmd->add_option("--tolerance", c.tolerance, "violation tolerance");
}

void warn_unused(const char* flag, bool given, const char* command) {
  if (given) std::cerr << "note: " << flag << " has no effect on " << command << "\n";
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    Json doc = Json::parse(in);
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

qcorr_grid parse_grid(const std::string& text) {
  qcorr_grid g{};
  char sep1 = 0, sep2 = 0;
  std::istringstream in(text);
  if (!(in >> g.min >> sep1 >> g.max >> sep2 >> g.step) || sep1 != ':' || sep2 != ':' || !in.eof()) {
    throw ConfigError("grid '" + text + "' must look like min:max:step");
  }
  return g;
}

qcorr_grid grid_from(const Json& doc, const char* key, qcorr_grid fallback) {
  if (!doc.contains(key)) return fallback;
  const Json& g = doc[key];
  if (g.is_array() && g.size() == 3) return {g[0].get<double>(), g[1].get<double>(), g[2].get<double>()};
  if (g.is_object()) return {g.at("min").get<double>(), g.at("max").get<double>(), g.at("step").get<double>()};
  throw ConfigError(std::string(key) + " must be [min, max, step] or {min, max, step}");
}

template <class T>
void take(const Json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc[key].get<T>();
}

void take_params(const Json& doc, qcorr_bound_params& p) {
  const Json& src = doc.contains("params") ? doc["params"] : doc;
  take(src, "p", p.p);
  take(src, "q", p.q);
  take(src, "k", p.k);
  take(src, "alpha", p.alpha);
  take(src, "beta", p.beta);
  take(src, "r", p.r);
  take(src, "s", p.s);
}

std::string summary_json(const qcorr_summary& summary) {
  char* text = nullptr;
  if (qcorr_summary_to_json(&summary, &text) != QCORR_OK) return "{}";
  std::string out(text);
  qcorr_string_free(text);
  return out;
}

void write_summary_csv(const std::string& path, const qcorr_summary& s) {
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot open '" + path + "' for writing");
  file.precision(17);
  file << "samples_total,samples_applicable,samples_unsupported,violations,worst_slack,base_checked,"
          "base_violations,base_worst_slack,tolerance,runtime_seconds,seed\n"
       << s.samples_total << ',' << s.samples_applicable << ',' << s.samples_unsupported << ',' << s.violations << ','
       << s.worst_slack << ',' << s.base_checked << ',' << s.base_violations << ',' << s.base_worst_slack << ','
       << s.tolerance << ',' << s.runtime_seconds << ',' << s.seed << '\n';
}

// Prints the summary and turns a library status into an exit code.
int report(qcorr_status status, const qcorr_summary& summary) {
  const std::string message = qcorr_last_error();
  if (status != QCORR_OK && status != QCORR_ERR_ASSERTION_FAILURE) {
    std::cerr << "error: " << message << "\n";
    return kExitConfig;
  }
  if (status == QCORR_ERR_ASSERTION_FAILURE) std::cerr << "violation: " << message << "\n";
  std::cout << summary_json(summary) << "\n";
  return summary.violations > 0 || summary.base_violations > 0 ? kExitViolation : kExitOk;
}

qcorr_measure measure_from(std::string name) {
  for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (name == "concurrence") return QCORR_MEASURE_CONCURRENCE;
  if (name == "negativity") return QCORR_MEASURE_NEGATIVITY;
  if (name == "cren") return QCORR_MEASURE_CREN;
  if (name == "noa" || name == "negativity_of_assistance") return QCORR_MEASURE_NEGATIVITY_OF_ASSISTANCE;
  if (name == "coa" || name == "concurrence_of_assistance") return QCORR_MEASURE_CONCURRENCE_OF_ASSISTANCE;
  if (name == "eof" || name == "entanglement_of_formation") return QCORR_MEASURE_ENTANGLEMENT_OF_FORMATION;
  throw ConfigError("unknown measure '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monogamy and polygamy bounds for multipartite entanglement measures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qcorr_version()));

  // example1 / example2
  Common ex1c, ex2c;
  std::string ex1_alpha = "0:1:0.01", ex1_r = "2:5:0.05";
  double ex1_p = 0.5, ex1_k = std::sqrt(2.0);
  auto* ex1 = app.add_subcommand("example1", "monogamy bound against the p = 1 comparator on the first example state");
  add_common(ex1, ex1c);
  ex1->add_option("--alpha-grid", ex1_alpha, "alpha grid min:max:step")->capture_default_str();
  ex1->add_option("--r-grid", ex1_r, "r grid min:max:step")->capture_default_str();
  ex1->add_option("--p", ex1_p)->capture_default_str();
  ex1->add_option("--k", ex1_k)->capture_default_str();

  std::string ex2_beta = "-2:0:0.02", ex2_s = "2:5:0.05";
  double ex2_q = 0.5, ex2_k = std::sqrt(6.0) / 2.0;
  auto* ex2 = app.add_subcommand("example2", "concurrence polygamy bound against the mean comparator on the second example state");
  add_common(ex2, ex2c);
  ex2->add_option("--beta-grid", ex2_beta, "beta grid min:max:step")->capture_default_str();
  ex2->add_option("--s-grid", ex2_s, "s grid min:max:step")->capture_default_str();
  ex2->add_option("--q", ex2_q)->capture_default_str();
  ex2->add_option("--k", ex2_k)->capture_default_str();

  // verify-mono
  Common vmc;
  qcorr_verify_config mono{};
  qcorr_verify_config_default(&mono);
  mono.params.p = 0.5;
  mono.params.k = std::sqrt(2.0);
  auto* vm = app.add_subcommand("verify-mono", "Monte-Carlo check of the monogamy bounds on Haar-random states");
  add_common(vm, vmc);
  vm->add_option("--n-qubits", mono.n_qubits, "3 or 4")->capture_default_str();
  vm->add_option("--p", mono.params.p)->capture_default_str();
  vm->add_option("--k", mono.params.k)->capture_default_str();
  vm->add_option("--alpha", mono.params.alpha)->capture_default_str();
  vm->add_option("--r", mono.params.r)->capture_default_str();
  vm->add_option("--threads", mono.threads, "worker threads, 0 = all cores")->capture_default_str();
  vm->add_option("--restarts", mono.budget.restarts, "convex-roof restarts")->capture_default_str();

  // verify-poly
  Common vpc;
  qcorr_verify_config poly{};
  qcorr_verify_config_default(&poly);
  poly.samples = 1000;
  poly.params.q = 0.5;
  poly.params.beta = 2.0;
  poly.params.s = 1.0;
  std::string poly_measure = "noa";
  auto* vp = app.add_subcommand("verify-poly", "Monte-Carlo check of the polygamy bounds on Haar-random 3-qubit states");
  add_common(vp, vpc);
  vp->add_option("--measure", poly_measure, "noa or concurrence")->capture_default_str();
  vp->add_option("--q", poly.params.q)->capture_default_str();
  vp->add_option("--k", poly.params.k)->capture_default_str();
  vp->add_option("--beta", poly.params.beta)->capture_default_str();
  vp->add_option("--s", poly.params.s)->capture_default_str();
  vp->add_option("--threads", poly.threads)->capture_default_str();
  vp->add_option("--restarts", poly.budget.restarts, "convex-roof restarts")->capture_default_str();

  // lemma-grid
  Common lgc;
  int lemma = 1;
  auto* lg = app.add_subcommand("lemma-grid", "evaluate a lemma gap over its parameter grid");
  add_common(lg, lgc);
  lg->add_option("--lemma", lemma, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();

  // sweep
  Common swc;
  auto* sw = app.add_subcommand("sweep", "evaluate a pair bound over exponent grids for example or random states");
  add_common(sw, swc);

  // measure
  std::string state_path, measure_name = "concurrence";
  std::vector<std::size_t> side_a{0};
  auto* ms = app.add_subcommand("measure", "evaluate a measure on a pure state stored as JSON");
  ms->add_option("--state", state_path, "state JSON {factor_dims, re, im}")->required();
  ms->add_option("--measure", measure_name)->capture_default_str();
  ms->add_option("--side-a", side_a, "factor indices on side A")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    qcorr_summary summary{};
    if (ex1->parsed()) {
      const Json cfg = load_config(ex1c.config);
      take(cfg, "p", ex1_p);
      take(cfg, "k", ex1_k);
      const qcorr_grid alpha = grid_from(cfg, "exponent_grid", parse_grid(ex1_alpha));
      const qcorr_grid r = grid_from(cfg, "r_grid", parse_grid(ex1_r));
      std::string out = ex1c.out.empty() ? "example1.csv" : ex1c.out;
      warn_unused("--seed", ex1c.seed.has_value(), "example1");
      warn_unused("--samples", ex1c.samples.has_value(), "example1");
      warn_unused("--tolerance", ex1c.tolerance.has_value(), "example1");
      return report(qcorr_run_example1(&alpha, &r, ex1_p, ex1_k, out.c_str(), &summary), summary);
    }
    if (ex2->parsed()) {
      const Json cfg = load_config(ex2c.config);
      take(cfg, "q", ex2_q);
      take(cfg, "k", ex2_k);
      const qcorr_grid beta = grid_from(cfg, "exponent_grid", parse_grid(ex2_beta));
      const qcorr_grid s = grid_from(cfg, "s_grid", parse_grid(ex2_s));
      std::string out = ex2c.out.empty() ? "example2.csv" : ex2c.out;
      warn_unused("--seed", ex2c.seed.has_value(), "example2");
      warn_unused("--samples", ex2c.samples.has_value(), "example2");
      warn_unused("--tolerance", ex2c.tolerance.has_value(), "example2");
      return report(qcorr_run_example2(&beta, &s, ex2_q, ex2_k, out.c_str(), &summary), summary);
    }
    if (vm->parsed() || vp->parsed()) {
      const bool is_mono = vm->parsed();
      Common& c = is_mono ? vmc : vpc;
      qcorr_verify_config& vc = is_mono ? mono : poly;
      const Json cfg = load_config(c.config);
      take_params(cfg, vc.params);
      take(cfg, "samples", vc.samples);
      take(cfg, "seed", vc.seed);
      take(cfg, "n_qubits", vc.n_qubits);
      take(cfg, "tolerance", vc.tolerance);
      take(cfg, "measure", poly_measure);
      const qcorr_measure kind = is_mono ? QCORR_MEASURE_CONCURRENCE : measure_from(poly_measure);
      if (!is_mono && !c.tolerance && !cfg.contains("tolerance") && kind == QCORR_MEASURE_NEGATIVITY_OF_ASSISTANCE) {
        vc.tolerance = 5e-3;
      }
      if (c.samples) vc.samples = *c.samples;
      if (c.seed) vc.seed = *c.seed;
      if (c.tolerance) vc.tolerance = *c.tolerance;
      const qcorr_status status = is_mono ? qcorr_verify_monogamy(&vc, &summary) : qcorr_verify_polygamy(&vc, kind, &summary);
      if (status == QCORR_OK && !c.out.empty()) write_summary_csv(c.out, summary);
      return report(status, summary);
    }
    if (lg->parsed()) {
      warn_unused("--seed", lgc.seed.has_value(), "lemma-grid");
      warn_unused("--samples", lgc.samples.has_value(), "lemma-grid");
      warn_unused("--tolerance", lgc.tolerance.has_value(), "lemma-grid");
      const std::string cfg = lgc.config.empty() ? std::string() : load_config(lgc.config).dump();
      const qcorr_status status = qcorr_lemma_grid(lemma, lgc.config.empty() ? nullptr : cfg.c_str(), &summary);
      if (status == QCORR_OK && !lgc.out.empty()) write_summary_csv(lgc.out, summary);
      return report(status, summary);
    }
    if (sw->parsed()) {
      Json cfg = load_config(swc.config);
      if (swc.seed) {
        cfg["seed"] = *swc.seed;
        if (cfg.contains("source") && cfg["source"].is_object()) cfg["source"]["seed"] = *swc.seed;
      }
      if (swc.samples) {
        if (!cfg.contains("source") || !cfg["source"].is_object()) cfg["source"] = Json{{"kind", "random"}};
        cfg["source"]["count"] = *swc.samples;
      }
      if (swc.tolerance) cfg["tolerance"] = *swc.tolerance;
      std::string out = swc.out;
      if (out.empty() && !cfg.contains("out")) out = "sweep.csv";
      const std::string text = cfg.dump();
      return report(qcorr_sweep(text.c_str(), out.empty() ? nullptr : out.c_str(), &summary), summary);
    }
    if (ms->parsed()) {
      const std::string text = read_file(state_path);
      qcorr_pure_state* state = nullptr;
      qcorr_status status = qcorr_pure_state_from_json(text.c_str(), &state);
      double value = 0.0;
      if (status == QCORR_OK) {
        status = qcorr_measure_pure(state, side_a.data(), side_a.size(), measure_from(measure_name), &value);
        qcorr_pure_state_free(state);
      }
      if (status != QCORR_OK) {
        std::cerr << "error: " << qcorr_last_error() << "\n";
        return kExitConfig;
      }
      std::cout << Json{{"measure", measure_name}, {"side_a", side_a}, {"value", value}}.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
