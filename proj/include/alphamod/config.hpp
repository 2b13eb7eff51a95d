#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "alphamod/errors.hpp"
#include "alphamod/rational.hpp"

namespace alphamod {

// A selected experiment plus the knobs a config may override. Absent knobs
// keep the experiment's published defaults.
struct ExperimentChoice {
  std::string name;
  std::optional<int> trials;          // sample count where the experiment draws instances
  std::optional<double> slope_tol;    // scaling-fit tolerance
  std::optional<double> spread_bound; // equivalence ratio spread bound
};

struct RunConfig {
  double grid_L = 256.0;
  std::size_t grid_N = 65536;
  Rational alpha{1, 2};
  double cov_c = 0.45;
  double cov_C = 0.0;  // 0 keeps the alpha-dependent covering default
  long long K_max = 64;
  std::uint64_t seed = 1;
  std::string out_dir = "runs";
  double band_guard = 1e-10;
  int zoom_oversample = 8;
  std::vector<ExperimentChoice> experiments;  // empty selects the full suite
};

// Registry of experiment names the runner understands, in suite order.
inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "covering-verification", "plancherel",        "dilation-scaling",
      "shell-cardinality",     "comb-equivalence",  "atom-bounds",
      "sharpness-probe",       "direction-probe",   "endpoint-divergence",
      "hardy-consistency",     "young-scaling",
  };
  return names;
}

inline bool is_known_experiment(const std::string& name) {
  for (const auto& n : experiment_names())
    if (n == name) return true;
  return false;
}

// Top-level keys accepted by the validator; kept in lockstep with the
// published schema (a test compares the two).
inline const std::vector<std::string>& config_top_level_keys() {
  static const std::vector<std::string> keys = {
      "grid", "covering", "seed", "out_dir", "band_guard", "zoom_oversample", "experiments",
  };
  return keys;
}

namespace detail {

[[noreturn]] inline void config_fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

// JSON decimals are decimal literals; the shortest round-trip restores the
// literal so 0.45 means 9/20, not the nearest binary double.
inline Rational json_rational(const nlohmann::json& v, const std::string& field) {
  if (v.is_string()) {
    auto r = parse_rational(v.get<std::string>());
    if (!r) config_fail(field, "not a rational ('a/b', integer, or decimal)");
    return *r;
  }
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number_float()) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v.get<double>());
    auto r = parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    if (!r) config_fail(field, "decimal does not reduce to a rational");
    return *r;
  }
  config_fail(field, "expected a rational value");
}

inline void require_keys(const nlohmann::json& obj, const std::vector<std::string>& known,
                         const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const auto& k : known) ok = ok || k == key;
    if (!ok) config_fail(scope.empty() ? key : scope + "." + key, "unknown field");
  }
}

inline double positive_number(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) config_fail(field, "expected a number");
  const double d = v.get<double>();
  if (!(d > 0.0)) config_fail(field, "must be positive");
  return d;
}

}  // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& j) {
  if (!j.is_object()) detail::config_fail("config", "top level must be an object");
  detail::require_keys(j, config_top_level_keys(), "");
  RunConfig cfg;

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) detail::config_fail("grid", "expected an object");
    detail::require_keys(g, {"L", "N"}, "grid");
    if (g.contains("L")) cfg.grid_L = detail::positive_number(g["L"], "grid.L");
    if (g.contains("N")) {
      if (!g["N"].is_number_integer() || g["N"].get<std::int64_t>() < 8)
        detail::config_fail("grid.N", "expected an integer >= 8");
      const std::int64_t n = g["N"].get<std::int64_t>();
      if ((n & (n - 1)) != 0) detail::config_fail("grid.N", "must be a power of two");
      cfg.grid_N = static_cast<std::size_t>(n);
    }
  }

  if (j.contains("covering")) {
    const auto& c = j["covering"];
    if (!c.is_object()) detail::config_fail("covering", "expected an object");
    detail::require_keys(c, {"alpha", "c", "C", "K_max"}, "covering");
    if (c.contains("alpha")) {
      cfg.alpha = detail::json_rational(c["alpha"], "covering.alpha");
      if (cfg.alpha < 0 || cfg.alpha >= Rational(1))
        detail::config_fail("covering.alpha", "must lie in [0, 1)");
    }
    if (c.contains("c")) {
      cfg.cov_c = detail::positive_number(c["c"], "covering.c");
      if (cfg.cov_c >= 1.0) detail::config_fail("covering.c", "must lie in (0, 1)");
    }
    if (c.contains("C")) {
      if (!c["C"].is_number()) detail::config_fail("covering.C", "expected a number");
      cfg.cov_C = c["C"].get<double>();
      if (cfg.cov_C < 0.0) detail::config_fail("covering.C", "must be >= 0 (0 = default)");
    }
    if (c.contains("K_max")) {
      if (!c["K_max"].is_number_integer() || c["K_max"].get<std::int64_t>() < 1)
        detail::config_fail("covering.K_max", "expected an integer >= 1");
      cfg.K_max = c["K_max"].get<std::int64_t>();
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0)
      detail::config_fail("seed", "expected an integer >= 0");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string() || j["out_dir"].get<std::string>().empty())
      detail::config_fail("out_dir", "expected a nonempty string");
    cfg.out_dir = j["out_dir"].get<std::string>();
  }
  if (j.contains("band_guard")) {
    if (!j["band_guard"].is_number() || j["band_guard"].get<double>() < 0.0)
      detail::config_fail("band_guard", "expected a number >= 0");
    cfg.band_guard = j["band_guard"].get<double>();
  }
  if (j.contains("zoom_oversample")) {
    if (!j["zoom_oversample"].is_number_integer() || j["zoom_oversample"].get<std::int64_t>() < 0)
      detail::config_fail("zoom_oversample", "expected an integer >= 0");
    cfg.zoom_oversample = static_cast<int>(j["zoom_oversample"].get<std::int64_t>());
  }

  if (j.contains("experiments")) {
    if (!j["experiments"].is_array()) detail::config_fail("experiments", "expected an array");
    std::size_t i = 0;
    for (const auto& e : j["experiments"]) {
      const std::string field = "experiments[" + std::to_string(i) + "]";
      ExperimentChoice choice;
      if (e.is_string()) {
        choice.name = e.get<std::string>();
      } else if (e.is_object()) {
        detail::require_keys(e, {"name", "trials", "slope_tol", "spread_bound"}, field);
        if (!e.contains("name") || !e["name"].is_string())
          detail::config_fail(field + ".name", "required string");
        choice.name = e["name"].get<std::string>();
        if (e.contains("trials")) {
          if (!e["trials"].is_number_integer() || e["trials"].get<std::int64_t>() < 1)
            detail::config_fail(field + ".trials", "expected an integer >= 1");
          choice.trials = static_cast<int>(e["trials"].get<std::int64_t>());
        }
        if (e.contains("slope_tol"))
          choice.slope_tol = detail::positive_number(e["slope_tol"], field + ".slope_tol");
        if (e.contains("spread_bound"))
          choice.spread_bound =
              detail::positive_number(e["spread_bound"], field + ".spread_bound");
      } else {
        detail::config_fail(field, "expected a name or an object with a name");
      }
      if (!is_known_experiment(choice.name))
        detail::config_fail(field + ".name", "unknown experiment '" + choice.name + "'");
      cfg.experiments.push_back(std::move(choice));
      ++i;
    }
  }
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
  }
  return parse_run_config(j);
}

inline nlohmann::json run_config_to_json(const RunConfig& cfg) {
  nlohmann::json exps = nlohmann::json::array();
  for (const auto& e : cfg.experiments) {
    nlohmann::json o{{"name", e.name}};
    if (e.trials) o["trials"] = *e.trials;
    if (e.slope_tol) o["slope_tol"] = *e.slope_tol;
    if (e.spread_bound) o["spread_bound"] = *e.spread_bound;
    exps.push_back(std::move(o));
  }
  return {{"grid", {{"L", cfg.grid_L}, {"N", cfg.grid_N}}},
          {"covering",
           {{"alpha", to_string(cfg.alpha)},
            {"c", cfg.cov_c},
            {"C", cfg.cov_C},
            {"K_max", cfg.K_max}}},
          {"seed", cfg.seed},
          {"out_dir", cfg.out_dir},
          {"band_guard", cfg.band_guard},
          {"zoom_oversample", cfg.zoom_oversample},
          {"experiments", std::move(exps)}};
}

}  // namespace alphamod
