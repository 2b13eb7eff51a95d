#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "alphamod/config.hpp"
#include "alphamod/suite.hpp"

using namespace alphamod;
using nlohmann::json;

namespace {

std::string error_of(const json& j) {
  try {
    parse_run_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("an empty config yields the documented defaults") {
  const RunConfig cfg = parse_run_config(json::object());
  CHECK(cfg.grid_L == 256.0);
  CHECK(cfg.grid_N == 65536u);
  CHECK(cfg.alpha == Rational(1, 2));
  CHECK(cfg.cov_c == 0.45);
  CHECK(cfg.cov_C == 0.0);
  CHECK(cfg.K_max == 64);
  CHECK(cfg.seed == 1u);
  CHECK(cfg.out_dir == "runs");
  CHECK(cfg.zoom_oversample == 8);
  CHECK(cfg.experiments.empty());
}

TEST_CASE("rational config fields are read exactly") {
  SECTION("decimal literals recover the decimal fraction") {
    const auto cfg = parse_run_config(json{{"covering", {{"alpha", 0.45}}}});
    CHECK(cfg.alpha == Rational(9, 20));
  }
  SECTION("fraction strings") {
    const auto cfg = parse_run_config(json{{"covering", {{"alpha", "2/3"}}}});
    CHECK(cfg.alpha == Rational(2, 3));
  }
  SECTION("integers") {
    const auto cfg = parse_run_config(json{{"covering", {{"alpha", 0}}}});
    CHECK(cfg.alpha == Rational(0));
  }
}

TEST_CASE("config errors name the offending field") {
  CHECK(error_of(json{{"covering", {{"alpha", 1}}}}).find("covering.alpha") !=
        std::string::npos);
  CHECK(error_of(json{{"covering", {{"alpha", "3/2"}}}}).find("covering.alpha") !=
        std::string::npos);
  CHECK(error_of(json{{"grid", {{"N", 100}}}}).find("grid.N") != std::string::npos);
  CHECK(error_of(json{{"grid", {{"M", 8}}}}).find("grid.M") != std::string::npos);
  CHECK(error_of(json{{"grids", json::object()}}).find("grids") != std::string::npos);
  CHECK(error_of(json{{"seed", -3}}).find("seed") != std::string::npos);
  CHECK(error_of(json{{"experiments", json::array({"no-such-thing"})}})
            .find("experiments[0].name") != std::string::npos);
  CHECK(error_of(json{{"experiments", json::array({{{"name", "plancherel"}, {"reps", 3}}})}})
            .find("experiments[0].reps") != std::string::npos);
}

TEST_CASE("experiment selections accept names and override objects") {
  const auto cfg = parse_run_config(json{
      {"experiments",
       json::array({"shell-cardinality",
                    {{"name", "comb-equivalence"}, {"trials", 4}, {"spread_bound", 5.0}}})}});
  REQUIRE(cfg.experiments.size() == 2);
  CHECK(cfg.experiments[0].name == "shell-cardinality");
  CHECK_FALSE(cfg.experiments[0].trials.has_value());
  CHECK(cfg.experiments[1].name == "comb-equivalence");
  CHECK(cfg.experiments[1].trials == 4);
  CHECK(cfg.experiments[1].spread_bound == 5.0);
}

TEST_CASE("configs load from disk and round-trip through JSON") {
  const std::string path = "config_roundtrip_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"grid": {"L": 64, "N": 4096}, "covering": {"alpha": "1/3", "K_max": 32},)"
        << R"( "seed": 7, "experiments": ["plancherel"]})";
  }
  const RunConfig cfg = load_run_config(path);
  CHECK(cfg.grid_L == 64.0);
  CHECK(cfg.grid_N == 4096u);
  CHECK(cfg.alpha == Rational(1, 3));
  CHECK(cfg.K_max == 32);
  CHECK(cfg.seed == 7u);

  const RunConfig back = parse_run_config(run_config_to_json(cfg));
  CHECK(back.alpha == cfg.alpha);
  CHECK(back.grid_N == cfg.grid_N);
  CHECK(back.seed == cfg.seed);
  REQUIRE(back.experiments.size() == 1);
  CHECK(back.experiments[0].name == "plancherel");

  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_run_config(path), ConfigError);
  CHECK_THROWS_AS(load_run_config("no_such_config_file.json"), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("the suite runner executes registry entries and rejects strangers") {
  RunConfig cfg;
  ExperimentChoice choice;
  choice.name = "shell-cardinality";
  const SuiteOutcome out = run_suite_experiment(choice, cfg);
  CHECK(out.name == "shell-cardinality");
  CHECK(out.pass);
  CHECK(out.reports.is_array());
  CHECK(out.reports.size() == 2);
  CHECK_FALSE(out.rows.empty());
  CHECK(out.seconds > 0.0);

  ExperimentChoice bogus;
  bogus.name = "not-an-experiment";
  CHECK_THROWS_AS(run_suite_experiment(bogus, cfg), ConfigError);
}

TEST_CASE("the shipped default config selects the full suite") {
  const RunConfig cfg =
      load_run_config(std::string(ALPHAMOD_SOURCE_DIR) + "/tools/default_config.json");
  REQUIRE(cfg.experiments.size() == experiment_names().size());
  for (std::size_t i = 0; i < cfg.experiments.size(); ++i)
    CHECK(cfg.experiments[i].name == experiment_names()[i]);
  CHECK(cfg.grid_L == 256.0);
  CHECK(cfg.grid_N == 65536u);
  CHECK(cfg.K_max == 64);
}

TEST_CASE("the published schema agrees with the loader") {
  std::ifstream in(std::string(ALPHAMOD_SOURCE_DIR) + "/tools/runconfig.schema.json");
  REQUIRE(in.good());
  json schema;
  in >> schema;

  CHECK(schema["additionalProperties"] == false);
  CHECK(schema["properties"]["grid"]["additionalProperties"] == false);
  CHECK(schema["properties"]["covering"]["additionalProperties"] == false);

  std::vector<std::string> schema_keys;
  for (const auto& [key, value] : schema["properties"].items()) {
    (void)value;
    schema_keys.push_back(key);
  }
  std::sort(schema_keys.begin(), schema_keys.end());
  std::vector<std::string> loader_keys = config_top_level_keys();
  std::sort(loader_keys.begin(), loader_keys.end());
  CHECK(schema_keys == loader_keys);

  std::vector<std::string> schema_names =
      schema["definitions"]["experimentName"]["enum"].get<std::vector<std::string>>();
  CHECK(schema_names == experiment_names());

  const auto& obj_form = schema["properties"]["experiments"]["items"]["oneOf"][1];
  CHECK(obj_form["additionalProperties"] == false);
  std::vector<std::string> override_keys;
  for (const auto& [key, value] : obj_form["properties"].items()) {
    (void)value;
    override_keys.push_back(key);
  }
  std::sort(override_keys.begin(), override_keys.end());
  CHECK(override_keys == std::vector<std::string>{"name", "slope_tol", "spread_bound", "trials"});
}
