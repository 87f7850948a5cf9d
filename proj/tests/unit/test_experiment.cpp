#include <doctest.h>

#include <fstream>

#include "stowage/bench/experiment.hpp"
#include "stowage/bench/scenarios.hpp"
#include "stowage/errors.hpp"
#include "stowage/instance_json.hpp"
#include "temp_dir.hpp"

using namespace stowage;
using namespace stowage::bench;
using nlohmann::json;

namespace {

ExperimentConfig tiny(const std::filesystem::path& out) {
  ExperimentConfig c = experiment_from_json(
      json{{"scenario", 1}, {"algo", "a2c"}, {"repetitions", 2}, {"total_timesteps", 120},
           {"eval_every", 60}, {"eval_episodes", 2}, {"seed", 40}, {"output_dir", out.string()},
           {"algo_config", {{"hidden", {16}}}}});
  return c;
}

}  // namespace

TEST_CASE("scenario registry") {
  CHECK(scenario_ids() == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
  for (int id : scenario_ids()) CHECK_NOTHROW(scenario_spec(id).validate());
  CHECK(scenario_spec(7).num_containers == 200);
  CHECK(scenario_spec(7).num_cranes == 3);
  CHECK_FALSE(is_multi_crane_scenario(1));
  CHECK(is_multi_crane_scenario(6));
  try {
    scenario_spec(9);
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("1-8") != std::string::npos);
  }
  CHECK_THROWS_AS(check_variant(6, EnvVariant::kSpge), ConfigError);
  CHECK_NOTHROW(check_variant(6, EnvVariant::kSpgeMc));
  CHECK_NOTHROW(check_variant(1, EnvVariant::kSpge));
}

TEST_CASE("defaults resolve per scenario and variant") {
  ExperimentConfig c = experiment_from_json(json{{"scenario", 6}, {"env", "spaec"}});
  CHECK(c.resolved_repetitions() == 30);
  CHECK(c.resolved_eval_every() == 200);
  CHECK(c.total_timesteps == 20000);
  CHECK(c.env_options.normalize_observations);
  CHECK(c.scenario_label() == "6");
  c = experiment_from_json(json{{"scenario", 7}, {"env", "spge-mc"}});
  CHECK(c.resolved_eval_every() == 500);
  c = experiment_from_json(json{{"scenario", 3}});
  CHECK(c.resolved_repetitions() == 10);
  CHECK(c.resolved_eval_every() == 1000);
  CHECK(c.algorithm == rl::Algorithm::kPpo);
  CHECK(c.train_spec(4).seed == 4);
}

TEST_CASE("config json round trip") {
  const ExperimentConfig c = experiment_from_json(
      json{{"scenario", 2}, {"algo", "qrdqn"}, {"seed", 9}, {"repetitions", 3},
           {"algo_config", {{"gamma", 0.9}, {"qrdqn", {{"quantiles", 16}}}}},
           {"env_options", {{"time_weight", 0.25}, {"time_model", {{"shift_seconds", 40}}}}}});
  CHECK(c.algo.gamma == 0.9);
  CHECK(c.algo.qrdqn.quantiles == 16);
  CHECK(c.env_options.time.shift_seconds == 40);
  CHECK(c.env_options.time.load_seconds == 60);
  CHECK(c.env_options.time_weight == 0.25);
  const json j = experiment_to_json(c);
  CHECK(experiment_to_json(experiment_from_json(j)) == j);
  CHECK(rl::to_json(experiment_from_json(j).train_spec(1)) == rl::to_json(c.train_spec(1)));
}

TEST_CASE("custom scenario objects") {
  const ScenarioSpec s = scenario_spec(6);
  const ExperimentConfig c = experiment_from_json(json{{"scenario", s}, {"env", "spaec"}});
  CHECK_FALSE(c.scenario_id.has_value());
  CHECK(c.scenario() == s);
  CHECK(c.scenario_label() == "custom");
  CHECK(c.resolved_eval_every() == 1000);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(experiment_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"env", "spge"}}), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 1}, {"algorithm", "ppo"}}), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 12}}), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 1}, {"algo", "sac"}}), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 1}, {"env", "gym"}}), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 1}, {"repetitions", "many"}}), ConfigError);

  // crane-count mismatch between the variant and the scenario
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 7}, {"env", "spge"}}).validate(), ConfigError);
  ScenarioSpec multi = scenario_spec(1);
  multi.num_cranes = 2;
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", multi}}).validate(), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 1}, {"repetitions", 0}}).validate(), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 1}, {"eval_every", 0}}).validate(), ConfigError);
  CHECK_THROWS_AS(experiment_from_json(json{{"scenario", 1}, {"algo_config", {{"gamma", 1.5}}}}).validate(),
                  ConfigError);
  CHECK_THROWS_AS(load_experiment("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("load experiment from disk") {
  TempDir tmp;
  std::ofstream(tmp / "exp.json") << R"({"scenario": 4, "algo": "trpo", "seed": 3})";
  const ExperimentConfig c = load_experiment(tmp / "exp.json");
  CHECK(c.scenario_id == 4);
  CHECK(c.algorithm == rl::Algorithm::kTrpo);
  std::ofstream(tmp / "broken.json") << "{ not json";
  CHECK_THROWS_AS(load_experiment(tmp / "broken.json"), ConfigError);
}

TEST_CASE("runs persist, resume and match serial results") {
  TempDir tmp;
  const ExperimentConfig c = tiny(tmp / "out");
  int fresh = 0, resumed = 0;
  RunHooks hooks{1, [&](int, const rl::RunRecord&, bool again) { again ? ++resumed : ++fresh; }};
  const auto first = run_experiment(c, hooks);
  CHECK(fresh == 2);
  CHECK(std::filesystem::exists(tmp / "out" / "runs" / "run_000.json"));
  CHECK(std::filesystem::exists(tmp / "out" / "runs" / "run_001.json"));

  const auto second = run_experiment(c, hooks);
  CHECK(resumed == 2);
  REQUIRE(second.size() == 2);
  for (int i = 0; i < 2; ++i) CHECK(second[i].curve == first[i].curve);

  // a changed configuration retrains instead of reusing stale records
  ExperimentConfig other = c;
  other.base_seed = 41;
  fresh = 0;
  const auto third = run_experiment(other, hooks);
  CHECK(fresh == 2);
  CHECK(third[0].curve == first[1].curve);  // seed 41 is repetition 1 of the first run

  // two workers produce the same records as one
  TempDir par;
  ExperimentConfig threaded = tiny(par / "out");
  const auto parallel = run_experiment(threaded, {2, {}});
  for (int i = 0; i < 2; ++i) CHECK(parallel[i].curve == first[i].curve);

  const auto rows = curve_rows(c, first);
  CHECK(rows.size() == 2 * first[0].curve.size());
  CHECK(rows.front().run_id == "0");
  CHECK(rows.back().run_id == "1");
  CHECK(rows.front().algo == "a2c");
  CHECK(rows.front().variant == "spge");
  CHECK(rows.back().seed == 41);
}

TEST_CASE("worker count from the environment") {
  ::setenv("STOWAGE_WORKERS", "3", 1);
  CHECK(workers_from_environment() == 3);
  ::setenv("STOWAGE_WORKERS", "zero", 1);
  CHECK_THROWS_AS(workers_from_environment(), ConfigError);
  ::unsetenv("STOWAGE_WORKERS");
  CHECK(workers_from_environment() == 1);
}
