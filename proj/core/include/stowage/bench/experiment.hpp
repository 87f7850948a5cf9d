#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stowage/bench/outputs.hpp"
#include "stowage/rl/train.hpp"

namespace stowage::bench {

// Experiment JSON schema; every key is optional except "scenario":
//
//   {
//     "scenario": 1..8 | { ScenarioSpec object },
//     "env": "spge" | "spge-mc" | "spaec",          default spge
//     "algo": "dqn" | "qrdqn" | "a2c" | "ppo" | "trpo",  default ppo
//     "repetitions": R,             default 10 (spge) or 30 (multi-crane)
//     "total_timesteps": T,         default 20000
//     "eval_every": E,              default 200 (scenario 6), 500 (7, 8), else 1000
//     "eval_episodes": N,           default 10
//     "seed": S,                    default 0; repetition i uses S + i
//     "output_dir": "path",         default "results"
//     "algo_config": { AlgoConfig overrides },
//     "env_options": { "invalid_penalty", "normalize_observations",
//                      "time_weight", "time_model": {"load_seconds", "shift_seconds"} }
//   }
struct ExperimentConfig {
  std::optional<int> scenario_id = 1;
  ScenarioSpec custom_scenario;  // used when scenario_id is empty
  EnvVariant variant = EnvVariant::kSpge;
  rl::Algorithm algorithm = rl::Algorithm::kPpo;
  std::optional<int> repetitions;
  long total_timesteps = 20'000;
  std::optional<long> eval_every;
  int eval_episodes = 10;
  std::uint64_t base_seed = 0;
  std::filesystem::path output_dir = "results";
  rl::AlgoConfig algo;
  EnvOptions env_options{.normalize_observations = true, .time = {}};

  ScenarioSpec scenario() const;
  std::string scenario_label() const;  // registry id or "custom"
  int resolved_repetitions() const;
  long resolved_eval_every() const;
  rl::TrainSpec train_spec(int repetition) const;

  // Rejects every invariant violation with a ConfigError.
  void validate() const;
};

ExperimentConfig experiment_from_json(const nlohmann::json& j);
nlohmann::json experiment_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_experiment(const std::filesystem::path& path);

struct RunHooks {
  // Worker threads; 0 reads STOWAGE_WORKERS (default 1).
  int workers = 0;
  // Called after each repetition finishes (from the worker thread, serialized).
  std::function<void(int repetition, const rl::RunRecord&, bool resumed)> on_run;
};

int workers_from_environment();

// Trains every repetition, persisting each record as
// output_dir/runs/run_<i>.json the moment it completes. Records already on
// disk with an identical resolved configuration are reused.
std::vector<rl::RunRecord> run_experiment(const ExperimentConfig& cfg, const RunHooks& hooks = {});

// curves.csv rows of the records, run_id = repetition index.
std::vector<CurveRow> curve_rows(const ExperimentConfig& cfg, const std::vector<rl::RunRecord>& records);

}  // namespace stowage::bench
