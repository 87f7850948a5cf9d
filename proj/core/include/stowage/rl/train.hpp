#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "stowage/env/environment.hpp"
#include "stowage/instance.hpp"
#include "stowage/rl/agent.hpp"
#include "stowage/rl/algo_config.hpp"

namespace stowage {

void to_json(nlohmann::json& j, const EnvOptions& o);
void from_json(const nlohmann::json& j, EnvOptions& o);

}  // namespace stowage

namespace stowage::rl {

struct TrainSpec {
  ScenarioSpec scenario;  // shape only; instance seeds are derived from `seed`
  EnvVariant variant = EnvVariant::kSpge;
  EnvOptions env_options{.normalize_observations = true, .time = {}};
  Algorithm algorithm = Algorithm::kPpo;
  AlgoConfig algo;
  long total_timesteps = 0;
  long eval_every = 1000;
  int eval_episodes = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

nlohmann::json to_json(const TrainSpec& spec);

struct CurveSample {
  long timestep = 0;
  double mean_shifters = 0.0;
  double mean_optime = 0.0;

  friend bool operator==(const CurveSample&, const CurveSample&) = default;
};

struct RunRecord {
  std::uint64_t seed = 0;
  nlohmann::json config;  // resolved TrainSpec
  std::vector<CurveSample> curve;

  const CurveSample& final_sample() const;
};

void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

// Instance played in training episode `episode` / evaluation episode `index` of
// the run with this seed. Evaluation instances are the same at every
// evaluation point of a run so curve points are comparable.
ProblemInstance training_instance(const ScenarioSpec& shape, std::uint64_t run_seed, long episode);
ProblemInstance evaluation_instance(const ScenarioSpec& shape, std::uint64_t run_seed, int index);

// Mean KPIs of the greedy policy over the run's evaluation instances.
CurveSample evaluate(const Agent& agent, Environment& env, const ScenarioSpec& shape,
                     std::uint64_t run_seed, int episodes);

// Learns for total_timesteps agent decisions, evaluating at t = 0, every
// eval_every decisions and at the end. Bit-reproducible from spec.seed.
RunRecord train(const TrainSpec& spec, AgentStats* stats_out = nullptr);

}  // namespace stowage::rl
