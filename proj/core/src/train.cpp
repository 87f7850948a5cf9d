#include "stowage/rl/train.hpp"

#include "stowage/errors.hpp"
#include "stowage/instance_json.hpp"
#include "stowage/rng.hpp"

namespace stowage {

void to_json(nlohmann::json& j, const EnvOptions& o) {
  j = {{"invalid_penalty", o.invalid_penalty},
       {"normalize_observations", o.normalize_observations},
       {"time_model", {{"load_seconds", o.time.load_seconds}, {"shift_seconds", o.time.shift_seconds}}},
       {"time_weight", o.time_weight}};
}

void from_json(const nlohmann::json& j, EnvOptions& o) {
  o.invalid_penalty = j.value("invalid_penalty", o.invalid_penalty);
  o.normalize_observations = j.value("normalize_observations", o.normalize_observations);
  o.time_weight = j.value("time_weight", o.time_weight);
  if (j.contains("time_model")) {
    const auto& t = j.at("time_model");
    o.time.load_seconds = t.value("load_seconds", o.time.load_seconds);
    o.time.shift_seconds = t.value("shift_seconds", o.time.shift_seconds);
  }
}

}  // namespace stowage

namespace stowage::rl {

namespace {

enum Stream : std::uint64_t { kAgentStream = 1, kTrainStream = 2, kEvalStream = 3 };

ProblemInstance instance_for(const ScenarioSpec& shape, std::uint64_t run_seed, Stream stream,
                             std::uint64_t index) {
  ScenarioSpec s = shape;
  s.seed = derive_seed(derive_seed(run_seed, stream), index);
  return generate_instance(s);
}

}  // namespace

void TrainSpec::validate() const {
  scenario.validate();
  env_options.time.validate();
  algo.validate();
  if (variant == EnvVariant::kSpge && scenario.num_cranes != 1) {
    throw ConfigError("spge needs exactly one crane");
  }
  if (total_timesteps < 0) throw ConfigError("total_timesteps must be >= 0");
  if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
}

nlohmann::json to_json(const TrainSpec& spec) {
  nlohmann::json j;
  j["scenario"] = spec.scenario;
  j["variant"] = std::string(to_string(spec.variant));
  j["env"] = spec.env_options;
  j["algorithm"] = std::string(to_string(spec.algorithm));
  j["algo"] = spec.algo;
  j["total_timesteps"] = spec.total_timesteps;
  j["eval_every"] = spec.eval_every;
  j["eval_episodes"] = spec.eval_episodes;
  j["seed"] = spec.seed;
  return j;
}

const CurveSample& RunRecord::final_sample() const {
  if (curve.empty()) throw ContractViolation("run record has no curve samples");
  return curve.back();
}

void to_json(nlohmann::json& j, const RunRecord& r) {
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& c : r.curve) curve.push_back({c.timestep, c.mean_shifters, c.mean_optime});
  j = {{"seed", r.seed}, {"config", r.config}, {"curve", std::move(curve)}};
}

void from_json(const nlohmann::json& j, RunRecord& r) {
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config = j.at("config");
  r.curve.clear();
  for (const auto& c : j.at("curve")) {
    r.curve.push_back({c.at(0).get<long>(), c.at(1).get<double>(), c.at(2).get<double>()});
  }
}

ProblemInstance training_instance(const ScenarioSpec& shape, std::uint64_t run_seed, long episode) {
  return instance_for(shape, run_seed, kTrainStream, static_cast<std::uint64_t>(episode));
}

ProblemInstance evaluation_instance(const ScenarioSpec& shape, std::uint64_t run_seed, int index) {
  return instance_for(shape, run_seed, kEvalStream, static_cast<std::uint64_t>(index));
}

CurveSample evaluate(const Agent& agent, Environment& env, const ScenarioSpec& shape,
                     std::uint64_t run_seed, int episodes) {
  CurveSample s;
  for (int e = 0; e < episodes; ++e) {
    env.reset(evaluation_instance(shape, run_seed, e));
    while (!env.done()) env.advance(agent.act_greedy(env.observe(), env.action_mask()));
    s.mean_shifters += env.episode_shifters();
    s.mean_optime += env.makespan();
  }
  s.mean_shifters /= episodes;
  s.mean_optime /= episodes;
  return s;
}

RunRecord train(const TrainSpec& spec, AgentStats* stats_out) {
  spec.validate();
  auto env = make_environment(spec.variant, spec.scenario, spec.env_options);
  auto eval_env = env->clone();

  const AgentContext ctx{env->observation_size(), env->action_count(), spec.total_timesteps,
                         derive_seed(spec.seed, kAgentStream)};
  auto agent = make_agent(spec.algorithm, spec.algo, ctx);

  RunRecord record;
  record.seed = spec.seed;
  record.config = to_json(spec);
  auto sample_at = [&](long t) {
    CurveSample s = evaluate(*agent, *eval_env, spec.scenario, spec.seed, spec.eval_episodes);
    s.timestep = t;
    record.curve.push_back(s);
  };

  sample_at(0);
  long episode = 0;
  env->reset(training_instance(spec.scenario, spec.seed, episode));
  Observation obs = env->observe();
  ActionMask mask = env->action_mask();
  for (long t = 1; t <= spec.total_timesteps; ++t) {
    Transition tr;
    tr.action = agent->act(obs, mask);
    StepResult r = env->step(tr.action);
    tr.obs = std::move(obs);
    tr.mask = std::move(mask);
    tr.reward = r.reward;
    tr.done = r.done;
    tr.next_obs = std::move(r.observation);
    if (r.done) {
      tr.next_mask.assign(tr.mask.size(), 0);
      env->reset(training_instance(spec.scenario, spec.seed, ++episode));
      obs = env->observe();
    } else {
      tr.next_mask = env->action_mask();
      obs = tr.next_obs;
    }
    mask = env->action_mask();
    agent->observe(tr);
    if (t % spec.eval_every == 0 || t == spec.total_timesteps) sample_at(t);
  }
  if (stats_out) *stats_out = agent->stats();
  return record;
}

}  // namespace stowage::rl
