#include "stowage/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include "stowage/bench/scenarios.hpp"
#include "stowage/errors.hpp"
#include "stowage/instance_json.hpp"

namespace stowage::bench {

namespace fs = std::filesystem;

namespace {

fs::path run_path(const ExperimentConfig& cfg, int repetition) {
  char name[32];
  std::snprintf(name, sizeof name, "run_%03d.json", repetition);
  return cfg.output_dir / "runs" / name;
}

std::optional<rl::RunRecord> load_existing(const fs::path& path, const nlohmann::json& config) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    auto record = j.get<rl::RunRecord>();
    if (record.config != config || record.curve.empty()) return std::nullopt;
    return record;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // truncated by an interrupted write; recompute
  }
}

void save_record(const fs::path& path, const rl::RunRecord& record) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << nlohmann::json(record).dump(1) << '\n';
  }
  fs::rename(tmp, path);
}

}  // namespace

ScenarioSpec ExperimentConfig::scenario() const {
  return scenario_id ? scenario_spec(*scenario_id) : custom_scenario;
}

std::string ExperimentConfig::scenario_label() const {
  return scenario_id ? std::to_string(*scenario_id) : "custom";
}

int ExperimentConfig::resolved_repetitions() const {
  if (repetitions) return *repetitions;
  return variant == EnvVariant::kSpge ? 10 : 30;
}

long ExperimentConfig::resolved_eval_every() const {
  if (eval_every) return *eval_every;
  if (scenario_id == 6) return 200;
  if (scenario_id == 7 || scenario_id == 8) return 500;
  return 1'000;
}

rl::TrainSpec ExperimentConfig::train_spec(int repetition) const {
  rl::TrainSpec t;
  t.scenario = scenario();
  t.variant = variant;
  t.env_options = env_options;
  t.algorithm = algorithm;
  t.algo = algo;
  t.total_timesteps = total_timesteps;
  t.eval_every = resolved_eval_every();
  t.eval_episodes = eval_episodes;
  t.seed = base_seed + static_cast<std::uint64_t>(repetition);
  return t;
}

void ExperimentConfig::validate() const {
  if (scenario_id) {
    check_variant(*scenario_id, variant);
  } else if (variant == EnvVariant::kSpge && custom_scenario.num_cranes != 1) {
    throw ConfigError("variant spge needs a single-crane scenario, got " +
                      std::to_string(custom_scenario.num_cranes) + " cranes");
  }
  if (resolved_repetitions() < 1) throw ConfigError("repetitions must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  train_spec(0).validate();
}

ExperimentConfig experiment_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  static const std::vector<std::string> known{
      "scenario",      "env",  "algo",       "repetitions", "total_timesteps", "eval_every",
      "eval_episodes", "seed", "output_dir", "algo_config", "env_options"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown experiment config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  try {
    if (!j.contains("scenario")) throw ConfigError("experiment config needs a \"scenario\"");
    const auto& s = j.at("scenario");
    if (s.is_number_integer()) {
      c.scenario_id = s.get<int>();
      scenario_spec(*c.scenario_id);  // rejects unknown ids
    } else {
      c.scenario_id.reset();
      c.custom_scenario = s.get<ScenarioSpec>();
    }
    if (j.contains("env")) c.variant = parse_env_variant(j.at("env").get<std::string>());
    if (j.contains("algo")) c.algorithm = rl::parse_algorithm(j.at("algo").get<std::string>());
    if (j.contains("repetitions")) c.repetitions = j.at("repetitions").get<int>();
    c.total_timesteps = j.value("total_timesteps", c.total_timesteps);
    if (j.contains("eval_every")) c.eval_every = j.at("eval_every").get<long>();
    c.eval_episodes = j.value("eval_episodes", c.eval_episodes);
    c.base_seed = j.value("seed", c.base_seed);
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("algo_config")) j.at("algo_config").get_to(c.algo);
    if (j.contains("env_options")) from_json(j.at("env_options"), c.env_options);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  return c;
}

nlohmann::json experiment_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  if (c.scenario_id) {
    j["scenario"] = *c.scenario_id;
  } else {
    j["scenario"] = c.custom_scenario;
  }
  j["env"] = std::string(to_string(c.variant));
  j["algo"] = std::string(rl::to_string(c.algorithm));
  j["repetitions"] = c.resolved_repetitions();
  j["total_timesteps"] = c.total_timesteps;
  j["eval_every"] = c.resolved_eval_every();
  j["eval_episodes"] = c.eval_episodes;
  j["seed"] = c.base_seed;
  j["output_dir"] = c.output_dir.string();
  j["algo_config"] = c.algo;
  nlohmann::json env;
  to_json(env, c.env_options);
  j["env_options"] = env;
  return j;
}

ExperimentConfig load_experiment(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return experiment_from_json(j);
}

int workers_from_environment() {
  const char* raw = std::getenv("STOWAGE_WORKERS");
  if (!raw || !*raw) return 1;
  char* end = nullptr;
  const long n = std::strtol(raw, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError("STOWAGE_WORKERS must be a positive integer");
  return static_cast<int>(n);
}

std::vector<rl::RunRecord> run_experiment(const ExperimentConfig& cfg, const RunHooks& hooks) {
  cfg.validate();
  const int reps = cfg.resolved_repetitions();
  const int workers = std::min(reps, hooks.workers > 0 ? hooks.workers : workers_from_environment());

  std::vector<rl::RunRecord> records(static_cast<std::size_t>(reps));
  std::atomic<int> next{0};
  std::mutex report;
  std::exception_ptr failure;

  auto worker = [&] {
    for (int i = next++; i < reps; i = next++) {
      try {
        const rl::TrainSpec spec = cfg.train_spec(i);
        const fs::path path = run_path(cfg, i);
        bool resumed = true;
        auto record = load_existing(path, rl::to_json(spec));
        if (!record) {
          resumed = false;
          record = rl::train(spec);
          save_record(path, *record);
        }
        records[static_cast<std::size_t>(i)] = std::move(*record);
        if (hooks.on_run) {
          std::lock_guard lock(report);
          hooks.on_run(i, records[static_cast<std::size_t>(i)], resumed);
        }
      } catch (...) {
        std::lock_guard lock(report);
        if (!failure) failure = std::current_exception();
        next = reps;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::vector<CurveRow> curve_rows(const ExperimentConfig& cfg, const std::vector<rl::RunRecord>& records) {
  std::vector<CurveRow> rows;
  const std::string scenario = cfg.scenario_label();
  const std::string algo(rl::to_string(cfg.algorithm));
  const std::string variant(to_string(cfg.variant));
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& s : records[i].curve) {
      rows.push_back({std::to_string(i), scenario, algo, variant, records[i].seed, s.timestep,
                      s.mean_shifters, s.mean_optime});
    }
  }
  return rows;
}

}  // namespace stowage::bench
