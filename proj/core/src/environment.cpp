#include "stowage/env/environment.hpp"

#include <nlohmann/json.hpp>

#include "stowage/env/multi_crane_env.hpp"
#include "stowage/env/spge_env.hpp"
#include "stowage/errors.hpp"

namespace stowage {

void TimeModel::validate() const {
  if (!(load_seconds > 0.0) || !(shift_seconds > 0.0)) {
    throw ConfigError("time model durations must be positive");
  }
}

std::string_view to_string(EnvVariant v) {
  switch (v) {
    case EnvVariant::kSpge:
      return "spge";
    case EnvVariant::kSpgeMc:
      return "spge-mc";
    case EnvVariant::kSpaec:
      return "spaec";
  }
  return "?";
}

EnvVariant parse_env_variant(std::string_view name) {
  if (name == "spge") return EnvVariant::kSpge;
  if (name == "spge-mc" || name == "spgemc") return EnvVariant::kSpgeMc;
  if (name == "spaec") return EnvVariant::kSpaec;
  throw ConfigError("unknown environment '" + std::string(name) +
                    "' (expected spge, spge-mc or spaec)");
}

void Environment::write_trace(int step_index, int action, const StepResult& r) const {
  if (trace_ == nullptr) return;
  nlohmann::json line = {{"step", step_index},
                         {"action", action},
                         {"shifters", r.info.shifters},
                         {"reward", r.reward},
                         {"invalid", r.info.invalid}};
  if (variant() != EnvVariant::kSpge) {
    line["crane"] = r.info.crane;
    line["t"] = r.info.clock;
    line["tau"] = r.info.crane_free_at;
    line["makespan"] = r.info.makespan;
  }
  *trace_ << line.dump() << '\n';
}

std::unique_ptr<Environment> make_environment(EnvVariant variant, const ScenarioSpec& shape,
                                              const EnvOptions& options) {
  switch (variant) {
    case EnvVariant::kSpge:
      if (shape.num_cranes != 1) throw ConfigError("spge requires exactly one crane");
      return std::make_unique<SpgeEnv>(shape, options);
    case EnvVariant::kSpgeMc:
      return std::make_unique<MultiCraneEnv>(shape, CraneControl::kComposite, options);
    case EnvVariant::kSpaec:
      return std::make_unique<MultiCraneEnv>(shape, CraneControl::kAgentCycle, options);
  }
  throw ConfigError("unknown environment variant");
}

}  // namespace stowage
