#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "stowage/grid.hpp"
#include "stowage/instance.hpp"

namespace stowage {

using Observation = std::vector<double>;
// One entry per action; 1 = valid.
using ActionMask = std::vector<std::uint8_t>;

// Crane operation duration: one lift plus a fixed cost per shifter.
struct TimeModel {
  double load_seconds = 60.0;
  double shift_seconds = 50.0;

  double duration(int shifters) const noexcept { return load_seconds + shifters * shift_seconds; }
  void validate() const;
};

struct EnvOptions {
  double invalid_penalty = 100.0;
  // Min-max scale every feature to [0, 1] using bounds implied by the scenario.
  bool normalize_observations = false;
  TimeModel time;
  // Multi-crane only: reward = -shifters - time_weight * (makespan increase / load_seconds).
  double time_weight = 0.5;
};

struct StepInfo {
  int shifters = 0;
  bool invalid = false;
  int crane = 0;
  int container = -1;  // yard slot the action picked
  double clock = 0.0;
  double crane_free_at = 0.0;
  double makespan = 0.0;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

enum class EnvVariant { kSpge, kSpgeMc, kSpaec };

std::string_view to_string(EnvVariant v);
EnvVariant parse_env_variant(std::string_view name);

// Common surface of the three environments. An environment is built for one
// ScenarioSpec shape (grid sizes, groups, cranes) and can be reset with any
// instance of that shape.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual EnvVariant variant() const noexcept = 0;
  virtual int observation_size() const noexcept = 0;
  virtual int action_count() const noexcept = 0;

  virtual void reset(const ProblemInstance& instance) = 0;
  virtual Observation observe() const = 0;
  virtual ActionMask action_mask() const = 0;
  // Applies one action and returns the next observation. Throws
  // ContractViolation once the episode is done.
  StepResult step(int action) {
    StepResult r = advance(action);
    r.observation = observe();
    return r;
  }
  // step() without building the observation; search code uses this.
  virtual StepResult advance(int action) = 0;
  virtual bool done() const noexcept = 0;

  // Yard slot an action refers to.
  virtual int container_of(int action) const noexcept = 0;
  virtual const GridState& yard() const noexcept = 0;
  virtual const GridState& vessel() const noexcept = 0;

  // KPIs; both throw ContractViolation before the episode is done.
  virtual int episode_shifters() const = 0;
  virtual double makespan() const = 0;

  virtual std::unique_ptr<Environment> clone() const = 0;

  // JSON-lines trace of every step; nullptr disables.
  void set_trace(std::ostream* sink) noexcept { trace_ = sink; }

 protected:
  void write_trace(int step_index, int action, const StepResult& r) const;

  std::ostream* trace_ = nullptr;
};

std::unique_ptr<Environment> make_environment(EnvVariant variant, const ScenarioSpec& shape,
                                              const EnvOptions& options = {});

}  // namespace stowage
