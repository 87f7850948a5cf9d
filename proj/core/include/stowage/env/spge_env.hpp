#pragma once

#include "stowage/env/environment.hpp"
#include "stowage/env/observation.hpp"

namespace stowage {

// Single-crane environment. A sequencer walks the target vessel slots; each
// action picks the yard slot whose container is stowed into the current target.
//
// Reward is -shifters for a valid pick. A masked-out pick costs
// -invalid_penalty and leaves the state (including the sequencer) untouched.
class SpgeEnv final : public Environment {
 public:
  explicit SpgeEnv(const ScenarioSpec& shape, const EnvOptions& options = {});

  EnvVariant variant() const noexcept override { return EnvVariant::kSpge; }
  int observation_size() const noexcept override { return encoder_.size(); }
  int action_count() const noexcept override { return shape_.yard.capacity(); }

  void reset(const ProblemInstance& instance) override;
  Observation observe() const override;
  ActionMask action_mask() const override;
  StepResult advance(int action) override;
  bool done() const noexcept override { return cursor_ >= targets_.size(); }

  int container_of(int action) const noexcept override { return action; }
  const GridState& yard() const noexcept override { return yard_; }
  const GridState& vessel() const noexcept override { return vessel_; }

  int episode_shifters() const override;
  // Serial operation time of the single crane under the time model.
  double makespan() const override;

  std::unique_ptr<Environment> clone() const override { return std::make_unique<SpgeEnv>(*this); }

  std::optional<int> current_target() const noexcept;
  bool is_valid(int action) const noexcept;
  int valid_steps() const noexcept { return static_cast<int>(cursor_); }

 private:
  ScenarioSpec shape_;
  EnvOptions options_;
  ObservationEncoder encoder_;

  GridState vessel_;
  GridState yard_;
  std::vector<int> targets_;
  std::size_t cursor_ = 0;
  int shifters_ = 0;
  int steps_ = 0;
};

}  // namespace stowage
