#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stowage/env/environment.hpp"
#include "stowage/env/observation.hpp"

namespace stowage {

struct CraneState {
  double free_at = 0.0;  // tau: simulated time the crane becomes idle
  int operating = -1;    // yard-origin slot of the container being handled, -1 when idle
  std::size_t cursor = 0;
};

enum class CraneControl {
  kComposite,   // one agent picks (container, crane) pairs
  kAgentCycle,  // one agent per crane, activated lowest index first
};

// Multi-crane stowage with a discrete-event clock.
//
// Each crane owns a contiguous slice of the sequencer. A decision is only ever
// requested when some crane is idle and still has targets; after every valid
// action the clock jumps to the next crane release until that holds again.
//
// Observation = vessel records, yard records, descriptor of the acting crane's
// target, then per-crane availability (tau - t), operating container and
// current target slot (-1 when exhausted). Agent-cycle mode appends a one-hot
// of the active crane.
class MultiCraneEnv final : public Environment {
 public:
  MultiCraneEnv(const ScenarioSpec& shape, CraneControl control, const EnvOptions& options = {});

  EnvVariant variant() const noexcept override;
  int observation_size() const noexcept override { return encoder_.size(); }
  int action_count() const noexcept override;

  void reset(const ProblemInstance& instance) override;
  Observation observe() const override;
  ActionMask action_mask() const override;
  StepResult advance(int action) override;
  bool done() const noexcept override { return done_; }

  int container_of(int action) const noexcept override { return action % yard_capacity_; }
  const GridState& yard() const noexcept override { return yard_; }
  const GridState& vessel() const noexcept override { return vessel_; }

  int episode_shifters() const override;
  // Largest crane release time at the end of the episode.
  double makespan() const override;

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<MultiCraneEnv>(*this);
  }

  CraneControl control() const noexcept { return control_; }
  int crane_count() const noexcept { return static_cast<int>(cranes_.size()); }
  double clock() const noexcept { return clock_; }
  const std::vector<CraneState>& cranes() const noexcept { return cranes_; }
  double makespan_so_far() const noexcept;

  bool crane_idle(int crane) const noexcept;
  bool crane_exhausted(int crane) const noexcept;
  std::optional<int> crane_target(int crane) const noexcept;
  // Lowest-index idle crane that still has targets; nullopt once done.
  std::optional<int> active_crane() const noexcept;

  int encode_action(int container, int crane) const noexcept {
    return crane * yard_capacity_ + container;
  }
  std::pair<int, int> decode_action(int action) const noexcept {
    return {action % yard_capacity_, action / yard_capacity_};
  }
  // Resolves an action to (container, crane) under the current control mode.
  std::pair<int, int> resolve(int action) const noexcept;
  bool is_valid(int action) const noexcept;

 private:
  bool pair_valid(int container, int crane) const noexcept;
  void auto_advance();

  ScenarioSpec shape_;
  CraneControl control_;
  EnvOptions options_;
  ObservationEncoder encoder_;
  int yard_capacity_ = 0;

  GridState vessel_;
  GridState yard_;
  std::vector<std::vector<int>> partition_;
  std::vector<CraneState> cranes_;
  double clock_ = 0.0;
  int shifters_ = 0;
  int steps_ = 0;
  bool done_ = false;
};

}  // namespace stowage
