#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "stowage/env/environment.hpp"
#include "stowage/rl/algo_config.hpp"
#include "stowage/rl/batch.hpp"

namespace stowage::rl {

struct AgentContext {
  int observation_size = 0;
  int action_count = 0;
  long total_timesteps = 0;  // drives the epsilon schedule
  std::uint64_t seed = 0;
};

struct AgentStats {
  std::uint64_t updates = 0;
  double last_loss = 0.0;
  // TRPO: measured KL of every accepted step, and how many steps were rejected.
  std::vector<double> accepted_kls;
  int rejected_steps = 0;
};

// A learner driven step by step by the training loop.
class Agent {
 public:
  virtual ~Agent() = default;

  // Behaviour policy (epsilon-greedy or sampling); never returns a masked action.
  virtual int act(const Observation& obs, const ActionMask& mask) = 0;
  // Deterministic evaluation policy: masked argmax of Q or of the logits.
  virtual int act_greedy(const Observation& obs, const ActionMask& mask) const = 0;
  // Feeds the transition produced by the last act(); may trigger an update.
  virtual void observe(const Transition& t) = 0;

  virtual const AgentStats& stats() const noexcept = 0;
};

std::unique_ptr<Agent> make_agent(Algorithm algo, const AlgoConfig& cfg, const AgentContext& ctx);

}  // namespace stowage::rl
