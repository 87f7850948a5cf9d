#pragma once

#include "stowage/env/environment.hpp"
#include "stowage/rng.hpp"

namespace stowage {

struct EpisodeKpis {
  int shifters = 0;
  double makespan = 0.0;
  int steps = 0;
};

// Uniform pick among mask-valid actions.
int random_action(const ActionMask& mask, Rng& rng);

// Mask-valid action whose container currently has the fewest shifters; ties go
// to the lowest action index.
int greedy_action(const Environment& env);

// Resets env with the instance and plays one full episode.
EpisodeKpis run_random_policy(Environment& env, const ProblemInstance& instance, Rng& rng);
EpisodeKpis run_greedy_policy(Environment& env, const ProblemInstance& instance);

}  // namespace stowage
