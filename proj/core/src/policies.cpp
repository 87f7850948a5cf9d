#include "stowage/oracle/policies.hpp"

#include <limits>

#include "stowage/errors.hpp"

namespace stowage {

namespace {

template <typename Pick>
EpisodeKpis play(Environment& env, const ProblemInstance& instance, Pick&& pick) {
  env.reset(instance);
  EpisodeKpis k;
  while (!env.done()) {
    env.advance(pick());
    ++k.steps;
  }
  k.shifters = env.episode_shifters();
  k.makespan = env.makespan();
  return k;
}

}  // namespace

int random_action(const ActionMask& mask, Rng& rng) {
  std::size_t valid = 0;
  for (auto m : mask) valid += m;
  if (valid == 0) throw ContractViolation("no valid action to sample");
  std::size_t pick = rng.uniform_index(valid);
  for (std::size_t a = 0; a < mask.size(); ++a) {
    if (mask[a] && pick-- == 0) return static_cast<int>(a);
  }
  return -1;  // unreachable
}

int greedy_action(const Environment& env) {
  const ActionMask mask = env.action_mask();
  int best = -1;
  int best_shifters = std::numeric_limits<int>::max();
  for (int a = 0; a < static_cast<int>(mask.size()); ++a) {
    if (!mask[a]) continue;
    const int s = count_shifters(env.yard(), env.container_of(a));
    if (s < best_shifters) {
      best = a;
      best_shifters = s;
    }
  }
  if (best < 0) throw ContractViolation("no valid action for the greedy policy");
  return best;
}

EpisodeKpis run_random_policy(Environment& env, const ProblemInstance& instance, Rng& rng) {
  return play(env, instance, [&] { return random_action(env.action_mask(), rng); });
}

EpisodeKpis run_greedy_policy(Environment& env, const ProblemInstance& instance) {
  return play(env, instance, [&] { return greedy_action(env); });
}

}  // namespace stowage
