#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "stowage/grid.hpp"
#include "stowage/instance.hpp"
#include "stowage/rng.hpp"

namespace fixtures {

using stowage::GridSpec;
using stowage::GridState;
using stowage::ProblemInstance;
using stowage::ScenarioSpec;

// Stacks listed bottom to top; stack s of the grid is stacks[s].
using StackList = std::vector<std::vector<int>>;

inline GridState yard_from_stacks(const GridSpec& spec, const StackList& stacks) {
  GridState g(spec);
  for (int s = 0; s < static_cast<int>(stacks.size()); ++s) {
    for (int t = 0; t < static_cast<int>(stacks[s].size()); ++t) {
      g.set(spec.slot_in_stack(s, t + 1), 1, stacks[s][t]);
    }
  }
  return g;
}

inline StackList stacks_of(const GridState& g) {
  const GridSpec& spec = g.spec();
  StackList out(static_cast<std::size_t>(spec.stack_count()));
  for (int s = 0; s < spec.stack_count(); ++s) {
    for (int t = 1; t <= spec.tiers; ++t) {
      const int id = spec.slot_in_stack(s, t);
      if (g.occupied(id)) out[s].push_back(g.group(id));
    }
  }
  return out;
}

// Hand-built instance: target groups are assigned in sequencer order.
inline ProblemInstance make_instance(const GridSpec& vessel, const GridSpec& yard,
                                     const StackList& yard_stacks, const std::vector<int>& target_groups,
                                     int num_cranes = 1) {
  ProblemInstance inst;
  inst.spec.vessel = vessel;
  inst.spec.yard = yard;
  inst.spec.num_containers = static_cast<int>(target_groups.size());
  int groups = 1;
  for (int g : target_groups) groups = std::max(groups, g + 1);
  inst.spec.num_groups = groups;
  inst.spec.num_cranes = num_cranes;
  inst.vessel0 = GridState(vessel);
  inst.targets = stowage::build_sequencer(inst.vessel0, inst.spec.num_containers);
  for (std::size_t i = 0; i < inst.targets.size(); ++i) inst.vessel0.set(inst.targets[i], 0, target_groups[i]);
  inst.yard0 = yard_from_stacks(yard, yard_stacks);
  inst.crane_partition = stowage::partition_targets(vessel, inst.targets, num_cranes);
  inst.validate();
  return inst;
}

// Random shape with both grids no larger than max_b x max_r x max_t.
inline ScenarioSpec random_spec(stowage::Rng& rng, int max_b = 3, int max_r = 5, int max_t = 3,
                                int max_cranes = 1) {
  ScenarioSpec s;
  auto dim = [&](int hi) { return 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(hi))); };
  s.vessel = {dim(max_b), dim(max_r), dim(max_t)};
  s.yard = {dim(max_b), dim(max_r), dim(max_t)};
  const int cap = std::min(s.vessel.capacity(), s.yard.capacity());
  s.num_containers = dim(cap);
  s.num_groups = dim(std::min(s.num_containers, 8));
  s.num_cranes = 1;
  if (max_cranes > 1) {
    s.num_cranes = std::min({dim(max_cranes), s.num_containers,
                             (s.num_containers + s.vessel.tiers - 1) / s.vessel.tiers});
  }
  s.seed = rng();
  return s;
}

}  // namespace fixtures
