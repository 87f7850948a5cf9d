#include "stowage/instance.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "stowage/errors.hpp"
#include "stowage/rng.hpp"

namespace stowage {

namespace {

// Pushes onto a uniformly chosen stack that still has room.
int push_random_stack(GridState& grid, Rng& rng, int group) {
  const GridSpec& g = grid.spec();
  std::vector<int> open;
  for (int s = 0; s < g.stack_count(); ++s) {
    if (grid.stack_height(s) < g.tiers) open.push_back(s);
  }
  if (open.empty()) throw ConfigError("grid is full");
  const int stack = open[rng.uniform_index(open.size())];
  const int slot = g.slot_in_stack(stack, grid.stack_height(stack) + 1);
  grid.set(slot, 1, group);
  return slot;
}

}  // namespace

void ScenarioSpec::validate() const {
  vessel.validate();
  yard.validate();
  if (num_containers < 0) throw ConfigError("num_containers must be non-negative");
  if (num_groups < 1) throw ConfigError("num_groups must be positive");
  if (num_cranes < 1) throw ConfigError("num_cranes must be positive");
  if (num_containers > vessel.capacity()) {
    throw ConfigError("num_containers " + std::to_string(num_containers) +
                      " exceeds vessel capacity " + std::to_string(vessel.capacity()));
  }
  if (num_containers > yard.capacity()) {
    throw ConfigError("num_containers " + std::to_string(num_containers) +
                      " exceeds yard capacity " + std::to_string(yard.capacity()));
  }
  if (num_containers > 0 && num_groups > num_containers) {
    throw ConfigError("num_groups must not exceed num_containers");
  }
  if (!(vessel_preoccupied_fraction >= 0.0 && vessel_preoccupied_fraction < 1.0)) {
    throw ConfigError("vessel_preoccupied_fraction must lie in [0, 1)");
  }
}

std::vector<int> build_sequencer(const GridState& vessel0, int m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max(m, 0)));
  for (int id = 0; id < vessel0.size() && static_cast<int>(out.size()) < m; ++id) {
    if (!vessel0.occupied(id)) out.push_back(id);
  }
  if (static_cast<int>(out.size()) < m) {
    throw ContractViolation("vessel has fewer than " + std::to_string(m) + " empty slots");
  }
  return out;
}

std::vector<std::vector<int>> partition_targets(const GridSpec& vessel, std::span<const int> targets,
                                                int k) {
  if (k < 1) throw ContractViolation("crane count must be positive");
  const auto n = static_cast<std::int64_t>(targets.size());
  if (n > 0 && k > n) {
    throw ContractViolation("more cranes (" + std::to_string(k) + ") than targets (" +
                            std::to_string(n) + ")");
  }

  // Candidate cut positions: 0, every index where the stack changes, n.
  std::vector<std::int64_t> cuts{0};
  for (std::int64_t i = 1; i < n; ++i) {
    if (vessel.stack_of(targets[i]) != vessel.stack_of(targets[i - 1])) cuts.push_back(i);
  }
  if (n > 0) cuts.push_back(n);
  const int c = static_cast<int>(cuts.size());

  // cost(size) = (k*size - n)^2 keeps the objective integral.
  auto cost = [&](std::int64_t size) {
    const std::int64_t d = static_cast<std::int64_t>(k) * size - n;
    return d * d;
  };
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // best[r][i]: minimal cost of splitting cuts[i]..n into r parts.
  std::vector<std::vector<std::int64_t>> best(k + 1, std::vector<std::int64_t>(c, kInf));
  best[0][c - 1] = 0;
  for (int r = 1; r <= k; ++r) {
    for (int i = 0; i < c; ++i) {
      for (int j = i; j < c; ++j) {
        if (best[r - 1][j] >= kInf) continue;
        best[r][i] = std::min(best[r][i], cost(cuts[j] - cuts[i]) + best[r - 1][j]);
      }
    }
  }

  std::vector<std::vector<int>> parts;
  parts.reserve(static_cast<std::size_t>(k));
  int i = 0;
  for (int r = k; r >= 1; --r) {
    int chosen = -1;
    for (int j = c - 1; j >= i; --j) {  // largest feasible first part wins ties
      if (best[r - 1][j] < kInf && cost(cuts[j] - cuts[i]) + best[r - 1][j] == best[r][i]) {
        chosen = j;
        break;
      }
    }
    parts.emplace_back(targets.begin() + cuts[i], targets.begin() + cuts[chosen]);
    i = chosen;
  }
  return parts;
}

ProblemInstance generate_instance(const ScenarioSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int m = spec.num_containers;

  ProblemInstance inst;
  inst.spec = spec;
  inst.vessel0 = GridState(spec.vessel);
  inst.yard0 = GridState(spec.yard);

  const int spare = spec.vessel.capacity() - m;
  const int preoccupied = static_cast<int>(spec.vessel_preoccupied_fraction * spare);
  for (int i = 0; i < preoccupied; ++i) {
    push_random_stack(inst.vessel0, rng, static_cast<int>(rng.uniform_index(spec.num_groups)));
  }

  inst.targets = build_sequencer(inst.vessel0, m);
  std::vector<int> groups;
  groups.reserve(inst.targets.size());
  for (int slot : inst.targets) {
    const int g = static_cast<int>(rng.uniform_index(spec.num_groups));
    inst.vessel0.set(slot, 0, g);
    groups.push_back(g);
  }

  rng.shuffle(std::span<int>(groups));
  for (int g : groups) push_random_stack(inst.yard0, rng, g);

  inst.crane_partition = partition_targets(spec.vessel, inst.targets, spec.num_cranes);
  return inst;
}

void ProblemInstance::validate() const {
  spec.validate();
  if (vessel0.spec() != spec.vessel || yard0.spec() != spec.yard) {
    throw ConfigError("grid dimensions disagree with the scenario spec");
  }
  if (static_cast<int>(targets.size()) != spec.num_containers) {
    throw ConfigError("target count differs from num_containers");
  }
  if (!vessel0.satisfies_gravity() || !yard0.satisfies_gravity()) {
    throw ConfigError("initial grid violates gravity");
  }
  if (yard0.occupied_count() != spec.num_containers) {
    throw ConfigError("yard must hold exactly num_containers containers");
  }

  std::vector<int> target_groups(spec.num_groups, 0);
  std::vector<int> yard_groups(spec.num_groups, 0);
  std::set<int> target_set;
  std::vector<char> placed_before(static_cast<std::size_t>(vessel0.size()), 0);
  for (int id = 0; id < vessel0.size(); ++id) placed_before[id] = vessel0[id].occupancy;
  for (int slot : targets) {
    if (slot < 0 || slot >= vessel0.size()) throw ConfigError("target slot outside vessel");
    if (!target_set.insert(slot).second) throw ConfigError("duplicate target slot");
    const SlotRecord& rec = vessel0[slot];
    if (rec.occupancy) throw ConfigError("target slot is pre-occupied");
    if (rec.group < 0 || rec.group >= spec.num_groups) {
      throw ConfigError("target slot carries no valid group requirement");
    }
    if (rec.coord.tier > 1 && !placed_before[slot - 1]) {
      throw ConfigError("targets are not in gravity order");
    }
    placed_before[slot] = 1;
    ++target_groups[rec.group];
  }
  for (int id = 0; id < vessel0.size(); ++id) {
    const SlotRecord& rec = vessel0[id];
    if (!rec.occupancy && !target_set.contains(id) && rec.group != kNoGroup) {
      throw ConfigError("non-target empty vessel slot carries a group");
    }
  }
  for (const SlotRecord& rec : yard0.slots()) {
    if (!rec.occupancy) {
      if (rec.group != kNoGroup) throw ConfigError("empty yard slot must carry group -1");
      continue;
    }
    if (rec.group < 0 || rec.group >= spec.num_groups) throw ConfigError("yard group out of range");
    ++yard_groups[rec.group];
  }
  if (target_groups != yard_groups) {
    throw ConfigError("yard group counts do not match target requirements");
  }

  if (static_cast<int>(crane_partition.size()) != spec.num_cranes) {
    throw ConfigError("crane_partition must have one sublist per crane");
  }
  std::vector<int> joined;
  for (const auto& part : crane_partition) joined.insert(joined.end(), part.begin(), part.end());
  if (joined != targets) throw ConfigError("crane_partition does not concatenate to targets");
  for (std::size_t c = 0; c + 1 < crane_partition.size(); ++c) {
    const auto& a = crane_partition[c];
    if (a.empty()) continue;
    for (std::size_t d = c + 1; d < crane_partition.size(); ++d) {
      for (int slot : crane_partition[d]) {
        if (spec.vessel.stack_of(slot) == spec.vessel.stack_of(a.back())) {
          throw ConfigError("crane_partition splits a vessel stack between cranes");
        }
      }
    }
  }
}

}  // namespace stowage
