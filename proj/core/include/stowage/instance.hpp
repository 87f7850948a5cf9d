#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stowage/grid.hpp"

namespace stowage {

struct ScenarioSpec {
  GridSpec vessel;
  GridSpec yard;
  int num_containers = 0;
  int num_groups = 1;
  int num_cranes = 1;
  std::uint64_t seed = 0;
  // Fraction of the vessel slots left over after the targets that start out
  // occupied by non-target containers. 0 leaves the vessel empty.
  double vessel_preoccupied_fraction = 0.0;

  void validate() const;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

// A generated scenario. Immutable once built; environments copy the grids.
struct ProblemInstance {
  ScenarioSpec spec;
  GridState vessel0;  // target slots carry their required group, occupancy 0
  GridState yard0;
  std::vector<int> targets;  // sequencer order
  std::vector<std::vector<int>> crane_partition;

  // Checks every structural invariant; throws ConfigError on the first failure.
  void validate() const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

// Deterministic in (spec, spec.seed). Procedure, using one Rng(seed) stream:
//  1. pre-occupied vessel containers (if any) pushed onto uniformly chosen
//     non-full stacks with uniform groups;
//  2. targets = build_sequencer(vessel, m); each target's required group drawn
//     uniformly from [0, num_groups) in sequencer order;
//  3. the multiset of target groups is Fisher-Yates shuffled and each container
//     pushed onto a uniformly chosen non-full yard stack;
//  4. crane_partition = partition_targets(...).
ProblemInstance generate_instance(const ScenarioSpec& spec);

// The first m empty vessel slots in ascending (bay, row, tier) order.
std::vector<int> build_sequencer(const GridState& vessel0, int m);

// Splits the sequencer into k contiguous sublists, cutting only between vessel
// stacks so that no stack is shared by two cranes. Among such cuts, picks the
// one closest to equal sizes (least squares); on ties earlier cranes take more.
// When every stack boundary is available (e.g. 45 targets over 15 stacks of 3
// with k = 3) this gives sizes that differ by at most one stack.
std::vector<std::vector<int>> partition_targets(const GridSpec& vessel, std::span<const int> targets,
                                                int k);

}  // namespace stowage
