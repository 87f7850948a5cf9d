#pragma once

#include <string>
#include <vector>

#include "stowage/env/environment.hpp"
#include "stowage/instance.hpp"

namespace stowage::bench {

// Ids of the benchmark scenario registry, ascending.
std::vector<int> scenario_ids();

// Shape of registry scenario `id` (seed 0). Throws ConfigError naming the
// valid ids for anything else.
ScenarioSpec scenario_spec(int id);

// Scenarios 1-5 are single-crane SPGE benchmarks, 6-8 compare the two
// multi-crane formulations.
bool is_multi_crane_scenario(int id);

// Throws ConfigError when the variant cannot run the scenario.
void check_variant(int id, EnvVariant variant);

}  // namespace stowage::bench
