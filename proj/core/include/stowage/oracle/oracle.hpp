#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "stowage/env/environment.hpp"
#include "stowage/instance.hpp"

namespace stowage {

struct OracleResult {
  double best_value = 0.0;
  std::vector<int> best_sequence;  // actions in the environment's action space
  std::uint64_t nodes_explored = 0;
};

// Enumeration guards; each caps the search at roughly 1e6 transitions.
struct OracleLimits {
  int max_containers_shifters = 8;
  int max_containers_makespan = 6;
  int max_cranes = 3;
};

// Minimum total shifters over every container order for the fixed sequencer.
// Searches by replaying SpgeEnv transitions; best_sequence holds yard slot ids
// (the lexicographically smallest optimal order).
OracleResult brute_force_min_shifters(const ProblemInstance& instance, const OracleLimits& limits = {});

// Minimum makespan over every interleaved (container, crane) decision sequence
// of the composite multi-crane environment. best_sequence holds composite
// action ids (crane * yard_capacity + container).
OracleResult brute_force_min_makespan(const ProblemInstance& instance, const TimeModel& time,
                                      const OracleLimits& limits = {});

nlohmann::json to_json(const OracleResult& r);

}  // namespace stowage
