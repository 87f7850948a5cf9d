#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "stowage/instance.hpp"

// JSON schema "stowage.instance/v1":
//
//   {
//     "schema": "stowage.instance/v1",
//     "spec": {
//       "vessel": {"bays": B, "rows": R, "tiers": T},
//       "yard":   {"bays": B, "rows": R, "tiers": T},
//       "num_containers": m, "num_groups": G, "num_cranes": k,
//       "seed": <uint64>, "vessel_preoccupied_fraction": f
//     },
//     "vessel": {"occupancy": [0|1 ...], "group": [int ...]},   // by flat slot id
//     "yard":   {"occupancy": [0|1 ...], "group": [int ...]},
//     "targets": [slot id ...],
//     "crane_partition": [[slot id ...], ...]
//   }
//
// Loading validates every instance invariant.
namespace stowage {

void to_json(nlohmann::json& j, const GridSpec& g);
void from_json(const nlohmann::json& j, GridSpec& g);
void to_json(nlohmann::json& j, const ScenarioSpec& s);
void from_json(const nlohmann::json& j, ScenarioSpec& s);

nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);

void save_instance(const ProblemInstance& inst, const std::filesystem::path& path);
ProblemInstance load_instance(const std::filesystem::path& path);

}  // namespace stowage
