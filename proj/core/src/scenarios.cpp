#include "stowage/bench/scenarios.hpp"

#include <array>

#include "stowage/errors.hpp"

namespace stowage::bench {

namespace {

struct Row {
  GridSpec vessel;
  GridSpec yard;
  int containers;
  int groups;
  int cranes;
};

constexpr GridSpec kSmall{3, 5, 3};
constexpr GridSpec kLarge{8, 5, 5};

constexpr std::array<Row, 8> kRegistry{{
    {kSmall, kSmall, 45, 3, 1},
    {kSmall, kSmall, 45, 8, 1},
    {kSmall, kLarge, 45, 8, 1},
    {kLarge, kSmall, 45, 8, 1},
    {kLarge, kLarge, 200, 8, 1},
    {kSmall, kLarge, 45, 8, 3},
    {kLarge, kLarge, 200, 8, 3},
    {kLarge, kLarge, 200, 8, 5},
}};

}  // namespace

std::vector<int> scenario_ids() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

ScenarioSpec scenario_spec(int id) {
  if (id < 1 || id > static_cast<int>(kRegistry.size())) {
    throw ConfigError("unknown scenario id " + std::to_string(id) + "; valid ids are 1-8");
  }
  const Row& r = kRegistry[static_cast<std::size_t>(id - 1)];
  ScenarioSpec s;
  s.vessel = r.vessel;
  s.yard = r.yard;
  s.num_containers = r.containers;
  s.num_groups = r.groups;
  s.num_cranes = r.cranes;
  return s;
}

bool is_multi_crane_scenario(int id) { return scenario_spec(id).num_cranes > 1; }

void check_variant(int id, EnvVariant variant) {
  const bool multi = is_multi_crane_scenario(id);
  if (multi && variant == EnvVariant::kSpge) {
    throw ConfigError("scenario " + std::to_string(id) +
                      " has several cranes; use variant spge-mc or spaec");
  }
  if (!multi && variant != EnvVariant::kSpge) {
    throw ConfigError("scenario " + std::to_string(id) + " has one crane; use variant spge");
  }
}

}  // namespace stowage::bench
