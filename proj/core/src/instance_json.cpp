#include "stowage/instance_json.hpp"

#include <fstream>

#include "stowage/errors.hpp"

namespace stowage {

namespace {

constexpr const char* kSchema = "stowage.instance/v1";

nlohmann::json grid_to_json(const GridState& grid) {
  std::vector<int> occ;
  std::vector<int> grp;
  occ.reserve(grid.slots().size());
  grp.reserve(grid.slots().size());
  for (const auto& s : grid.slots()) {
    occ.push_back(s.occupancy);
    grp.push_back(s.group);
  }
  return {{"occupancy", occ}, {"group", grp}};
}

GridState grid_from_json(const nlohmann::json& j, const GridSpec& spec, const char* what) {
  GridState grid(spec);
  const auto occ = j.at("occupancy").get<std::vector<int>>();
  const auto grp = j.at("group").get<std::vector<int>>();
  if (static_cast<int>(occ.size()) != spec.capacity() ||
      static_cast<int>(grp.size()) != spec.capacity()) {
    throw ConfigError(std::string(what) + " slot arrays do not match grid capacity");
  }
  for (int id = 0; id < spec.capacity(); ++id) {
    if (occ[id] != 0 && occ[id] != 1) throw ConfigError("occupancy must be 0 or 1");
    grid.set(id, occ[id], grp[id]);
  }
  return grid;
}

}  // namespace

void to_json(nlohmann::json& j, const GridSpec& g) {
  j = {{"bays", g.bays}, {"rows", g.rows}, {"tiers", g.tiers}};
}

void from_json(const nlohmann::json& j, GridSpec& g) {
  j.at("bays").get_to(g.bays);
  j.at("rows").get_to(g.rows);
  j.at("tiers").get_to(g.tiers);
}

void to_json(nlohmann::json& j, const ScenarioSpec& s) {
  j = {{"vessel", s.vessel},
       {"yard", s.yard},
       {"num_containers", s.num_containers},
       {"num_groups", s.num_groups},
       {"num_cranes", s.num_cranes},
       {"seed", s.seed},
       {"vessel_preoccupied_fraction", s.vessel_preoccupied_fraction}};
}

void from_json(const nlohmann::json& j, ScenarioSpec& s) {
  j.at("vessel").get_to(s.vessel);
  j.at("yard").get_to(s.yard);
  j.at("num_containers").get_to(s.num_containers);
  j.at("num_groups").get_to(s.num_groups);
  s.num_cranes = j.value("num_cranes", 1);
  s.seed = j.value("seed", std::uint64_t{0});
  s.vessel_preoccupied_fraction = j.value("vessel_preoccupied_fraction", 0.0);
}

nlohmann::json instance_to_json(const ProblemInstance& inst) {
  return {{"schema", kSchema},
          {"spec", inst.spec},
          {"vessel", grid_to_json(inst.vessel0)},
          {"yard", grid_to_json(inst.yard0)},
          {"targets", inst.targets},
          {"crane_partition", inst.crane_partition}};
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema", std::string(kSchema)) != kSchema) {
      throw ConfigError("unsupported instance schema " + j.at("schema").get<std::string>());
    }
    ProblemInstance inst;
    inst.spec = j.at("spec").get<ScenarioSpec>();
    inst.spec.validate();
    inst.vessel0 = grid_from_json(j.at("vessel"), inst.spec.vessel, "vessel");
    inst.yard0 = grid_from_json(j.at("yard"), inst.spec.yard, "yard");
    inst.targets = j.at("targets").get<std::vector<int>>();
    inst.crane_partition = j.at("crane_partition").get<std::vector<std::vector<int>>>();
    inst.validate();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed instance JSON: ") + e.what());
  }
}

void save_instance(const ProblemInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << instance_to_json(inst).dump(2) << '\n';
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace stowage
