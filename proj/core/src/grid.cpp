#include "stowage/grid.hpp"

#include <string>

#include "stowage/errors.hpp"

namespace stowage {

bool GridSpec::contains(SlotCoord c) const noexcept {
  return c.bay >= 1 && c.bay <= bays && c.row >= 1 && c.row <= rows && c.tier >= 1 &&
         c.tier <= tiers;
}

int GridSpec::encode(SlotCoord c) const {
  if (!contains(c)) throw ContractViolation("slot coordinate outside grid");
  return (c.bay - 1) * rows * tiers + (c.row - 1) * tiers + (c.tier - 1);
}

SlotCoord GridSpec::decode(int slot_id) const {
  if (slot_id < 0 || slot_id >= capacity()) {
    throw ContractViolation("slot id " + std::to_string(slot_id) + " outside grid");
  }
  const int per_bay = rows * tiers;
  return SlotCoord{slot_id / per_bay + 1, (slot_id % per_bay) / tiers + 1, slot_id % tiers + 1};
}

void GridSpec::validate() const {
  if (bays < 1 || rows < 1 || tiers < 1) {
    throw ConfigError("grid dimensions must be positive, got " + std::to_string(bays) + "x" +
                      std::to_string(rows) + "x" + std::to_string(tiers));
  }
}

GridState::GridState(GridSpec spec) : spec_(spec) {
  spec_.validate();
  slots_.resize(static_cast<std::size_t>(spec_.capacity()));
  for (int id = 0; id < spec_.capacity(); ++id) slots_[id].coord = spec_.decode(id);
}

void GridState::set(int slot_id, int occupancy, int group) {
  if (slot_id < 0 || slot_id >= size()) throw ContractViolation("slot id outside grid");
  slots_[slot_id].occupancy = occupancy != 0 ? 1 : 0;
  slots_[slot_id].group = group;
}

int GridState::occupied_count() const noexcept {
  int n = 0;
  for (const auto& s : slots_) n += s.occupancy;
  return n;
}

int GridState::stack_height(int stack) const {
  int h = 0;
  while (h < spec_.tiers && occupied(spec_.slot_in_stack(stack, h + 1))) ++h;
  return h;
}

bool GridState::satisfies_gravity() const noexcept {
  for (int id = 0; id < size(); ++id) {
    if (slots_[id].occupancy && slots_[id].coord.tier > 1 && !slots_[id - 1].occupancy) {
      return false;
    }
  }
  return true;
}

int count_shifters(const GridState& yard, int slot_id) {
  const GridSpec& g = yard.spec();
  if (slot_id < 0 || slot_id >= g.capacity()) throw ContractViolation("slot id outside yard");
  if (!yard.occupied(slot_id)) {
    throw ContractViolation("count_shifters on empty yard slot " + std::to_string(slot_id));
  }
  const int stack = g.stack_of(slot_id);
  int above = 0;
  for (int tier = yard[slot_id].coord.tier + 1; tier <= g.tiers; ++tier) {
    above += yard[g.slot_in_stack(stack, tier)].occupancy;
  }
  return above;
}

Extraction extract_container(GridState& yard, int slot_id) {
  Extraction out;
  out.shifters = count_shifters(yard, slot_id);
  out.group = yard.group(slot_id);

  const GridSpec& g = yard.spec();
  const int stack = g.stack_of(slot_id);
  int below = slot_id;
  for (int tier = yard[slot_id].coord.tier + 1; tier <= g.tiers; ++tier) {
    const int above = g.slot_in_stack(stack, tier);
    yard.set(below, yard[above].occupancy, yard[above].group);
    below = above;
  }
  yard.set(below, 0, kNoGroup);
  return out;
}

void place_container(GridState& vessel, int slot_id, int group) {
  if (slot_id < 0 || slot_id >= vessel.size()) throw ContractViolation("slot id outside vessel");
  const SlotRecord& slot = vessel[slot_id];
  if (slot.occupancy) {
    throw ContractViolation("vessel slot " + std::to_string(slot_id) + " already occupied");
  }
  if (slot.group != group) {
    throw ContractViolation("vessel slot " + std::to_string(slot_id) + " requires group " +
                            std::to_string(slot.group) + ", got " + std::to_string(group));
  }
  if (slot.coord.tier > 1 && !vessel.occupied(slot_id - 1)) {
    throw ContractViolation("vessel slot " + std::to_string(slot_id) + " would float");
  }
  vessel.set(slot_id, 1, group);
}

}  // namespace stowage
