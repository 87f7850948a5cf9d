#pragma once

#include <compare>
#include <vector>

namespace stowage {

// Position of a slot; all components are 1-based and tier 1 is the bottom.
struct SlotCoord {
  int bay = 1;
  int row = 1;
  int tier = 1;

  friend auto operator<=>(const SlotCoord&, const SlotCoord&) = default;
};

// Dimensions of a vessel or yard cube.
//
// Flat slot ids are bay-major, then row, then tier:
//   id = (bay - 1) * rows * tiers + (row - 1) * tiers + (tier - 1)
// so the tiers of one (bay, row) stack occupy consecutive ids.
struct GridSpec {
  int bays = 1;
  int rows = 1;
  int tiers = 1;

  int capacity() const noexcept { return bays * rows * tiers; }
  int stack_count() const noexcept { return bays * rows; }

  bool contains(SlotCoord c) const noexcept;
  int encode(SlotCoord c) const;
  SlotCoord decode(int slot_id) const;

  // Index of the (bay, row) stack holding slot_id, in [0, stack_count()).
  int stack_of(int slot_id) const noexcept { return slot_id / tiers; }
  // Flat id of tier `tier` (1-based) in stack `stack`.
  int slot_in_stack(int stack, int tier) const noexcept { return stack * tiers + tier - 1; }

  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline constexpr int kNoGroup = -1;

struct SlotRecord {
  SlotCoord coord;
  int occupancy = 0;
  // Container group when occupied; on the vessel, the group a target slot
  // requires. kNoGroup when neither applies.
  int group = kNoGroup;

  friend bool operator==(const SlotRecord&, const SlotRecord&) = default;
};

// A vessel or yard cube. Stacking operations keep the gravity invariant: an
// occupied slot above tier 1 always rests on an occupied slot.
class GridState {
 public:
  GridState() = default;
  explicit GridState(GridSpec spec);

  const GridSpec& spec() const noexcept { return spec_; }
  int size() const noexcept { return static_cast<int>(slots_.size()); }

  const SlotRecord& operator[](int slot_id) const { return slots_[slot_id]; }
  const std::vector<SlotRecord>& slots() const noexcept { return slots_; }

  bool occupied(int slot_id) const { return slots_[slot_id].occupancy != 0; }
  int group(int slot_id) const { return slots_[slot_id].group; }

  // Raw write. Does not check gravity; generators and deserializers use it and
  // validate afterwards.
  void set(int slot_id, int occupancy, int group);

  int occupied_count() const noexcept;
  // Number of occupied tiers in a stack (assumes gravity holds).
  int stack_height(int stack) const;
  bool satisfies_gravity() const noexcept;

  friend bool operator==(const GridState&, const GridState&) = default;

 private:
  GridSpec spec_;
  std::vector<SlotRecord> slots_;
};

// Containers stacked strictly above slot_id in its (bay, row) stack.
// Throws ContractViolation if slot_id is empty.
int count_shifters(const GridState& yard, int slot_id);

struct Extraction {
  int group = kNoGroup;
  int shifters = 0;
};

// Removes the container at slot_id. Containers above it are restacked onto the
// same stack in their original order, each dropping one tier.
Extraction extract_container(GridState& yard, int slot_id);

// Stows a container of `group` into an empty vessel slot that requires that
// group and rests on an occupied slot (or tier 1).
void place_container(GridState& vessel, int slot_id, int group);

}  // namespace stowage
