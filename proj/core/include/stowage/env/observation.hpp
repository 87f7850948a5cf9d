#pragma once

#include <optional>
#include <vector>

#include "stowage/grid.hpp"
#include "stowage/instance.hpp"

namespace stowage {

inline constexpr int kSlotFeatures = 5;    // bay, row, tier, occupancy, group
inline constexpr int kTargetFeatures = 6;  // flat id, bay, row, tier, occupancy, required group

// Builds the flat feature vectors shared by every environment and remembers
// the per-feature bounds used for min-max normalization.
class ObservationEncoder {
 public:
  ObservationEncoder() = default;
  ObservationEncoder(const ScenarioSpec& shape, int extra_features);

  // Length of the common prefix: both grids plus the target descriptor.
  int base_size() const noexcept { return base_size_; }
  int size() const noexcept { return static_cast<int>(lower_.size()); }

  // Sets bounds for one of the trailing extra features.
  void set_extra_bounds(int index, double lower, double upper);

  // Writes vessel records, yard records, then the target descriptor (all
  // -1/0 placeholders when target is empty). Returns the next write offset.
  int encode_base(const GridState& vessel, const GridState& yard, std::optional<int> target,
                  std::vector<double>& out) const;

  void normalize(std::vector<double>& features) const;

 private:
  void set_bounds(int index, double lower, double upper);

  int base_size_ = 0;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace stowage
