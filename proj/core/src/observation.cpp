#include "stowage/env/observation.hpp"

namespace stowage {

ObservationEncoder::ObservationEncoder(const ScenarioSpec& shape, int extra_features) {
  const int v = shape.vessel.capacity();
  const int y = shape.yard.capacity();
  base_size_ = kSlotFeatures * (v + y) + kTargetFeatures;
  lower_.assign(static_cast<std::size_t>(base_size_ + extra_features), 0.0);
  upper_.assign(lower_.size(), 1.0);

  const double max_group = shape.num_groups - 1;
  int i = 0;
  for (const GridSpec* g : {&shape.vessel, &shape.yard}) {
    for (int slot = 0; slot < g->capacity(); ++slot) {
      set_bounds(i++, 1, g->bays);
      set_bounds(i++, 1, g->rows);
      set_bounds(i++, 1, g->tiers);
      set_bounds(i++, 0, 1);
      set_bounds(i++, kNoGroup, max_group);
    }
  }
  set_bounds(i++, -1, v - 1);
  set_bounds(i++, 0, shape.vessel.bays);
  set_bounds(i++, 0, shape.vessel.rows);
  set_bounds(i++, 0, shape.vessel.tiers);
  set_bounds(i++, 0, 1);
  set_bounds(i++, kNoGroup, max_group);
}

void ObservationEncoder::set_bounds(int index, double lower, double upper) {
  lower_[index] = lower;
  upper_[index] = upper;
}

void ObservationEncoder::set_extra_bounds(int index, double lower, double upper) {
  set_bounds(base_size_ + index, lower, upper);
}

int ObservationEncoder::encode_base(const GridState& vessel, const GridState& yard,
                                    std::optional<int> target, std::vector<double>& out) const {
  out.resize(lower_.size());
  int i = 0;
  for (const GridState* grid : {&vessel, &yard}) {
    for (const SlotRecord& s : grid->slots()) {
      out[i++] = s.coord.bay;
      out[i++] = s.coord.row;
      out[i++] = s.coord.tier;
      out[i++] = s.occupancy;
      out[i++] = s.group;
    }
  }
  if (target) {
    const SlotRecord& s = vessel[*target];
    out[i++] = *target;
    out[i++] = s.coord.bay;
    out[i++] = s.coord.row;
    out[i++] = s.coord.tier;
    out[i++] = s.occupancy;
    out[i++] = s.group;
  } else {
    out[i++] = -1;
    out[i++] = 0;
    out[i++] = 0;
    out[i++] = 0;
    out[i++] = 0;
    out[i++] = kNoGroup;
  }
  return i;
}

void ObservationEncoder::normalize(std::vector<double>& features) const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double span = upper_[i] - lower_[i];
    features[i] = span > 0.0 ? (features[i] - lower_[i]) / span : 0.0;
  }
}

}  // namespace stowage
