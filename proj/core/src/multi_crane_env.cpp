#include "stowage/env/multi_crane_env.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "stowage/errors.hpp"

namespace stowage {

MultiCraneEnv::MultiCraneEnv(const ScenarioSpec& shape, CraneControl control,
                             const EnvOptions& options)
    : shape_(shape), control_(control), options_(options) {
  shape_.validate();
  options_.time.validate();
  const int k = shape_.num_cranes;
  yard_capacity_ = shape_.yard.capacity();
  encoder_ = ObservationEncoder(shape_, (control_ == CraneControl::kAgentCycle ? 4 : 3) * k);
  const double max_duration = options_.time.duration(shape_.yard.tiers - 1);
  for (int c = 0; c < k; ++c) {
    encoder_.set_extra_bounds(c, 0.0, max_duration);
    encoder_.set_extra_bounds(k + c, -1.0, yard_capacity_ - 1);
    encoder_.set_extra_bounds(2 * k + c, -1.0, shape_.vessel.capacity() - 1);
    if (control_ == CraneControl::kAgentCycle) encoder_.set_extra_bounds(3 * k + c, 0.0, 1.0);
  }
  cranes_.resize(static_cast<std::size_t>(k));
}

EnvVariant MultiCraneEnv::variant() const noexcept {
  return control_ == CraneControl::kComposite ? EnvVariant::kSpgeMc : EnvVariant::kSpaec;
}

int MultiCraneEnv::action_count() const noexcept {
  return control_ == CraneControl::kComposite ? yard_capacity_ * crane_count() : yard_capacity_;
}

void MultiCraneEnv::reset(const ProblemInstance& instance) {
  if (instance.spec.vessel != shape_.vessel || instance.spec.yard != shape_.yard ||
      instance.spec.num_cranes != shape_.num_cranes) {
    throw ContractViolation("instance shape differs from the environment's");
  }
  vessel_ = instance.vessel0;
  yard_ = instance.yard0;
  partition_ = instance.crane_partition;
  std::fill(cranes_.begin(), cranes_.end(), CraneState{});
  clock_ = 0.0;
  shifters_ = 0;
  steps_ = 0;
  done_ = false;
  auto_advance();
}

bool MultiCraneEnv::crane_idle(int crane) const noexcept {
  return cranes_[crane].free_at <= clock_;
}

bool MultiCraneEnv::crane_exhausted(int crane) const noexcept {
  return cranes_[crane].cursor >= partition_[crane].size();
}

std::optional<int> MultiCraneEnv::crane_target(int crane) const noexcept {
  if (crane_exhausted(crane)) return std::nullopt;
  return partition_[crane][cranes_[crane].cursor];
}

std::optional<int> MultiCraneEnv::active_crane() const noexcept {
  if (done_) return std::nullopt;
  for (int c = 0; c < crane_count(); ++c) {
    if (crane_idle(c) && !crane_exhausted(c)) return c;
  }
  return std::nullopt;
}

double MultiCraneEnv::makespan_so_far() const noexcept {
  double m = 0.0;
  for (const auto& c : cranes_) m = std::max(m, c.free_at);
  return m;
}

std::pair<int, int> MultiCraneEnv::resolve(int action) const noexcept {
  if (control_ == CraneControl::kComposite) return decode_action(action);
  return {action, active_crane().value_or(-1)};
}

bool MultiCraneEnv::pair_valid(int container, int crane) const noexcept {
  if (crane < 0 || crane >= crane_count()) return false;
  if (!crane_idle(crane) || crane_exhausted(crane)) return false;
  if (container < 0 || container >= yard_capacity_ || !yard_.occupied(container)) return false;
  return yard_.group(container) == vessel_.group(*crane_target(crane));
}

bool MultiCraneEnv::is_valid(int action) const noexcept {
  if (done_ || action < 0 || action >= action_count()) return false;
  const auto [container, crane] = resolve(action);
  return pair_valid(container, crane);
}

ActionMask MultiCraneEnv::action_mask() const {
  ActionMask mask(static_cast<std::size_t>(action_count()), 0);
  for (int a = 0; a < action_count(); ++a) mask[a] = is_valid(a) ? 1 : 0;
  return mask;
}

Observation MultiCraneEnv::observe() const {
  Observation obs;
  const auto focus = active_crane();
  int i = encoder_.encode_base(vessel_, yard_, focus ? crane_target(*focus) : std::nullopt, obs);
  const int k = crane_count();
  for (int c = 0; c < k; ++c) obs[i + c] = std::max(0.0, cranes_[c].free_at - clock_);
  for (int c = 0; c < k; ++c) obs[i + k + c] = cranes_[c].operating;
  for (int c = 0; c < k; ++c) obs[i + 2 * k + c] = crane_target(c).value_or(-1);
  if (control_ == CraneControl::kAgentCycle) {
    for (int c = 0; c < k; ++c) obs[i + 3 * k + c] = (focus && *focus == c) ? 1.0 : 0.0;
  }
  if (options_.normalize_observations) encoder_.normalize(obs);
  return obs;
}

StepResult MultiCraneEnv::advance(int action) {
  if (done_) throw ContractViolation("step on a finished episode");
  if (action < 0 || action >= action_count()) {
    throw ContractViolation("action " + std::to_string(action) + " outside action space");
  }
  const auto [container, crane] = resolve(action);
  StepResult r;
  r.info.crane = crane;
  r.info.container = container;
  r.info.clock = clock_;

  if (!pair_valid(container, crane)) {
    r.reward = -options_.invalid_penalty;
    r.info.invalid = true;
    r.info.crane_free_at = crane >= 0 ? cranes_[crane].free_at : 0.0;
  } else {
    CraneState& cs = cranes_[crane];
    const int target = *crane_target(crane);
    const Extraction ex = extract_container(yard_, container);
    place_container(vessel_, target, ex.group);

    const double before = makespan_so_far();
    cs.free_at = clock_ + options_.time.duration(ex.shifters);
    cs.operating = container;
    ++cs.cursor;
    shifters_ += ex.shifters;
    const double grown = makespan_so_far() - before;

    r.reward = -ex.shifters - options_.time_weight * grown / options_.time.load_seconds;
    r.info.shifters = ex.shifters;
    r.info.crane_free_at = cs.free_at;
    auto_advance();
  }
  r.done = done_;
  r.info.makespan = makespan_so_far();
  write_trace(steps_++, action, r);
  return r;
}

void MultiCraneEnv::auto_advance() {
  for (;;) {
    bool all_exhausted = true;
    bool any_ready = false;
    for (int c = 0; c < crane_count(); ++c) {
      if (crane_exhausted(c)) continue;
      all_exhausted = false;
      if (crane_idle(c)) any_ready = true;
    }
    if (all_exhausted) {
      clock_ = std::max(clock_, makespan_so_far());
      for (auto& c : cranes_) c.operating = -1;
      done_ = true;
      return;
    }
    if (any_ready) return;

    double next = std::numeric_limits<double>::infinity();
    for (const auto& c : cranes_) {
      if (c.free_at > clock_) next = std::min(next, c.free_at);
    }
    clock_ = next;
    for (auto& c : cranes_) {
      if (c.free_at <= clock_) c.operating = -1;
    }
  }
}

int MultiCraneEnv::episode_shifters() const {
  if (!done_) throw ContractViolation("episode_shifters() before the episode is done");
  return shifters_;
}

double MultiCraneEnv::makespan() const {
  if (!done_) throw ContractViolation("makespan() before the episode is done");
  return makespan_so_far();
}

}  // namespace stowage
