#include "stowage/env/spge_env.hpp"

#include <string>

#include "stowage/errors.hpp"

namespace stowage {

SpgeEnv::SpgeEnv(const ScenarioSpec& shape, const EnvOptions& options)
    : shape_(shape), options_(options), encoder_(shape, 0) {
  shape_.validate();
  options_.time.validate();
}

void SpgeEnv::reset(const ProblemInstance& instance) {
  if (instance.spec.vessel != shape_.vessel || instance.spec.yard != shape_.yard) {
    throw ContractViolation("instance grid shape differs from the environment's");
  }
  vessel_ = instance.vessel0;
  yard_ = instance.yard0;
  targets_ = instance.targets;
  cursor_ = 0;
  shifters_ = 0;
  steps_ = 0;
}

std::optional<int> SpgeEnv::current_target() const noexcept {
  if (done()) return std::nullopt;
  return targets_[cursor_];
}

Observation SpgeEnv::observe() const {
  Observation obs;
  encoder_.encode_base(vessel_, yard_, current_target(), obs);
  if (options_.normalize_observations) encoder_.normalize(obs);
  return obs;
}

bool SpgeEnv::is_valid(int action) const noexcept {
  if (done() || action < 0 || action >= yard_.size() || !yard_.occupied(action)) return false;
  return yard_.group(action) == vessel_.group(targets_[cursor_]);
}

ActionMask SpgeEnv::action_mask() const {
  ActionMask mask(static_cast<std::size_t>(action_count()), 0);
  for (int a = 0; a < action_count(); ++a) mask[a] = is_valid(a) ? 1 : 0;
  return mask;
}

StepResult SpgeEnv::advance(int action) {
  if (done()) throw ContractViolation("step on a finished episode");
  if (action < 0 || action >= action_count()) {
    throw ContractViolation("action " + std::to_string(action) + " outside action space");
  }
  StepResult r;
  r.info.container = action;
  if (!is_valid(action)) {
    r.reward = -options_.invalid_penalty;
    r.info.invalid = true;
  } else {
    const Extraction ex = extract_container(yard_, action);
    place_container(vessel_, targets_[cursor_], ex.group);
    ++cursor_;
    shifters_ += ex.shifters;
    r.reward = -static_cast<double>(ex.shifters);
    r.info.shifters = ex.shifters;
  }
  r.done = done();
  r.info.makespan = cursor_ * options_.time.load_seconds + shifters_ * options_.time.shift_seconds;
  write_trace(steps_++, action, r);
  return r;
}

int SpgeEnv::episode_shifters() const {
  if (!done()) throw ContractViolation("episode_shifters() before the episode is done");
  return shifters_;
}

double SpgeEnv::makespan() const {
  if (!done()) throw ContractViolation("makespan() before the episode is done");
  return static_cast<double>(targets_.size()) * options_.time.load_seconds +
         shifters_ * options_.time.shift_seconds;
}

}  // namespace stowage
