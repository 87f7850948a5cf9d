#include "stowage/oracle/oracle.hpp"

#include <limits>
#include <string>

#include "stowage/env/multi_crane_env.hpp"
#include "stowage/env/spge_env.hpp"
#include "stowage/errors.hpp"

namespace stowage {

namespace {

// Depth-first enumeration over every valid action. Value = Kpi(final env).
template <typename Env, typename Kpi>
class Enumerator {
 public:
  explicit Enumerator(Kpi kpi) : kpi_(kpi) {}

  OracleResult run(const Env& root) {
    result_.best_value = std::numeric_limits<double>::infinity();
    visit(root);
    return result_;
  }

 private:
  void visit(const Env& env) {
    if (env.done()) {
      const double value = kpi_(env);
      if (value < result_.best_value) {
        result_.best_value = value;
        result_.best_sequence = path_;
      }
      return;
    }
    const ActionMask mask = env.action_mask();
    for (int a = 0; a < static_cast<int>(mask.size()); ++a) {
      if (!mask[a]) continue;
      Env child = env;
      child.advance(a);
      ++result_.nodes_explored;
      path_.push_back(a);
      visit(child);
      path_.pop_back();
    }
  }

  Kpi kpi_;
  OracleResult result_;
  std::vector<int> path_;
};

}  // namespace

OracleResult brute_force_min_shifters(const ProblemInstance& instance, const OracleLimits& limits) {
  instance.validate();
  if (instance.spec.num_containers > limits.max_containers_shifters) {
    throw ContractViolation("brute_force_min_shifters refuses m = " +
                            std::to_string(instance.spec.num_containers) + " > " +
                            std::to_string(limits.max_containers_shifters));
  }
  SpgeEnv env(instance.spec);
  env.reset(instance);
  auto kpi = [](const SpgeEnv& e) { return static_cast<double>(e.episode_shifters()); };
  return Enumerator<SpgeEnv, decltype(kpi)>(kpi).run(env);
}

OracleResult brute_force_min_makespan(const ProblemInstance& instance, const TimeModel& time,
                                      const OracleLimits& limits) {
  instance.validate();
  if (instance.spec.num_containers > limits.max_containers_makespan ||
      instance.spec.num_cranes > limits.max_cranes) {
    throw ContractViolation("brute_force_min_makespan refuses m = " +
                            std::to_string(instance.spec.num_containers) + ", k = " +
                            std::to_string(instance.spec.num_cranes));
  }
  EnvOptions options;
  options.time = time;
  MultiCraneEnv env(instance.spec, CraneControl::kComposite, options);
  env.reset(instance);
  auto kpi = [](const MultiCraneEnv& e) { return e.makespan(); };
  return Enumerator<MultiCraneEnv, decltype(kpi)>(kpi).run(env);
}

nlohmann::json to_json(const OracleResult& r) {
  return {{"best_value", r.best_value},
          {"best_sequence", r.best_sequence},
          {"nodes_explored", r.nodes_explored}};
}

}  // namespace stowage
