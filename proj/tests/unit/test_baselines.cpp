#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "fixtures.hpp"
#include "stowage/env/multi_crane_env.hpp"
#include "stowage/env/spge_env.hpp"
#include "stowage/errors.hpp"
#include "stowage/oracle/oracle.hpp"
#include "stowage/oracle/policies.hpp"

using namespace stowage;
using fixtures::StackList;

namespace {

ScenarioSpec small_spec(std::uint64_t seed, int m, int groups, int cranes = 1) {
  ScenarioSpec s;
  s.vessel = {2, 2, 3};
  s.yard = {2, 2, 3};
  s.num_containers = m;
  s.num_groups = groups;
  s.num_cranes = cranes;
  s.seed = seed;
  return s;
}

// Minimum shifters by trying every order in which the yard containers could
// serve the targets, on the list-of-stacks model.
int reference_min_shifters(const StackList& yard, const std::vector<int>& target_groups,
                           std::size_t next = 0) {
  if (next == target_groups.size()) return 0;
  int best = std::numeric_limits<int>::max();
  for (std::size_t s = 0; s < yard.size(); ++s) {
    for (std::size_t pos = 0; pos < yard[s].size(); ++pos) {
      if (yard[s][pos] != target_groups[next]) continue;
      StackList rest = yard;
      rest[s].erase(rest[s].begin() + static_cast<long>(pos));
      const int here = static_cast<int>(yard[s].size() - pos - 1);
      best = std::min(best, here + reference_min_shifters(rest, target_groups, next + 1));
    }
  }
  return best;
}

// Expected total shifters of the uniform random policy, by enumerating every
// pick sequence with its probability.
double reference_random_expectation(const StackList& yard, const std::vector<int>& target_groups,
                                    std::size_t next = 0) {
  if (next == target_groups.size()) return 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> options;
  for (std::size_t s = 0; s < yard.size(); ++s) {
    for (std::size_t pos = 0; pos < yard[s].size(); ++pos) {
      if (yard[s][pos] == target_groups[next]) options.emplace_back(s, pos);
    }
  }
  double total = 0.0;
  for (const auto& [s, pos] : options) {
    StackList rest = yard;
    rest[s].erase(rest[s].begin() + static_cast<long>(pos));
    total += static_cast<double>(yard[s].size() - pos - 1) +
             reference_random_expectation(rest, target_groups, next + 1);
  }
  return total / static_cast<double>(options.size());
}

std::vector<int> target_groups_of(const ProblemInstance& inst) {
  std::vector<int> g;
  for (int t : inst.targets) g.push_back(inst.vessel0.group(t));
  return g;
}

}  // namespace

TEST_CASE("random policy: single valid action is forced") {
  const ProblemInstance inst = fixtures::make_instance({1, 1, 2}, {2, 1, 1}, {{0}, {1}}, {0, 1});
  SpgeEnv env(inst.spec);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const EpisodeKpis k = run_random_policy(env, inst, rng);
    CHECK(k.shifters == 0);
    CHECK(k.steps == 2);
  }
}

TEST_CASE("random policy is reproducible from its seed") {
  const ProblemInstance inst = generate_instance(small_spec(3, 12, 2));
  SpgeEnv env(inst.spec);
  auto mean = [&](std::uint64_t seed) {
    Rng rng(seed);
    double sum = 0;
    for (int i = 0; i < 100; ++i) sum += run_random_policy(env, inst, rng).shifters;
    return sum / 100;
  };
  CHECK(mean(5) == mean(5));
}

TEST_CASE("random policy on one three-high same-group stack") {
  const ProblemInstance inst = fixtures::make_instance({1, 1, 3}, {1, 1, 3}, {{0, 0, 0}}, {0, 0, 0});
  const double exact = reference_random_expectation({{0, 0, 0}}, {0, 0, 0});
  CHECK(exact == doctest::Approx(1.5));  // 1 for the first pick, 0.5 for the second
  SpgeEnv env(inst.spec);
  Rng rng(12);
  constexpr int kEpisodes = 20'000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < kEpisodes; ++i) {
    const double s = run_random_policy(env, inst, rng).shifters;
    sum += s;
    sq += s * s;
  }
  const double mean = sum / kEpisodes;
  const double sd = std::sqrt(sq / kEpisodes - mean * mean);
  CHECK(std::fabs(mean - exact) < 3.0 * sd / std::sqrt(kEpisodes));
}

TEST_CASE("greedy takes the top container first") {
  const ProblemInstance inst = fixtures::make_instance({1, 1, 2}, {1, 1, 2}, {{0, 0}}, {0, 0});
  SpgeEnv env(inst.spec);
  env.reset(inst);
  CHECK(greedy_action(env) == 1);
  CHECK(run_greedy_policy(env, inst).shifters == 0);
}

TEST_CASE("greedy is free when every match is on top") {
  const ProblemInstance inst =
      fixtures::make_instance({2, 1, 3}, {3, 1, 2}, {{1, 0}, {0, 2}, {2, 1}}, {0, 2, 1, 1, 0, 2});
  SpgeEnv env(inst.spec);
  CHECK(run_greedy_policy(env, inst).shifters == 0);
}

TEST_CASE("greedy never loses to the random policy's mean") {
  Rng rng(21);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ScenarioSpec s;
    s.vessel = {3, 5, 3};
    s.yard = {3, 5, 3};
    s.num_containers = 45;
    s.num_groups = 3;
    s.seed = seed;
    const ProblemInstance inst = generate_instance(s);
    SpgeEnv env(s);
    const int greedy = run_greedy_policy(env, inst).shifters;
    double random_sum = 0;
    for (int i = 0; i < 10; ++i) random_sum += run_random_policy(env, inst, rng).shifters;
    REQUIRE(greedy <= random_sum / 10);
  }
}

TEST_CASE("min-shifter oracle on hand cases") {
  SUBCASE("every container already on top") {
    const ProblemInstance inst =
        fixtures::make_instance({1, 1, 3}, {3, 1, 1}, {{0}, {1}, {2}}, {2, 0, 1});
    CHECK(brute_force_min_shifters(inst).best_value == 0);
  }
  SUBCASE("A under B, A wanted first") {
    const ProblemInstance inst = fixtures::make_instance({1, 1, 2}, {1, 1, 2}, {{0, 1}}, {0, 1});
    const OracleResult r = brute_force_min_shifters(inst);
    CHECK(r.best_value == 1);
    CHECK(r.best_sequence == std::vector<int>{0, 0});
  }
  SUBCASE("guard") {
    ScenarioSpec s;
    s.vessel = {3, 3, 1};
    s.yard = {3, 3, 1};
    s.num_containers = 9;
    s.num_groups = 1;
    const ProblemInstance inst = generate_instance(s);
    CHECK_THROWS_AS(brute_force_min_shifters(inst), ContractViolation);
    OracleLimits patient;
    patient.max_containers_shifters = 9;
    CHECK(brute_force_min_shifters(inst, patient).best_value == 0);
  }
}

TEST_CASE("min-shifter oracle agrees with the list model, replay and greedy") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int m = 2 + static_cast<int>(seed % 5);
    const ProblemInstance inst = generate_instance(small_spec(seed, m, 1 + static_cast<int>(seed % 2)));
    const OracleResult r = brute_force_min_shifters(inst);
    REQUIRE(r.best_value == reference_min_shifters(fixtures::stacks_of(inst.yard0), target_groups_of(inst)));

    SpgeEnv env(inst.spec);
    env.reset(inst);
    for (int a : r.best_sequence) REQUIRE_FALSE(env.step(a).info.invalid);
    REQUIRE(env.done());
    REQUIRE(env.episode_shifters() == r.best_value);

    REQUIRE(run_greedy_policy(env, inst).shifters >= r.best_value);
    REQUIRE(r.nodes_explored >= static_cast<std::uint64_t>(m));
  }
}

TEST_CASE("min-makespan oracle") {
  SUBCASE("one crane: serial time of the best order") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ProblemInstance inst = generate_instance(small_spec(seed, 5, 2));
      const TimeModel time;
      const OracleResult ms = brute_force_min_makespan(inst, time);
      const OracleResult sh = brute_force_min_shifters(inst);
      REQUIRE(ms.best_value == 5 * time.load_seconds + sh.best_value * time.shift_seconds);
    }
  }
  SUBCASE("two cranes, two loose containers each") {
    const ProblemInstance inst =
        fixtures::make_instance({2, 1, 2}, {2, 2, 1}, {{0}, {0}, {0}, {0}}, {0, 0, 0, 0}, 2);
    CHECK(brute_force_min_makespan(inst, TimeModel{}).best_value == 120);
  }
  SUBCASE("guards") {
    const ProblemInstance inst = generate_instance(small_spec(1, 7, 2));
    CHECK_THROWS_AS(brute_force_min_makespan(inst, TimeModel{}), ContractViolation);
  }
}

TEST_CASE("min-makespan oracle replays exactly and bounds the baselines") {
  Rng rng(6);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    const ProblemInstance inst = generate_instance(small_spec(seed, 6, 2, k));
    const OracleResult r = brute_force_min_makespan(inst, TimeModel{});
    MultiCraneEnv env(inst.spec, CraneControl::kComposite);
    env.reset(inst);
    for (int a : r.best_sequence) REQUIRE_FALSE(env.step(a).info.invalid);
    REQUIRE(env.done());
    REQUIRE(env.makespan() == r.best_value);
    REQUIRE(run_greedy_policy(env, inst).makespan >= r.best_value);
    for (int i = 0; i < 5; ++i) REQUIRE(run_random_policy(env, inst, rng).makespan >= r.best_value);
    MultiCraneEnv aec(inst.spec, CraneControl::kAgentCycle);
    REQUIRE(run_greedy_policy(aec, inst).makespan >= r.best_value);
  }
}

TEST_CASE("oracle result json") {
  OracleResult r;
  r.best_value = 3;
  r.best_sequence = {4, 1};
  r.nodes_explored = 9;
  const auto j = to_json(r);
  CHECK(j["best_value"] == 3.0);
  CHECK(j["best_sequence"] == nlohmann::json::array({4, 1}));
  CHECK(j["nodes_explored"] == 9);
}
