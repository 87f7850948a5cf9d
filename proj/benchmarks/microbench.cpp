#include <benchmark/benchmark.h>

#include "stowage/bench/scenarios.hpp"
#include "stowage/oracle/oracle.hpp"
#include "stowage/oracle/policies.hpp"
#include "stowage/rl/value_losses.hpp"
#include "stowage/rl/train.hpp"

namespace {

using namespace stowage;

// One full episode of uniformly random valid actions; items = environment steps.
void BM_RandomEpisode(benchmark::State& state) {
  const auto variant = static_cast<EnvVariant>(state.range(1));
  ScenarioSpec spec = bench::scenario_spec(static_cast<int>(state.range(0)));
  const ProblemInstance inst = generate_instance(spec);
  auto env = make_environment(variant, spec, {.normalize_observations = true, .time = {}});
  Rng rng(1);
  long steps = 0;
  for (auto _ : state) {
    env->reset(inst);
    while (!env->done()) {
      benchmark::DoNotOptimize(env->step(random_action(env->action_mask(), rng)));
      ++steps;
    }
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_RandomEpisode)->Args({1, 0})->Args({5, 0})->Args({6, 1})->Args({7, 2});

void BM_GreedyEpisode(benchmark::State& state) {
  ScenarioSpec spec = bench::scenario_spec(static_cast<int>(state.range(0)));
  const ProblemInstance inst = generate_instance(spec);
  auto env = make_environment(spec.num_cranes == 1 ? EnvVariant::kSpge : EnvVariant::kSpgeMc, spec);
  for (auto _ : state) benchmark::DoNotOptimize(run_greedy_policy(*env, inst));
}
BENCHMARK(BM_GreedyEpisode)->Arg(1)->Arg(5)->Arg(7);

template <typename S>
void BM_MlpForwardBackward(benchmark::State& state) {
  const int batch = static_cast<int>(state.range(0));
  Rng rng(2);
  const nn::Mlp<S> net({400, {256, 256}, nn::Activation::kTanh, 46}, rng);
  const nn::Matrix<S> x = nn::Matrix<S>::Random(400, batch);
  const nn::Matrix<S> g = nn::Matrix<S>::Random(46, batch);
  typename nn::Mlp<S>::Cache cache;
  for (auto _ : state) {
    net.forward(x, &cache);
    benchmark::DoNotOptimize(net.backward(cache, g));
  }
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_MlpForwardBackward<float>)->Arg(1)->Arg(64);
BENCHMARK(BM_MlpForwardBackward<double>)->Arg(64);

void BM_DqnLoss(benchmark::State& state) {
  Rng rng(3);
  constexpr int kObs = 400, kActions = 45, kBatch = 64;
  const nn::Mlp<float> online({kObs, {256, 256}, nn::Activation::kTanh, kActions}, rng);
  const nn::Mlp<float> target = online;
  rl::TransitionBatch<float> b;
  b.obs = nn::Matrix<float>::Random(kObs, kBatch);
  b.next_obs = nn::Matrix<float>::Random(kObs, kBatch);
  for (int i = 0; i < kBatch; ++i) {
    b.masks.emplace_back(kActions, 1);
    b.next_masks.emplace_back(kActions, 1);
    b.actions.push_back(i % kActions);
    b.rewards.push_back(-1.0f);
    b.dones.push_back(0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(rl::dqn_loss(online, target, b, 0.99f));
}
BENCHMARK(BM_DqnLoss);

void BM_ShifterOracle(benchmark::State& state) {
  ScenarioSpec spec;
  spec.vessel = {1, 3, 3};
  spec.yard = {1, 3, 3};
  spec.num_containers = static_cast<int>(state.range(0));
  spec.num_groups = 3;
  spec.seed = 11;
  const ProblemInstance inst = generate_instance(spec);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min_shifters(inst));
}
BENCHMARK(BM_ShifterOracle)->Arg(5)->Arg(7);

}  // namespace
BENCHMARK_MAIN();
