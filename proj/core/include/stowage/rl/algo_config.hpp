#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stowage/nn/mlp.hpp"

namespace stowage::rl {

enum class Algorithm { kDqn, kQrDqn, kA2c, kPpo, kTrpo };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

enum class Precision { kFloat, kDouble };

struct DqnConfig {
  int buffer_size = 50'000;
  int batch_size = 64;
  int target_update_interval = 1'000;  // gradient updates between target syncs
  int learning_starts = 1'000;         // env steps before the first update
  int train_freq = 4;                  // env steps per gradient update
  double exploration_initial = 1.0;
  double exploration_final = 0.05;
  double exploration_fraction = 0.1;   // of total timesteps
  double max_grad_norm = 10.0;
};

struct QrDqnConfig {
  int quantiles = 32;
  double kappa = 1.0;
};

struct A2cConfig {
  int n_steps = 5;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  double max_grad_norm = 0.5;
};

struct PpoConfig {
  int n_steps = 512;
  double clip_range = 0.2;
  int epochs = 10;
  int minibatch_size = 64;
  double gae_lambda = 0.95;
  double value_coef = 0.5;
  double entropy_coef = 0.0;
  bool normalize_advantage = true;
  double max_grad_norm = 0.5;
};

struct TrpoConfig {
  int n_steps = 512;
  double max_kl = 0.01;
  int cg_iterations = 10;
  double cg_damping = 0.1;
  double backtrack_coeff = 0.8;
  int max_backtracks = 10;
  double gae_lambda = 0.95;
  bool normalize_advantage = true;
  int critic_epochs = 10;
  int critic_minibatch_size = 64;
};

// Every hyperparameter of the five learners. Defaults are the values the
// benchmark runs with; all can be overridden from the experiment JSON.
struct AlgoConfig {
  double gamma = 0.99;
  double learning_rate = 3e-4;
  std::vector<int> hidden{256, 256};
  nn::Activation activation = nn::Activation::kTanh;
  Precision precision = Precision::kFloat;

  DqnConfig dqn;
  QrDqnConfig qrdqn;
  A2cConfig a2c;
  PpoConfig ppo;
  TrpoConfig trpo;

  void validate() const;
};

void to_json(nlohmann::json& j, const AlgoConfig& c);
// Missing keys keep their defaults.
void from_json(const nlohmann::json& j, AlgoConfig& c);

}  // namespace stowage::rl
