#include "stowage/rl/algo_config.hpp"

#include "stowage/errors.hpp"

namespace stowage::rl {

namespace {

template <typename T>
void read(const nlohmann::json& j, const char* key, T& field) {
  if (j.contains(key)) j.at(key).get_to(field);
}

void positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConfigError(std::string("algorithm setting ") + name + " must be positive");
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kDqn:
      return "dqn";
    case Algorithm::kQrDqn:
      return "qrdqn";
    case Algorithm::kA2c:
      return "a2c";
    case Algorithm::kPpo:
      return "ppo";
    case Algorithm::kTrpo:
      return "trpo";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "dqn") return Algorithm::kDqn;
  if (name == "qrdqn" || name == "qr-dqn") return Algorithm::kQrDqn;
  if (name == "a2c") return Algorithm::kA2c;
  if (name == "ppo") return Algorithm::kPpo;
  if (name == "trpo") return Algorithm::kTrpo;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected dqn, qrdqn, a2c, ppo or trpo)");
}

void AlgoConfig::validate() const {
  positive(gamma, "gamma");
  if (gamma > 1.0) throw ConfigError("gamma must not exceed 1");
  positive(learning_rate, "learning_rate");
  for (int w : hidden) positive(w, "hidden width");
  positive(dqn.buffer_size, "dqn.buffer_size");
  positive(dqn.batch_size, "dqn.batch_size");
  positive(dqn.target_update_interval, "dqn.target_update_interval");
  positive(dqn.train_freq, "dqn.train_freq");
  positive(dqn.exploration_initial, "dqn.exploration_initial");
  positive(dqn.exploration_final, "dqn.exploration_final");
  positive(dqn.exploration_fraction, "dqn.exploration_fraction");
  if (dqn.exploration_final > dqn.exploration_initial) {
    throw ConfigError("dqn exploration schedule must be non-increasing");
  }
  if (dqn.learning_starts < 0) throw ConfigError("dqn.learning_starts must be non-negative");
  positive(qrdqn.quantiles, "qrdqn.quantiles");
  positive(qrdqn.kappa, "qrdqn.kappa");
  positive(a2c.n_steps, "a2c.n_steps");
  positive(a2c.value_coef, "a2c.value_coef");
  positive(ppo.n_steps, "ppo.n_steps");
  positive(ppo.clip_range, "ppo.clip_range");
  positive(ppo.epochs, "ppo.epochs");
  positive(ppo.minibatch_size, "ppo.minibatch_size");
  positive(ppo.gae_lambda, "ppo.gae_lambda");
  positive(trpo.n_steps, "trpo.n_steps");
  positive(trpo.max_kl, "trpo.max_kl");
  positive(trpo.cg_iterations, "trpo.cg_iterations");
  positive(trpo.backtrack_coeff, "trpo.backtrack_coeff");
  positive(trpo.max_backtracks, "trpo.max_backtracks");
  positive(trpo.gae_lambda, "trpo.gae_lambda");
  positive(trpo.critic_epochs, "trpo.critic_epochs");
}

void to_json(nlohmann::json& j, const AlgoConfig& c) {
  j = {{"gamma", c.gamma},
       {"learning_rate", c.learning_rate},
       {"hidden", c.hidden},
       {"activation", std::string(nn::to_string(c.activation))},
       {"precision", c.precision == Precision::kFloat ? "float" : "double"},
       {"dqn",
        {{"buffer_size", c.dqn.buffer_size},
         {"batch_size", c.dqn.batch_size},
         {"target_update_interval", c.dqn.target_update_interval},
         {"learning_starts", c.dqn.learning_starts},
         {"train_freq", c.dqn.train_freq},
         {"exploration_initial", c.dqn.exploration_initial},
         {"exploration_final", c.dqn.exploration_final},
         {"exploration_fraction", c.dqn.exploration_fraction},
         {"max_grad_norm", c.dqn.max_grad_norm}}},
       {"qrdqn", {{"quantiles", c.qrdqn.quantiles}, {"kappa", c.qrdqn.kappa}}},
       {"a2c",
        {{"n_steps", c.a2c.n_steps},
         {"value_coef", c.a2c.value_coef},
         {"entropy_coef", c.a2c.entropy_coef},
         {"max_grad_norm", c.a2c.max_grad_norm}}},
       {"ppo",
        {{"n_steps", c.ppo.n_steps},
         {"clip_range", c.ppo.clip_range},
         {"epochs", c.ppo.epochs},
         {"minibatch_size", c.ppo.minibatch_size},
         {"gae_lambda", c.ppo.gae_lambda},
         {"value_coef", c.ppo.value_coef},
         {"entropy_coef", c.ppo.entropy_coef},
         {"normalize_advantage", c.ppo.normalize_advantage},
         {"max_grad_norm", c.ppo.max_grad_norm}}},
       {"trpo",
        {{"n_steps", c.trpo.n_steps},
         {"max_kl", c.trpo.max_kl},
         {"cg_iterations", c.trpo.cg_iterations},
         {"cg_damping", c.trpo.cg_damping},
         {"backtrack_coeff", c.trpo.backtrack_coeff},
         {"max_backtracks", c.trpo.max_backtracks},
         {"gae_lambda", c.trpo.gae_lambda},
         {"normalize_advantage", c.trpo.normalize_advantage},
         {"critic_epochs", c.trpo.critic_epochs},
         {"critic_minibatch_size", c.trpo.critic_minibatch_size}}}};
}

void from_json(const nlohmann::json& j, AlgoConfig& c) {
  read(j, "gamma", c.gamma);
  read(j, "learning_rate", c.learning_rate);
  read(j, "hidden", c.hidden);
  if (j.contains("activation")) c.activation = nn::parse_activation(j.at("activation").get<std::string>());
  if (j.contains("precision")) {
    const auto p = j.at("precision").get<std::string>();
    if (p == "float") {
      c.precision = Precision::kFloat;
    } else if (p == "double") {
      c.precision = Precision::kDouble;
    } else {
      throw ConfigError("precision must be 'float' or 'double'");
    }
  }
  if (j.contains("dqn")) {
    const auto& d = j.at("dqn");
    read(d, "buffer_size", c.dqn.buffer_size);
    read(d, "batch_size", c.dqn.batch_size);
    read(d, "target_update_interval", c.dqn.target_update_interval);
    read(d, "learning_starts", c.dqn.learning_starts);
    read(d, "train_freq", c.dqn.train_freq);
    read(d, "exploration_initial", c.dqn.exploration_initial);
    read(d, "exploration_final", c.dqn.exploration_final);
    read(d, "exploration_fraction", c.dqn.exploration_fraction);
    read(d, "max_grad_norm", c.dqn.max_grad_norm);
  }
  if (j.contains("qrdqn")) {
    read(j.at("qrdqn"), "quantiles", c.qrdqn.quantiles);
    read(j.at("qrdqn"), "kappa", c.qrdqn.kappa);
  }
  if (j.contains("a2c")) {
    const auto& d = j.at("a2c");
    read(d, "n_steps", c.a2c.n_steps);
    read(d, "value_coef", c.a2c.value_coef);
    read(d, "entropy_coef", c.a2c.entropy_coef);
    read(d, "max_grad_norm", c.a2c.max_grad_norm);
  }
  if (j.contains("ppo")) {
    const auto& d = j.at("ppo");
    read(d, "n_steps", c.ppo.n_steps);
    read(d, "clip_range", c.ppo.clip_range);
    read(d, "epochs", c.ppo.epochs);
    read(d, "minibatch_size", c.ppo.minibatch_size);
    read(d, "gae_lambda", c.ppo.gae_lambda);
    read(d, "value_coef", c.ppo.value_coef);
    read(d, "entropy_coef", c.ppo.entropy_coef);
    read(d, "normalize_advantage", c.ppo.normalize_advantage);
    read(d, "max_grad_norm", c.ppo.max_grad_norm);
  }
  if (j.contains("trpo")) {
    const auto& d = j.at("trpo");
    read(d, "n_steps", c.trpo.n_steps);
    read(d, "max_kl", c.trpo.max_kl);
    read(d, "cg_iterations", c.trpo.cg_iterations);
    read(d, "cg_damping", c.trpo.cg_damping);
    read(d, "backtrack_coeff", c.trpo.backtrack_coeff);
    read(d, "max_backtracks", c.trpo.max_backtracks);
    read(d, "gae_lambda", c.trpo.gae_lambda);
    read(d, "normalize_advantage", c.trpo.normalize_advantage);
    read(d, "critic_epochs", c.trpo.critic_epochs);
    read(d, "critic_minibatch_size", c.trpo.critic_minibatch_size);
  }
}

}  // namespace stowage::rl
