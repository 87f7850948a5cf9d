#include <algorithm>
#include <span>

#include "stowage/errors.hpp"
#include "stowage/rl/agent.hpp"
#include "stowage/rl/returns.hpp"
#include "stowage/rl/updates.hpp"

namespace stowage::rl {

namespace {

constexpr double kPolicyGain = 0.01;

nn::NetworkSpec network(const AlgoConfig& cfg, int inputs, int outputs) {
  return {inputs, cfg.hidden, cfg.activation, outputs};
}

// Uniform replay over the most recent buffer_size transitions.
template <typename S>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

  void push(const Transition& t) {
    Entry e{to_vector<S>(t.obs), t.mask, t.action, static_cast<S>(t.reward), to_vector<S>(t.next_obs),
            t.next_mask, static_cast<std::uint8_t>(t.done)};
    if (entries_.size() < capacity_) {
      entries_.push_back(std::move(e));
    } else {
      entries_[head_] = std::move(e);
    }
    head_ = (head_ + 1) % capacity_;
  }

  std::size_t size() const noexcept { return entries_.size(); }

  TransitionBatch<S> sample(std::size_t n, Rng& rng) const {
    TransitionBatch<S> b;
    const auto dim = entries_.front().obs.size();
    b.obs.resize(dim, static_cast<Eigen::Index>(n));
    b.next_obs.resize(dim, static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const Entry& e = entries_[rng.uniform_index(entries_.size())];
      b.obs.col(i) = e.obs;
      b.next_obs.col(i) = e.next_obs;
      b.masks.push_back(e.mask);
      b.next_masks.push_back(e.next_mask);
      b.actions.push_back(e.action);
      b.rewards.push_back(e.reward);
      b.dones.push_back(e.done);
    }
    return b;
  }

 private:
  struct Entry {
    Vector<S> obs;
    ActionMask mask;
    int action;
    S reward;
    Vector<S> next_obs;
    ActionMask next_mask;
    std::uint8_t done;
  };

  std::size_t capacity_;
  std::size_t head_ = 0;
  std::vector<Entry> entries_;
};

// DQN and QR-DQN share everything but the loss and the greedy read-out.
template <typename S, bool Quantile>
class ValueAgent final : public Agent {
 public:
  ValueAgent(const AlgoConfig& cfg, const AgentContext& ctx)
      : cfg_(cfg), ctx_(ctx), rng_(ctx.seed), buffer_(static_cast<std::size_t>(cfg.dqn.buffer_size)) {
    const int heads = Quantile ? cfg.qrdqn.quantiles : 1;
    online_ = nn::Mlp<S>(network(cfg, ctx.observation_size, ctx.action_count * heads), rng_);
    target_ = online_;
    opt_ = nn::Adam<S>(online_.parameter_count(), cfg.learning_rate);
  }

  int act(const Observation& obs, const ActionMask& mask) override {
    const double eps = epsilon();
    ++steps_;
    if (rng_.uniform01() < eps) {
      std::size_t valid = 0;
      for (auto m : mask) valid += m;
      std::size_t pick = rng_.uniform_index(valid);
      for (std::size_t a = 0; a < mask.size(); ++a) {
        if (mask[a] && pick-- == 0) return static_cast<int>(a);
      }
    }
    return act_greedy(obs, mask);
  }

  int act_greedy(const Observation& obs, const ActionMask& mask) const override {
    const Matrix<S> out = online_.forward(to_vector<S>(obs));
    if constexpr (Quantile) {
      const auto means = quantile_means<S>(column(out, 0), cfg_.qrdqn.quantiles);
      return masked_greedy<S>(means, mask);
    } else {
      return masked_greedy<S>(column(out, 0), mask);
    }
  }

  void observe(const Transition& t) override {
    buffer_.push(t);
    if (steps_ < cfg_.dqn.learning_starts || steps_ % cfg_.dqn.train_freq != 0) return;
    const TransitionBatch<S> batch = buffer_.sample(static_cast<std::size_t>(cfg_.dqn.batch_size), rng_);
    if constexpr (Quantile) {
      stats_.last_loss = qrdqn_update(online_, target_, opt_, batch, cfg_);
    } else {
      stats_.last_loss = dqn_update(online_, target_, opt_, batch, cfg_);
    }
    if (++stats_.updates % static_cast<std::uint64_t>(cfg_.dqn.target_update_interval) == 0) {
      target_ = online_;
    }
  }

  const AgentStats& stats() const noexcept override { return stats_; }

 private:
  double epsilon() const {
    const double horizon = cfg_.dqn.exploration_fraction * static_cast<double>(ctx_.total_timesteps);
    const double progress = horizon > 0 ? std::min(1.0, static_cast<double>(steps_) / horizon) : 1.0;
    return cfg_.dqn.exploration_initial +
           progress * (cfg_.dqn.exploration_final - cfg_.dqn.exploration_initial);
  }

  AlgoConfig cfg_;
  AgentContext ctx_;
  Rng rng_;
  nn::Mlp<S> online_;
  nn::Mlp<S> target_;
  nn::Adam<S> opt_;
  ReplayBuffer<S> buffer_;
  long steps_ = 0;
  AgentStats stats_;
};

// Rollout storage for the on-policy learners.
template <typename S>
struct Rollout {
  std::vector<Vector<S>> obs;
  std::vector<ActionMask> masks;
  std::vector<int> actions;
  std::vector<S> rewards;
  std::vector<std::uint8_t> dones;
  std::vector<S> values;
  std::vector<S> log_probs;

  std::size_t size() const noexcept { return actions.size(); }
  void clear() { *this = Rollout{}; }

  PolicyBatch<S> to_batch(const std::vector<S>& advantages, const std::vector<S>& returns) const {
    PolicyBatch<S> b;
    const auto n = static_cast<Eigen::Index>(size());
    b.obs.resize(obs.front().size(), n);
    b.old_log_probs.resize(n);
    b.advantages.resize(n);
    b.returns.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      b.obs.col(i) = obs[i];
      b.old_log_probs(i) = log_probs[i];
      b.advantages(i) = advantages[i];
      b.returns(i) = returns[i];
    }
    b.masks = masks;
    b.actions = actions;
    return b;
  }
};

enum class PolicyKind { kA2c, kPpo, kTrpo };

template <typename S, PolicyKind Kind>
class PolicyAgent final : public Agent {
 public:
  static constexpr bool kSeparateCritic = Kind == PolicyKind::kTrpo;

  PolicyAgent(const AlgoConfig& cfg, const AgentContext& ctx) : cfg_(cfg), ctx_(ctx), rng_(ctx.seed) {
    const int a = ctx.action_count;
    if constexpr (kSeparateCritic) {
      std::vector<double> gains(static_cast<std::size_t>(a), kPolicyGain);
      model_ = nn::Mlp<S>(network(cfg, ctx.observation_size, a), rng_, gains);
      critic_ = nn::Mlp<S>(network(cfg, ctx.observation_size, 1), rng_);
      critic_opt_ = nn::Adam<S>(critic_.parameter_count(), cfg.learning_rate);
    } else {
      std::vector<double> gains(static_cast<std::size_t>(a), kPolicyGain);
      gains.push_back(1.0);
      model_ = nn::Mlp<S>(network(cfg, ctx.observation_size, a + 1), rng_, gains);
      opt_ = nn::Adam<S>(model_.parameter_count(), cfg.learning_rate);
    }
  }

  int act(const Observation& obs, const ActionMask& mask) override {
    const Vector<S> x = to_vector<S>(obs);
    const Matrix<S> out = model_.forward(x);
    const auto [action, log_p] =
        masked_sample<S>(out.col(0).head(ctx_.action_count), mask, rng_);
    pending_log_p_ = log_p;
    pending_value_ = value_of(x, out);
    pending_obs_ = x;
    return action;
  }

  int act_greedy(const Observation& obs, const ActionMask& mask) const override {
    const Matrix<S> out = model_.forward(to_vector<S>(obs));
    return masked_greedy<S>(std::span<const S>(out.data(), static_cast<std::size_t>(ctx_.action_count)),
                            mask);
  }

  void observe(const Transition& t) override {
    rollout_.obs.push_back(pending_obs_);
    rollout_.masks.push_back(t.mask);
    rollout_.actions.push_back(t.action);
    rollout_.rewards.push_back(static_cast<S>(t.reward));
    rollout_.dones.push_back(static_cast<std::uint8_t>(t.done));
    rollout_.values.push_back(pending_value_);
    rollout_.log_probs.push_back(pending_log_p_);
    if (static_cast<int>(rollout_.size()) < rollout_length()) return;

    std::vector<S> values = rollout_.values;
    if (t.done) {
      values.push_back(S(0));
    } else {
      const Vector<S> x = to_vector<S>(t.next_obs);
      values.push_back(value_of(x, model_.forward(x)));
    }
    learn(values);
    rollout_.clear();
  }

  const AgentStats& stats() const noexcept override { return stats_; }

 private:
  int rollout_length() const {
    if constexpr (Kind == PolicyKind::kA2c) return cfg_.a2c.n_steps;
    if constexpr (Kind == PolicyKind::kPpo) return cfg_.ppo.n_steps;
    return cfg_.trpo.n_steps;
  }

  S value_of(const Vector<S>& x, const Matrix<S>& model_out) const {
    if constexpr (kSeparateCritic) {
      return critic_.forward(x)(0, 0);
    } else {
      return model_out(ctx_.action_count, 0);
    }
  }

  void learn(const std::vector<S>& values) {
    const S gamma = static_cast<S>(cfg_.gamma);
    std::vector<S> advantages;
    std::vector<S> returns;
    if constexpr (Kind == PolicyKind::kA2c) {
      returns = nstep_returns<S>(rollout_.rewards, rollout_.dones, values, cfg_.a2c.n_steps, gamma);
      advantages.resize(returns.size());
      for (std::size_t i = 0; i < returns.size(); ++i) advantages[i] = returns[i] - values[i];
    } else {
      const S lambda = static_cast<S>(Kind == PolicyKind::kPpo ? cfg_.ppo.gae_lambda
                                                               : cfg_.trpo.gae_lambda);
      advantages = gae<S>(rollout_.rewards, rollout_.dones, values, gamma, lambda);
      returns.resize(advantages.size());
      for (std::size_t i = 0; i < advantages.size(); ++i) returns[i] = advantages[i] + values[i];
    }
    PolicyBatch<S> batch = rollout_.to_batch(advantages, returns);
    ++stats_.updates;
    if constexpr (Kind == PolicyKind::kA2c) {
      stats_.last_loss = a2c_update(model_, opt_, batch, cfg_).total;
    } else if constexpr (Kind == PolicyKind::kPpo) {
      stats_.last_loss = ppo_update(model_, opt_, std::move(batch), cfg_, rng_).total;
    } else {
      const TrpoStats s = trpo_update(model_, critic_, critic_opt_, std::move(batch), cfg_, rng_);
      stats_.last_loss = s.value_loss;
      if (s.accepted) {
        stats_.accepted_kls.push_back(s.kl);
      } else {
        ++stats_.rejected_steps;
      }
    }
  }

  AlgoConfig cfg_;
  AgentContext ctx_;
  Rng rng_;
  nn::Mlp<S> model_;   // logits (+ value row unless the critic is separate)
  nn::Adam<S> opt_;
  nn::Mlp<S> critic_;
  nn::Adam<S> critic_opt_;
  Rollout<S> rollout_;
  Vector<S> pending_obs_;
  S pending_log_p_ = 0;
  S pending_value_ = 0;
  AgentStats stats_;
};

template <typename S>
std::unique_ptr<Agent> make_typed(Algorithm algo, const AlgoConfig& cfg, const AgentContext& ctx) {
  switch (algo) {
    case Algorithm::kDqn:
      return std::make_unique<ValueAgent<S, false>>(cfg, ctx);
    case Algorithm::kQrDqn:
      return std::make_unique<ValueAgent<S, true>>(cfg, ctx);
    case Algorithm::kA2c:
      return std::make_unique<PolicyAgent<S, PolicyKind::kA2c>>(cfg, ctx);
    case Algorithm::kPpo:
      return std::make_unique<PolicyAgent<S, PolicyKind::kPpo>>(cfg, ctx);
    case Algorithm::kTrpo:
      return std::make_unique<PolicyAgent<S, PolicyKind::kTrpo>>(cfg, ctx);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace

std::unique_ptr<Agent> make_agent(Algorithm algo, const AlgoConfig& cfg, const AgentContext& ctx) {
  cfg.validate();
  if (ctx.observation_size < 1 || ctx.action_count < 1) {
    throw ConfigError("agent needs a non-empty observation and action space");
  }
  if (cfg.precision == Precision::kDouble) return make_typed<double>(algo, cfg, ctx);
  return make_typed<float>(algo, cfg, ctx);
}

}  // namespace stowage::rl
