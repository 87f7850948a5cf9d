#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "stowage/nn/mlp.hpp"
#include "stowage/rl/algo_config.hpp"
#include "stowage/rl/policy_losses.hpp"
#include "stowage/rl/value_losses.hpp"
#include "stowage/rng.hpp"

namespace stowage::rl {

// One Adam step on the DQN loss. Target syncing is the caller's job.
template <typename S>
S dqn_update(nn::Mlp<S>& online, const nn::Mlp<S>& target, nn::Adam<S>& opt,
             const TransitionBatch<S>& batch, const AlgoConfig& cfg) {
  LossGrad<S> lg = dqn_loss(online, target, batch, S(cfg.gamma));
  opt.step(online.parameters(), std::move(lg.grad), cfg.dqn.max_grad_norm);
  return lg.loss;
}

template <typename S>
S qrdqn_update(nn::Mlp<S>& online, const nn::Mlp<S>& target, nn::Adam<S>& opt,
               const TransitionBatch<S>& batch, const AlgoConfig& cfg) {
  LossGrad<S> lg = qrdqn_loss(online, target, batch, S(cfg.gamma), cfg.qrdqn.quantiles,
                              S(cfg.qrdqn.kappa));
  opt.step(online.parameters(), std::move(lg.grad), cfg.dqn.max_grad_norm);
  return lg.loss;
}

// Single synchronous step; batch.advantages = n-step return - V(s).
template <typename S>
PolicyLossTerms a2c_update(nn::Mlp<S>& model, nn::Adam<S>& opt, const PolicyBatch<S>& batch,
                           const AlgoConfig& cfg) {
  ActorCriticCoefficients c{cfg.a2c.value_coef, cfg.a2c.entropy_coef, 0.0};
  ActorCriticLoss<S> l = actor_critic_loss(model, batch, c);
  opt.step(model.parameters(), std::move(l.grad), cfg.a2c.max_grad_norm);
  return l.terms;
}

template <typename S>
void normalize_advantages(Vector<S>& adv) {
  if (adv.size() < 2) return;
  const S mean = adv.mean();
  const S var = (adv.array() - mean).square().sum() / S(adv.size() - 1);
  adv = ((adv.array() - mean) / (std::sqrt(var) + S(1e-8))).matrix();
}

// Clipped-surrogate epochs over shuffled minibatches of one rollout.
template <typename S>
PolicyLossTerms ppo_update(nn::Mlp<S>& model, nn::Adam<S>& opt, PolicyBatch<S> batch,
                           const AlgoConfig& cfg, Rng& rng) {
  if (cfg.ppo.normalize_advantage) normalize_advantages(batch.advantages);
  ActorCriticCoefficients c{cfg.ppo.value_coef, cfg.ppo.entropy_coef, cfg.ppo.clip_range};
  std::vector<int> order(batch.size());
  std::iota(order.begin(), order.end(), 0);
  PolicyLossTerms last;
  for (int epoch = 0; epoch < cfg.ppo.epochs; ++epoch) {
    rng.shuffle(std::span<int>(order));
    for (std::size_t start = 0; start < order.size(); start += cfg.ppo.minibatch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.ppo.minibatch_size);
      const PolicyBatch<S> mb = batch.subset({order.begin() + start, order.begin() + end});
      ActorCriticLoss<S> l = actor_critic_loss(model, mb, c);
      opt.step(model.parameters(), std::move(l.grad), cfg.ppo.max_grad_norm);
      last = l.terms;
    }
  }
  return last;
}

struct TrpoStats {
  double kl = 0.0;           // measured mean KL of the applied step (0 if rejected)
  bool accepted = false;
  int backtracks = 0;
  double improvement = 0.0;  // surrogate gain of the applied step
  double step_scale = 0.0;   // sqrt(2 delta / x^T H x)
  double value_loss = 0.0;
};

// Natural-gradient policy step inside a KL trust region, then critic regression.
//
// Solves H x = g (H = damped Fisher of the masked policy, g = surrogate
// gradient) with conjugate gradient, scales x to the trust-region boundary and
// backtracks until the surrogate improves with mean KL <= max_kl. Exhausting
// the backtracks leaves the policy unchanged.
template <typename S>
TrpoStats trpo_update(nn::Mlp<S>& policy, nn::Mlp<S>& critic, nn::Adam<S>& critic_opt,
                      PolicyBatch<S> batch, const AlgoConfig& cfg, Rng& rng) {
  const TrpoConfig& t = cfg.trpo;
  if (t.normalize_advantage) normalize_advantages(batch.advantages);
  TrpoStats stats;

  const Matrix<S> old_log_p = batch_log_probs(policy.forward(batch.obs), batch.masks);
  const S base = surrogate(policy, batch);
  const Vector<S> g = surrogate_grad(policy, batch);
  const Vector<S> theta_old = policy.parameters();

  if (g.squaredNorm() > S(0)) {
    FisherVectorProduct<S> fvp(policy, batch.obs, batch.masks, S(t.cg_damping));
    const Vector<S> x = conjugate_gradient<S>([&](const Vector<S>& v) { return fvp(v); }, g,
                                              t.cg_iterations);
    const S curvature = x.dot(fvp(x));
    if (curvature > S(0)) {
      stats.step_scale = std::sqrt(2.0 * t.max_kl / static_cast<double>(curvature));
      const Vector<S> full_step = S(stats.step_scale) * x;
      S coeff = 1;
      for (int k = 0; k <= t.max_backtracks; ++k, coeff *= S(t.backtrack_coeff)) {
        policy.parameters() = theta_old + coeff * full_step;
        const S gain = surrogate(policy, batch) - base;
        const S kl = mean_kl(old_log_p, batch_log_probs(policy.forward(batch.obs), batch.masks),
                             batch.masks);
        if (gain > S(0) && kl <= S(t.max_kl)) {
          stats.accepted = true;
          stats.backtracks = k;
          stats.kl = kl;
          stats.improvement = gain;
          break;
        }
      }
    }
  }
  if (!stats.accepted) policy.parameters() = theta_old;

  // Critic: minibatch regression onto the returns.
  std::vector<int> order(batch.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < t.critic_epochs; ++epoch) {
    rng.shuffle(std::span<int>(order));
    for (std::size_t start = 0; start < order.size(); start += t.critic_minibatch_size) {
      const std::size_t end = std::min(order.size(), start + t.critic_minibatch_size);
      const PolicyBatch<S> mb = batch.subset({order.begin() + start, order.begin() + end});
      typename nn::Mlp<S>::Cache cache;
      const Matrix<S> v = critic.forward(mb.obs, &cache);
      const Matrix<S> err = v - mb.returns.transpose();
      stats.value_loss = static_cast<double>(err.squaredNorm() / S(err.cols()));
      critic_opt.step(critic.parameters(), critic.backward(cache, S(2) * err / S(err.cols())));
    }
  }
  return stats;
}

}  // namespace stowage::rl
