#pragma once

#include <cmath>
#include <span>

#include "stowage/nn/mlp.hpp"
#include "stowage/rl/batch.hpp"
#include "stowage/rl/masking.hpp"
#include "stowage/rl/returns.hpp"

namespace stowage::rl {

template <typename S>
struct LossGrad {
  S loss = 0;
  Vector<S> grad;
};

template <typename S>
std::span<const S> column(const Matrix<S>& m, Eigen::Index c) {
  return {m.data() + c * m.rows(), static_cast<std::size_t>(m.rows())};
}

// Mean squared TD error of the online Q-network against one-step targets from
// the (frozen) target network.
template <typename S>
LossGrad<S> dqn_loss(const nn::Mlp<S>& online, const nn::Mlp<S>& target,
                     const TransitionBatch<S>& batch, S gamma) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  typename nn::Mlp<S>::Cache cache;
  const Matrix<S> q = online.forward(batch.obs, &cache);
  const Matrix<S> q_next = target.forward(batch.next_obs);
  Matrix<S> dq = Matrix<S>::Zero(q.rows(), n);
  LossGrad<S> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    const S y = td_target<S>(batch.rewards[i], batch.dones[i] != 0, column(q_next, i),
                             batch.next_masks[i], gamma);
    const S diff = q(batch.actions[i], i) - y;
    out.loss += diff * diff;
    dq(batch.actions[i], i) = S(2) * diff / S(n);
  }
  out.loss /= S(n);
  out.grad = online.backward(cache, dq);
  return out;
}

// Quantile-regression Huber term for one (prediction, target) pair, already
// divided by kappa: |tau - 1{u < 0}| * Huber_kappa(u) / kappa with u = target - prediction.
template <typename S>
S quantile_huber(S prediction, S target_value, S tau, S kappa) {
  const S u = target_value - prediction;
  const S weight = std::abs(tau - (u < 0 ? S(1) : S(0)));
  const S huber = std::abs(u) <= kappa ? S(0.5) * u * u : kappa * (std::abs(u) - S(0.5) * kappa);
  return weight * huber / kappa;
}

// Derivative of quantile_huber with respect to the prediction.
template <typename S>
S quantile_huber_grad(S prediction, S target_value, S tau, S kappa) {
  const S u = target_value - prediction;
  const S weight = std::abs(tau - (u < 0 ? S(1) : S(0)));
  const S dhuber = std::abs(u) <= kappa ? u : kappa * (u > 0 ? S(1) : S(-1));
  return -weight * dhuber / kappa;
}

// QR-DQN loss. The network emits actions x quantiles values, row a*N + i
// holding quantile i of action a at midpoint tau_i = (2i + 1) / (2N).
// Per sample: sum over predicted quantiles of the mean over target quantiles;
// the batch loss is the sample mean. Next actions are chosen by the masked
// argmax of the target network's quantile means.
template <typename S>
LossGrad<S> qrdqn_loss(const nn::Mlp<S>& online, const nn::Mlp<S>& target,
                       const TransitionBatch<S>& batch, S gamma, int quantiles, S kappa) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  const int nq = quantiles;
  typename nn::Mlp<S>::Cache cache;
  const Matrix<S> theta = online.forward(batch.obs, &cache);
  const Matrix<S> theta_next = target.forward(batch.next_obs);
  const auto actions = static_cast<int>(theta.rows() / nq);
  Matrix<S> dtheta = Matrix<S>::Zero(theta.rows(), n);
  std::vector<S> targets(static_cast<std::size_t>(nq));
  std::vector<S> means(static_cast<std::size_t>(actions));
  LossGrad<S> out;
  for (Eigen::Index s = 0; s < n; ++s) {
    const S r = batch.rewards[s];
    if (batch.dones[s]) {
      std::fill(targets.begin(), targets.end(), r);
    } else {
      for (int a = 0; a < actions; ++a) {
        means[a] = theta_next.col(s).segment(a * nq, nq).mean();
      }
      const int best = masked_greedy<S>(means, batch.next_masks[s]);
      for (int j = 0; j < nq; ++j) targets[j] = r + gamma * theta_next(best * nq + j, s);
    }
    const int a = batch.actions[s];
    for (int i = 0; i < nq; ++i) {
      const S tau = S(2 * i + 1) / S(2 * nq);
      const S pred = theta(a * nq + i, s);
      S g = 0;
      for (int j = 0; j < nq; ++j) {
        out.loss += quantile_huber(pred, targets[j], tau, kappa) / S(nq);
        g += quantile_huber_grad(pred, targets[j], tau, kappa) / S(nq);
      }
      dtheta(a * nq + i, s) = g / S(n);
    }
  }
  out.loss /= S(n);
  out.grad = online.backward(cache, dtheta);
  return out;
}

// Mean over quantiles for every action, for one network output column.
template <typename S>
std::vector<S> quantile_means(std::span<const S> column_values, int quantiles) {
  std::vector<S> means(column_values.size() / static_cast<std::size_t>(quantiles));
  for (std::size_t a = 0; a < means.size(); ++a) {
    S sum = 0;
    for (int i = 0; i < quantiles; ++i) sum += column_values[a * quantiles + i];
    means[a] = sum / S(quantiles);
  }
  return means;
}

}  // namespace stowage::rl
