#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "stowage/nn/mlp.hpp"
#include "stowage/rl/batch.hpp"
#include "stowage/rl/masking.hpp"
#include "stowage/rl/value_losses.hpp"

namespace stowage::rl {

struct PolicyLossTerms {
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;
  double total = 0.0;
};

template <typename S>
struct ActorCriticLoss {
  PolicyLossTerms terms;
  Vector<S> grad;
};

struct ActorCriticCoefficients {
  double value_coef = 0.5;
  double entropy_coef = 0.0;
  // PPO clip range; <= 0 means no clipping and ratio-free A2C policy loss.
  double clip_range = 0.0;
};

// Shared loss for networks whose output column is [logits (A rows); value].
//
// Policy term: A2C uses -A * log pi(a|s); PPO (clip_range > 0) uses
// -min(rho * A, clip(rho, 1 - eps, 1 + eps) * A), rho = pi / pi_old.
// Value term: value_coef * (V - R)^2. Entropy bonus: -entropy_coef * H(pi).
// All terms are batch means.
template <typename S>
ActorCriticLoss<S> actor_critic_loss(const nn::Mlp<S>& model, const PolicyBatch<S>& batch,
                                     const ActorCriticCoefficients& c) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  typename nn::Mlp<S>::Cache cache;
  const Matrix<S> out = model.forward(batch.obs, &cache);
  const Eigen::Index actions = out.rows() - 1;
  Matrix<S> dout = Matrix<S>::Zero(out.rows(), n);
  const S inv_n = S(1) / S(n);

  ActorCriticLoss<S> result;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& mask = batch.masks[i];
    const int a = batch.actions[i];
    const Vector<S> log_p = masked_log_softmax<S>(out.col(i).head(actions), mask);
    const S adv = batch.advantages(i);
    const S entropy = masked_entropy<S>(log_p, mask);

    S dlogp_a;  // d(policy loss) / d log pi(a|s), before the 1/n factor
    if (c.clip_range > 0.0) {
      const S ratio = std::exp(log_p(a) - batch.old_log_probs(i));
      const S lo = S(1 - c.clip_range);
      const S hi = S(1 + c.clip_range);
      const S unclipped = ratio * adv;
      const S clipped = std::clamp(ratio, lo, hi) * adv;
      result.terms.policy -= static_cast<double>(std::min(unclipped, clipped));
      dlogp_a = unclipped <= clipped ? -ratio * adv : S(0);
    } else {
      result.terms.policy -= static_cast<double>(adv * log_p(a));
      dlogp_a = -adv;
    }

    for (Eigen::Index j = 0; j < actions; ++j) {
      if (!mask[j]) continue;
      const S p = std::exp(log_p(j));
      S g = dlogp_a * ((j == a ? S(1) : S(0)) - p);
      g += S(c.entropy_coef) * p * (log_p(j) + entropy);
      dout(j, i) = g * inv_n;
    }

    const S v = out(actions, i);
    const S err = v - batch.returns(i);
    result.terms.value += static_cast<double>(err * err);
    result.terms.entropy += static_cast<double>(entropy);
    dout(actions, i) = S(c.value_coef) * S(2) * err * inv_n;
  }
  result.terms.policy /= static_cast<double>(n);
  result.terms.value /= static_cast<double>(n);
  result.terms.entropy /= static_cast<double>(n);
  result.terms.total = result.terms.policy + c.value_coef * result.terms.value -
                       c.entropy_coef * result.terms.entropy;
  result.grad = model.backward(cache, dout);
  return result;
}

// Masked log-probabilities for every column (invalid entries -inf).
template <typename S>
Matrix<S> batch_log_probs(const Matrix<S>& logits, const std::vector<ActionMask>& masks) {
  Matrix<S> out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.cols(); ++i) {
    out.col(i) = masked_log_softmax<S>(logits.col(i), masks[i]);
  }
  return out;
}

// Mean KL(pi_old || pi) over the batch, from full log-probability matrices.
template <typename S>
S mean_kl(const Matrix<S>& old_log_p, const Matrix<S>& new_log_p,
          const std::vector<ActionMask>& masks) {
  S total = 0;
  for (Eigen::Index i = 0; i < old_log_p.cols(); ++i) {
    for (Eigen::Index a = 0; a < old_log_p.rows(); ++a) {
      if (masks[i][a]) total += std::exp(old_log_p(a, i)) * (old_log_p(a, i) - new_log_p(a, i));
    }
  }
  return total / S(old_log_p.cols());
}

// Gradient of mean_kl with respect to the policy parameters (old fixed).
template <typename S>
Vector<S> mean_kl_grad(const nn::Mlp<S>& policy, const Matrix<S>& obs, const Matrix<S>& old_log_p,
                       const std::vector<ActionMask>& masks) {
  typename nn::Mlp<S>::Cache cache;
  const Matrix<S> logits = policy.forward(obs, &cache);
  const Matrix<S> log_p = batch_log_probs(logits, masks);
  Matrix<S> d = Matrix<S>::Zero(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.cols(); ++i) {
    for (Eigen::Index a = 0; a < logits.rows(); ++a) {
      if (masks[i][a]) d(a, i) = (std::exp(log_p(a, i)) - std::exp(old_log_p(a, i))) / S(logits.cols());
    }
  }
  return policy.backward(cache, d);
}

// Importance-weighted surrogate mean(pi(a|s) / pi_old(a|s) * A).
template <typename S>
S surrogate(const nn::Mlp<S>& policy, const PolicyBatch<S>& batch) {
  const Matrix<S> logits = policy.forward(batch.obs);
  S total = 0;
  for (Eigen::Index i = 0; i < logits.cols(); ++i) {
    const Vector<S> log_p = masked_log_softmax<S>(logits.col(i), batch.masks[i]);
    total += std::exp(log_p(batch.actions[i]) - batch.old_log_probs(i)) * batch.advantages(i);
  }
  return total / S(logits.cols());
}

template <typename S>
Vector<S> surrogate_grad(const nn::Mlp<S>& policy, const PolicyBatch<S>& batch) {
  typename nn::Mlp<S>::Cache cache;
  const Matrix<S> logits = policy.forward(batch.obs, &cache);
  Matrix<S> d = Matrix<S>::Zero(logits.rows(), logits.cols());
  const S inv_n = S(1) / S(logits.cols());
  for (Eigen::Index i = 0; i < logits.cols(); ++i) {
    const Vector<S> log_p = masked_log_softmax<S>(logits.col(i), batch.masks[i]);
    const int a = batch.actions[i];
    const S w = std::exp(log_p(a) - batch.old_log_probs(i)) * batch.advantages(i) * inv_n;
    for (Eigen::Index j = 0; j < logits.rows(); ++j) {
      if (batch.masks[i][j]) d(j, i) = w * ((j == a ? S(1) : S(0)) - std::exp(log_p(j)));
    }
  }
  return policy.backward(cache, d);
}

// Fisher-vector products at a fixed policy point: F v = J^T (diag(p) - p p^T) J v / n,
// the Hessian of mean_kl at pi = pi_old, plus damping * v.
template <typename S>
class FisherVectorProduct {
 public:
  FisherVectorProduct(const nn::Mlp<S>& policy, const Matrix<S>& obs,
                      const std::vector<ActionMask>& masks, S damping = 0)
      : policy_(policy), damping_(damping) {
    const Matrix<S> logits = policy.forward(obs, &cache_);
    probs_ = batch_log_probs(logits, masks).array().exp().matrix();
  }

  Vector<S> operator()(const Vector<S>& v) const {
    const Matrix<S> jv = policy_.jvp(cache_, v);
    Matrix<S> u(jv.rows(), jv.cols());
    const S inv_n = S(1) / S(jv.cols());
    for (Eigen::Index i = 0; i < jv.cols(); ++i) {
      const S mean = probs_.col(i).dot(jv.col(i));
      u.col(i) = probs_.col(i).cwiseProduct(jv.col(i).array().matrix() -
                                            Vector<S>::Constant(jv.rows(), mean)) * inv_n;
    }
    Vector<S> out = policy_.backward(cache_, u);
    if (damping_ != S(0)) out += damping_ * v;
    return out;
  }

  const Matrix<S>& probabilities() const noexcept { return probs_; }

 private:
  const nn::Mlp<S>& policy_;
  typename nn::Mlp<S>::Cache cache_;
  Matrix<S> probs_;
  S damping_;
};

// Solves A x = b for symmetric positive definite A given only products A v.
template <typename S>
Vector<S> conjugate_gradient(const std::function<Vector<S>(const Vector<S>&)>& apply,
                             const Vector<S>& b, int iterations, S residual_tol = S(1e-10)) {
  Vector<S> x = Vector<S>::Zero(b.size());
  Vector<S> r = b;
  Vector<S> p = b;
  S rr = r.squaredNorm();
  for (int k = 0; k < iterations && rr > residual_tol; ++k) {
    const Vector<S> ap = apply(p);
    const S alpha = rr / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    const S rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  return x;
}

}  // namespace stowage::rl
