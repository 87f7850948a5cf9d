#pragma once

#include <cstdint>
#include <vector>

#include "stowage/env/environment.hpp"
#include "stowage/nn/mlp.hpp"

namespace stowage::rl {

using nn::Matrix;
using nn::Vector;

// One environment transition as seen by a learner.
struct Transition {
  Observation obs;
  ActionMask mask;
  int action = 0;
  double reward = 0.0;
  Observation next_obs;
  ActionMask next_mask;
  bool done = false;
};

// Off-policy minibatch; observation matrices hold one sample per column.
template <typename S>
struct TransitionBatch {
  Matrix<S> obs;
  std::vector<ActionMask> masks;
  std::vector<int> actions;
  std::vector<S> rewards;
  Matrix<S> next_obs;
  std::vector<ActionMask> next_masks;
  std::vector<std::uint8_t> dones;

  std::size_t size() const noexcept { return actions.size(); }
};

// On-policy samples with everything the policy-gradient losses need.
template <typename S>
struct PolicyBatch {
  Matrix<S> obs;
  std::vector<ActionMask> masks;
  std::vector<int> actions;
  Vector<S> old_log_probs;
  Vector<S> advantages;
  Vector<S> returns;

  std::size_t size() const noexcept { return actions.size(); }

  PolicyBatch subset(const std::vector<int>& idx) const {
    PolicyBatch out;
    const auto n = static_cast<Eigen::Index>(idx.size());
    out.obs.resize(obs.rows(), n);
    out.old_log_probs.resize(n);
    out.advantages.resize(n);
    out.returns.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const int i = idx[j];
      out.obs.col(j) = obs.col(i);
      out.masks.push_back(masks[i]);
      out.actions.push_back(actions[i]);
      out.old_log_probs(j) = old_log_probs(i);
      out.advantages(j) = advantages(i);
      out.returns(j) = returns(i);
    }
    return out;
  }
};

template <typename S>
Vector<S> to_vector(const Observation& obs) {
  return Eigen::Map<const Eigen::VectorXd>(obs.data(), static_cast<Eigen::Index>(obs.size()))
      .cast<S>();
}

}  // namespace stowage::rl
