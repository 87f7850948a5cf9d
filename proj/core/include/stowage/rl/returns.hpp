#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "stowage/errors.hpp"

namespace stowage::rl {

// One-step Bellman target: r + gamma * max over next-valid actions of target_q,
// or r at a terminal transition.
template <typename S>
S td_target(S reward, bool done, std::span<const S> target_q, std::span<const std::uint8_t> next_mask,
            S gamma) {
  if (done) return reward;
  bool any = false;
  S best = 0;
  for (std::size_t a = 0; a < target_q.size(); ++a) {
    if (!next_mask[a]) continue;
    if (!any || target_q[a] > best) best = target_q[a];
    any = true;
  }
  if (!any) throw ContractViolation("td_target: non-terminal transition with empty next mask");
  return reward + gamma * best;
}

// n-step returns over a rollout segment.
//
// rewards[t] and dones[t] belong to the transition leaving state t; values has
// one more entry than rewards, values[L] being the bootstrap V(s_L).
//   G_t = sum_{j<h} gamma^j r_{t+j} + gamma^h V(s_{t+h}),  h = min(n, L - t)
// with the sum cut (and no bootstrap) at the first terminal transition.
template <typename S>
std::vector<S> nstep_returns(std::span<const S> rewards, std::span<const std::uint8_t> dones,
                             std::span<const S> values, int n, S gamma) {
  const std::size_t len = rewards.size();
  if (values.size() != len + 1 || dones.size() != len) {
    throw ContractViolation("nstep_returns: values must have one entry more than rewards");
  }
  if (n < 1) throw ContractViolation("nstep_returns: n must be positive");
  std::vector<S> out(len);
  for (std::size_t t = 0; t < len; ++t) {
    const std::size_t horizon = std::min<std::size_t>(static_cast<std::size_t>(n), len - t);
    S g = 0;
    S discount = 1;
    bool terminated = false;
    for (std::size_t j = 0; j < horizon; ++j) {
      g += discount * rewards[t + j];
      discount *= gamma;
      if (dones[t + j]) {
        terminated = true;
        break;
      }
    }
    if (!terminated) g += discount * values[t + horizon];
    out[t] = g;
  }
  return out;
}

// Generalized advantage estimates, same layout as nstep_returns.
//   delta_t = r_t + gamma (1 - done_t) V_{t+1} - V_t
//   A_t     = delta_t + gamma lambda (1 - done_t) A_{t+1}
template <typename S>
std::vector<S> gae(std::span<const S> rewards, std::span<const std::uint8_t> dones,
                   std::span<const S> values, S gamma, S lambda) {
  const std::size_t len = rewards.size();
  if (values.size() != len + 1 || dones.size() != len) {
    throw ContractViolation("gae: values must have one entry more than rewards");
  }
  std::vector<S> adv(len);
  S running = 0;
  for (std::size_t t = len; t-- > 0;) {
    const S keep = dones[t] ? S(0) : S(1);
    const S delta = rewards[t] + gamma * keep * values[t + 1] - values[t];
    running = delta + gamma * lambda * keep * running;
    adv[t] = running;
  }
  return adv;
}

}  // namespace stowage::rl
