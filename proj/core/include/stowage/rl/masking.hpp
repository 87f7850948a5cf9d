#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

#include <Eigen/Dense>

#include "stowage/errors.hpp"
#include "stowage/rng.hpp"

namespace stowage::rl {

// Argmax over mask-valid entries; ties go to the lowest index.
template <typename S>
int masked_greedy(std::span<const S> values, std::span<const std::uint8_t> mask) {
  int best = -1;
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (mask[a] && (best < 0 || values[a] > values[best])) best = static_cast<int>(a);
  }
  if (best < 0) throw ContractViolation("masked_greedy: no valid action");
  return best;
}

// Log-probabilities of the softmax restricted to valid entries; invalid entries
// get -infinity.
template <typename S, typename Derived>
Eigen::Matrix<S, Eigen::Dynamic, 1> masked_log_softmax(const Eigen::MatrixBase<Derived>& logits,
                                                       std::span<const std::uint8_t> mask) {
  const auto n = logits.size();
  Eigen::Matrix<S, Eigen::Dynamic, 1> out(n);
  S peak = -std::numeric_limits<S>::infinity();
  for (Eigen::Index a = 0; a < n; ++a) {
    if (mask[a]) peak = std::max(peak, static_cast<S>(logits(a)));
  }
  if (!std::isfinite(static_cast<double>(peak))) {
    throw ContractViolation("masked_log_softmax: no valid action");
  }
  S total = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    if (mask[a]) total += std::exp(static_cast<S>(logits(a)) - peak);
  }
  const S log_norm = peak + std::log(total);
  for (Eigen::Index a = 0; a < n; ++a) {
    out(a) = mask[a] ? static_cast<S>(logits(a)) - log_norm : -std::numeric_limits<S>::infinity();
  }
  return out;
}

// Samples from the masked softmax; returns (action, log-probability).
template <typename S, typename Derived>
std::pair<int, S> masked_sample(const Eigen::MatrixBase<Derived>& logits,
                                std::span<const std::uint8_t> mask, Rng& rng) {
  const auto log_p = masked_log_softmax<S>(logits, mask);
  const double u = rng.uniform01();
  double cumulative = 0.0;
  int last_valid = -1;
  for (Eigen::Index a = 0; a < log_p.size(); ++a) {
    if (!mask[a]) continue;
    last_valid = static_cast<int>(a);
    cumulative += std::exp(static_cast<double>(log_p(a)));
    if (u < cumulative) return {static_cast<int>(a), log_p(a)};
  }
  return {last_valid, log_p(last_valid)};
}

// Entropy of the masked distribution given its log-probabilities.
template <typename S>
S masked_entropy(const Eigen::Matrix<S, Eigen::Dynamic, 1>& log_p,
                 std::span<const std::uint8_t> mask) {
  S h = 0;
  for (Eigen::Index a = 0; a < log_p.size(); ++a) {
    if (mask[a]) h -= std::exp(log_p(a)) * log_p(a);
  }
  return h;
}

}  // namespace stowage::rl
