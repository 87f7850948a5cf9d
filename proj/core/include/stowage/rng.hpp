#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace stowage {

// One step of SplitMix64. Used to expand a 64-bit seed into generator state and
// to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Child seed for a numbered stream: deterministic, well mixed, never equal to
// the parent for small stream ids.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept;

// xoshiro256** (Blackman & Vigna), seeded through SplitMix64.
//
// All sampling helpers are implemented here rather than with <random>
// distributions, whose output is not specified by the standard. Instances and
// training runs therefore reproduce bit-for-bit across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  // Uniform integer in [0, n). n must be positive. Lemire's multiply-shift
  // with rejection, so the result is unbiased.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  // Standard normal (Box-Muller, no cached second value).
  double normal() noexcept;

  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

}  // namespace stowage
