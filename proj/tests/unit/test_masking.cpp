#include <doctest.h>

#include <cmath>
#include <limits>

#include "numerics.hpp"
#include "stowage/errors.hpp"
#include "stowage/rl/masking.hpp"

using namespace stowage;
using namespace stowage::rl;

TEST_CASE("masked greedy") {
  const std::vector<double> q{1, 5, 3};
  CHECK(masked_greedy<double>(q, std::vector<std::uint8_t>{1, 0, 1}) == 2);
  CHECK(masked_greedy<double>(q, std::vector<std::uint8_t>{1, 1, 1}) == 1);
  CHECK(masked_greedy<double>(std::vector<double>{2, 2, 1}, std::vector<std::uint8_t>{1, 1, 1}) == 0);
  CHECK_THROWS_AS(masked_greedy<double>(q, std::vector<std::uint8_t>{0, 0, 0}), ContractViolation);
}

TEST_CASE("masked greedy equals filter-then-argmax on random inputs") {
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_index(12));
    std::vector<double> q(n);
    std::vector<std::uint8_t> mask(n);
    for (int i = 0; i < n; ++i) {
      q[i] = static_cast<double>(rng.uniform_index(5)) - 2.0;  // plenty of ties
      mask[i] = rng.uniform_index(2);
    }
    mask[rng.uniform_index(n)] = 1;
    int expected = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (mask[i] && q[i] > best) {
        best = q[i];
        expected = i;
      }
    }
    const int got = masked_greedy<double>(q, mask);
    REQUIRE(got == expected);
    REQUIRE(mask[got] == 1);
  }
}

TEST_CASE("masked sampling: single valid entry") {
  Rng rng(1);
  Eigen::VectorXd logits(4);
  logits << 3, -1, 8, 0;
  const std::vector<std::uint8_t> mask{0, 1, 0, 0};
  for (int i = 0; i < 20; ++i) {
    const auto [a, logp] = masked_sample<double>(logits, mask, rng);
    CHECK(a == 1);
    CHECK(logp == 0.0);
  }
}

TEST_CASE("masked log-softmax renormalises over valid entries") {
  Eigen::VectorXd logits(4);
  logits << 0.3, 0.3, 0.3, 0.3;
  const std::vector<std::uint8_t> mask{1, 0, 1, 1};
  const auto lp = masked_log_softmax<double>(logits, mask);
  CHECK(std::exp(lp(0)) == doctest::Approx(1.0 / 3));
  CHECK(std::exp(lp(2)) == doctest::Approx(1.0 / 3));
  CHECK(std::isinf(lp(1)));
  CHECK(lp(1) < 0);
  CHECK(masked_entropy<double>(lp, mask) == doctest::Approx(std::log(3.0)));
  const std::vector<std::uint8_t> one{0, 0, 1, 0};
  CHECK(masked_entropy<double>(masked_log_softmax<double>(logits, one), one) == 0.0);
}

TEST_CASE("sampling frequencies match the masked softmax within 3 sigma") {
  Rng rng(99);
  Eigen::VectorXd logits(5);
  logits << 0.5, 2.0, -1.0, 1.0, 4.0;
  const std::vector<std::uint8_t> mask{1, 1, 1, 1, 0};
  const auto lp = masked_log_softmax<double>(logits, mask);
  constexpr int kDraws = 100'000;
  std::vector<int> counts(5, 0);
  for (int i = 0; i < kDraws; ++i) {
    const auto [a, logp] = masked_sample<double>(logits, mask, rng);
    REQUIRE(logp == lp(a));
    ++counts[a];
  }
  CHECK(counts[4] == 0);
  for (int a = 0; a < 4; ++a) {
    const double p = std::exp(lp(a));
    const double sigma = std::sqrt(kDraws * p * (1 - p));
    CHECK(std::fabs(counts[a] - kDraws * p) < 3 * sigma);
  }
}

TEST_CASE("masked sampling never returns an invalid action") {
  Rng rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_index(10));
    Eigen::VectorXd logits = numerics::random_matrix(rng, n, 1) * 5.0;
    std::vector<std::uint8_t> mask(n);
    for (auto& m : mask) m = rng.uniform_index(2);
    mask[rng.uniform_index(n)] = 1;
    const auto [a, logp] = masked_sample<double>(logits, mask, rng);
    REQUIRE(mask[a] == 1);
    REQUIRE(std::isfinite(logp));
  }
}
