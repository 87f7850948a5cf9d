#pragma once

#include <cstddef>
#include <span>

namespace stowage::bench {

struct SampleMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;  // n - 1 denominator; NaN when n < 2
};

SampleMoments sample_moments(std::span<const double> xs);

struct WelchResult {
  double t = 0.0;
  double dof = 0.0;
  double p = 1.0;  // two-sided

  bool significant(double alpha = 0.05) const noexcept { return p < alpha; }
};

// Welch's unequal-variance t-test of mean(a) - mean(b). Both samples need at
// least two values (ConfigError otherwise). When both variances are zero the
// statistic degenerates: equal means give t = 0, p = 1, otherwise t = +-inf,
// p = 0.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace stowage::bench
