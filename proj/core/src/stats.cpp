#include "stowage/bench/stats.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "stowage/errors.hpp"

namespace stowage::bench {

SampleMoments sample_moments(std::span<const double> xs) {
  SampleMoments m;
  m.n = xs.size();
  if (m.n == 0) {
    m.mean = std::numeric_limits<double>::quiet_NaN();
    m.std = m.mean;
    return m;
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(m.n);
  if (m.n < 2) {
    m.std = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(m.n - 1));
  return m;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw ConfigError("welch_t_test needs at least two values per sample");
  }
  const SampleMoments ma = sample_moments(a);
  const SampleMoments mb = sample_moments(b);
  const double va = ma.std * ma.std / static_cast<double>(ma.n);
  const double vb = mb.std * mb.std / static_cast<double>(mb.n);
  const double diff = ma.mean - mb.mean;
  WelchResult r;
  if (va + vb == 0.0) {
    r.dof = static_cast<double>(ma.n + mb.n - 2);
    if (diff == 0.0) return r;
    r.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
    r.p = 0.0;
    return r;
  }
  r.t = diff / std::sqrt(va + vb);
  r.dof = (va + vb) * (va + vb) /
          (va * va / static_cast<double>(ma.n - 1) + vb * vb / static_cast<double>(mb.n - 1));
  const boost::math::students_t dist(r.dof);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
  return r;
}

}  // namespace stowage::bench
