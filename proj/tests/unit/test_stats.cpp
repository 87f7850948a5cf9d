#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "stowage/bench/stats.hpp"
#include "stowage/errors.hpp"
#include "stowage/rng.hpp"
#include "welch_reference.hpp"

using namespace stowage;
using namespace stowage::bench;

using welch_reference::reference_welch;

TEST_CASE("sample moments") {
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  const auto m = sample_moments(xs);
  CHECK(m.n == 8);
  CHECK(m.mean == doctest::Approx(5));
  CHECK(m.std == doctest::Approx(std::sqrt(32.0 / 7)));
  CHECK(std::isnan(sample_moments(std::vector<double>{3.0}).std));
  CHECK(sample_moments(std::vector<double>{3.0}).mean == 3.0);
  CHECK(sample_moments(std::vector<double>{}).n == 0);

  // large offset: a naive sum-of-squares formula loses every digit here
  const std::vector<double> shifted{1e9 + 4, 1e9 + 7, 1e9 + 13, 1e9 + 16};
  CHECK(sample_moments(shifted).std == doctest::Approx(std::sqrt(30.0)).epsilon(1e-9));
}

TEST_CASE("welch: frozen reference values") {
  const auto r = welch_t_test(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>{2, 3, 4, 5, 6});
  CHECK(r.t == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.dof == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(r.p == doctest::Approx(0.34659350708733416).epsilon(1e-10));
  CHECK_FALSE(r.significant());

  const auto s = welch_t_test(std::vector<double>{4.1, 5.2, 3.9, 6.0},
                              std::vector<double>{1.0, 1.5, 0.7, 1.2, 0.9, 1.1});
  CHECK(s.t == doctest::Approx(7.4060210204004315).epsilon(1e-10));
  CHECK(s.dof == doctest::Approx(3.311651670733865).epsilon(1e-10));
  CHECK(s.p == doctest::Approx(0.0036029198984552278).epsilon(1e-8));
  CHECK(s.significant());
  CHECK_FALSE(s.significant(0.001));
}

TEST_CASE("welch agrees with an incomplete-beta oracle") {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(2 + rng.uniform_index(30)), b(2 + rng.uniform_index(30));
    const double shift = rng.normal();
    const double scale_a = 0.1 + 3 * rng.uniform01(), scale_b = 0.1 + 3 * rng.uniform01();
    for (auto& x : a) x = 10 + scale_a * rng.normal();
    for (auto& x : b) x = 10 + shift + scale_b * rng.normal();
    const auto got = welch_t_test(a, b);
    const auto ref = reference_welch(a, b);
    REQUIRE(std::fabs(got.t - static_cast<double>(ref.t)) < 1e-9 * std::max(1.0, std::fabs(got.t)));
    REQUIRE(std::fabs(got.dof - static_cast<double>(ref.dof)) < 1e-9 * got.dof);
    REQUIRE(std::fabs(got.p - static_cast<double>(ref.p)) < 1e-6);
  }
}

TEST_CASE("welch symmetry") {
  const std::vector<double> a{3, 1, 4, 1, 5, 9}, b{2, 7, 1, 8};
  const auto ab = welch_t_test(a, b);
  const auto ba = welch_t_test(b, a);
  CHECK(ab.t == doctest::Approx(-ba.t));
  CHECK(ab.dof == doctest::Approx(ba.dof));
  CHECK(ab.p == doctest::Approx(ba.p));
  CHECK(welch_t_test(a, a).p == doctest::Approx(1.0));
}

TEST_CASE("welch degenerate inputs") {
  const std::vector<double> five{5, 5, 5}, six{6, 6};
  const auto same = welch_t_test(five, five);
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);
  CHECK(same.dof == 4.0);
  const auto differ = welch_t_test(five, six);
  CHECK(differ.t == -std::numeric_limits<double>::infinity());
  CHECK(differ.p == 0.0);
  CHECK(differ.dof == 3.0);
  CHECK_THROWS_AS(welch_t_test(std::vector<double>{1}, six), ConfigError);
  CHECK_THROWS_AS(welch_t_test(six, std::vector<double>{}), ConfigError);
}
