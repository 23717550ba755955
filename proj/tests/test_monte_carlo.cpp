#include <doctest.h>

#include <cmath>
#include <sstream>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/monte_carlo.hpp"
#include "chaoscalc/moments.hpp"

using namespace chaoscalc;

TEST_CASE("counter rng is a pure function of seed, stream and position") {
  CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  CHECK(a() == b());
}

TEST_CASE("samples do not depend on the thread count") {
  const CoefficientSequence seq(ChaosKind::classical, {0.6, -0.8});
  const auto one = sample_classical(seq, 2000, 99, 1);
  const auto four = sample_classical(seq, 2000, 99, 4);
  CHECK(one.values == four.values);
  CHECK(one.seed == 99);
  const auto other = sample_classical(seq, 2000, 100, 1);
  CHECK(one.values != other.values);
}

TEST_CASE("sampler argument checks") {
  CHECK_THROWS_AS(sample_classical(CoefficientSequence(ChaosKind::free, {1.0}), 10, 1), UnsupportedKind);
  CHECK_THROWS_AS(sample_classical(CoefficientSequence(ChaosKind::classical, {1.0}), 0, 1), InvalidInput);
  const auto zero = sample_classical(CoefficientSequence(ChaosKind::classical, {}), 5, 1);
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("empirical moments of a single chi-square term") {
  // (N^2 - 1)/sqrt2 has variance 1, third moment 2 sqrt2.
  const auto batch = sample_classical(CoefficientSequence(ChaosKind::classical, {1.0}), 200000, kDefaultSeed);
  const auto m = empirical_moments(batch, 4);
  CHECK(m[0] == 1.0);
  CHECK(std::abs(m[1]) < 5.0 / std::sqrt(200000.0));
  CHECK(m[2] == doctest::Approx(1.0).epsilon(0.03));
  CHECK(m[3] == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(0.1));
  CHECK_THROWS_AS(empirical_moments(batch, 1), InvalidInput);
}

TEST_CASE("empirical wasserstein") {
  SampleBatch a{{3.0, 1.0, 2.0}, 0}, b{{1.0, 2.0, 3.0}, 0}, c{{2.0, 3.0, 4.0}, 0};
  CHECK(empirical_wasserstein2(a, b) == 0.0);
  CHECK(empirical_wasserstein2(a, c) == doctest::Approx(1.0));
  SampleBatch d{{1.0}, 0};
  CHECK_THROWS_AS(empirical_wasserstein2(a, d), InvalidInput);
}

TEST_CASE("csv export carries the parameters") {
  const CoefficientSequence seq(ChaosKind::classical, {0.5, -0.25});
  const auto batch = sample_classical(seq, 3, 42);
  std::ostringstream out;
  write_batch_csv(out, batch, seq);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# seed=42 count=3 kind=classical lambda=[0.5,-0.25]");
  std::getline(in, line);
  CHECK(line == "value");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::stod(line) == batch.values[rows]);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("gue estimator on a small matrix") {
  const auto seq = target_coefficients(ChaosKind::free);
  const auto est = gue_free_moment_estimates(seq, 4, 128, 8, kDefaultSeed);
  REQUIRE(est.size() == 2);
  CHECK(est[0].order == 2);
  CHECK(est[1].order == 4);
  CHECK(std::abs(est[0].estimate - 1.0) < 4 * est[0].std_error + 0.02);
  CHECK(std::abs(est[1].estimate - 2.5) < 4 * est[1].std_error + 0.1);
  const auto single = gue_free_moment_estimate(seq, 4, 128, 8, kDefaultSeed, 1);
  CHECK(single.estimate == est[1].estimate);
}

TEST_CASE("gue argument checks") {
  const auto seq = target_coefficients(ChaosKind::free);
  CHECK_THROWS_AS(gue_free_moment_estimate(target_coefficients(ChaosKind::classical), 4, 128, 2, 1), UnsupportedKind);
  CHECK_THROWS_AS(gue_free_moment_estimate(seq, 3, 128, 2, 1), InvalidInput);
  CHECK_THROWS_AS(gue_free_moment_estimate(seq, 14, 128, 2, 1), InvalidInput);
  CHECK_THROWS_AS(gue_free_moment_estimate(seq, 4, 32, 2, 1), InvalidInput);
  CHECK_THROWS_AS(gue_free_moment_estimate(seq, 4, 128, 0, 1), InvalidInput);
}
