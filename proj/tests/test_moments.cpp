#include <doctest.h>

#include <cmath>
#include <random>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/moments.hpp"
#include "support.hpp"

using namespace chaoscalc;

namespace {

std::vector<double> random_cumulants(std::mt19937_64& g, int R, bool centered) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> k(R + 1, 0.0);
  for (int r = 1; r <= R; ++r) k[r] = u(g);
  if (centered) k[1] = 0.0;
  k[2] = std::abs(k[2]) + 0.1;
  return k;
}

double catalan_d(int n) { return static_cast<double>(catalan_number(n)); }

// Mobius function of the non-crossing lattice from pi to the top, via the
// Kreweras complement read as the permutation pi^{-1} o (1 2 ... n).
double mobius_to_top(const oracle::Blocks& pi, int n) {
  std::vector<int> next(n + 1), prev(n + 1);
  for (const auto& b : pi) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      next[b[i]] = b[(i + 1) % b.size()];
      prev[b[(i + 1) % b.size()]] = b[i];
    }
  }
  std::vector<bool> seen(n + 1, false);
  double m = 1.0;
  for (int s = 1; s <= n; ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (int i = s; !seen[i]; i = prev[i % n + 1]) {
      seen[i] = true;
      ++len;
    }
    m *= ((len - 1) % 2 ? -1.0 : 1.0) * catalan_d(len - 1);
  }
  return m;
}

double product_over_blocks(const oracle::Blocks& p, const std::vector<double>& v) {
  double t = 1.0;
  for (const auto& b : p) t *= v[b.size()];
  return t;
}

}  // namespace

TEST_CASE("recursion matches partition sums from the oracle") {
  std::mt19937_64 g(21);
  for (int trial = 0; trial < 40; ++trial) {
    const bool centered = trial % 2 == 0;
    const auto k = random_cumulants(g, 9, centered);
    const auto cl = oracle::classical_moments_by_partition_sum(k, 8);
    const auto fr = oracle::free_moments_by_partition_sum(k, 9);
    const auto mc = moments_from_cumulants_recursive(CumulantSequence(ChaosKind::classical, k), 8);
    const auto mf = moments_from_cumulants_recursive(CumulantSequence(ChaosKind::free, k), 9);
    for (int n = 1; n <= 8; ++n) CHECK(oracle::close_rel(mc[n], cl[n], 1e-12));
    for (int n = 1; n <= 9; ++n) CHECK(oracle::close_rel(mf[n], fr[n], 1e-12));
  }
}

TEST_CASE("enumeration path matches recursion") {
  std::mt19937_64 g(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto k = random_cumulants(g, 12, trial % 3 != 0);
    const CumulantSequence cc(ChaosKind::classical, k), cf(ChaosKind::free, k);
    const auto a = moments_from_cumulants_enum(cc, 10);
    const auto b = moments_from_cumulants_recursive(cc, 10);
    const auto x = moments_from_cumulants_enum(cf, 12);
    const auto y = moments_from_cumulants_recursive(cf, 12);
    for (int n = 1; n <= 10; ++n) CHECK(oracle::close_rel(a[n], b[n], 1e-10));
    for (int n = 1; n <= 12; ++n) CHECK(oracle::close_rel(x[n], y[n], 1e-10));
  }
}

TEST_CASE("classical moments of coefficient sequences match convolution") {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto l = oracle::random_lambdas(g, 1, 6, trial % 2 == 0);
    const auto expect = oracle::classical_moments_by_convolution(l, 10);
    const auto mu = moments_from_cumulants_recursive(
        cumulants_from_coefficients(CoefficientSequence(ChaosKind::classical, l), 10), 10);
    for (int n = 1; n <= 10; ++n) CHECK(oracle::close_rel(mu[n], expect[n], 1e-10));
  }
}

TEST_CASE("free single coefficient is a shifted free Poisson") {
  // phi((S^2)^k) = Catalan(k), so phi((l(S^2-1))^n) = l^n sum_k C(n,k)(-1)^{n-k} Cat(k).
  for (double l : {1.0, -0.6, 0.3}) {
    const auto mu = moments_from_cumulants_recursive(cumulants_from_coefficients(CoefficientSequence(ChaosKind::free, {l}), 10), 10);
    for (int n = 1; n <= 10; ++n) {
      double s = 0.0;
      for (int k = 0; k <= n; ++k) s += oracle::binom(n, k) * ((n - k) % 2 ? -1.0 : 1.0) * catalan_d(k);
      CHECK(oracle::close_rel(mu[n], std::pow(l, n) * s, 1e-12));
    }
  }
}

TEST_CASE("inversion round-trips") {
  std::mt19937_64 g(24);
  for (int trial = 0; trial < 100; ++trial) {
    const auto kind = trial % 2 ? ChaosKind::free : ChaosKind::classical;
    const auto k = random_cumulants(g, 12, true);
    const auto m = moments_from_cumulants_recursive(CumulantSequence(kind, k), 12);
    const auto back = cumulants_from_moments(m, 12);
    for (int r = 1; r <= 12; ++r) CHECK(std::abs(back[r] - k[r]) <= 1e-9 * std::max(1.0, std::abs(k[r])));
  }
}

TEST_CASE("inversion rejects non-centered data and short inputs") {
  const MomentSequence m(ChaosKind::classical, {1.0, 0.5, 1.0, 0.0, 3.0});
  CHECK_THROWS_AS(cumulants_from_moments(m, 4), InvalidInput);
  const MomentSequence ok(ChaosKind::free, {1.0, 0.0, 1.0, 0.0, 2.0});
  CHECK_THROWS_AS(cumulants_from_moments(ok, 6), InvalidInput);
  const auto c = cumulants_from_moments(ok, 4);
  CHECK(c[4] == doctest::Approx(0.0).epsilon(1e-15));  // semicircle
}

TEST_CASE("moment paths reject orders past the data or the caps") {
  const CumulantSequence c(ChaosKind::classical, std::vector<double>(7, 0.1));
  CHECK_THROWS_AS(moments_from_cumulants_recursive(c, 7), InvalidInput);
  CHECK_THROWS_AS(moments_from_cumulants_enum(c, 7), InvalidInput);
  const CumulantSequence big(ChaosKind::classical, std::vector<double>(20, 0.1));
  CHECK_THROWS_AS(moments_from_cumulants_enum(big, 13), CapacityError);
  CHECK_THROWS_AS(moments_from_cumulants_enum(big, 5, EnumerationCaps{4, 4}), CapacityError);
  CHECK_NOTHROW(moments_from_cumulants_enum(big, 4, EnumerationCaps{4, 4}));
  const CumulantSequence bigf(ChaosKind::free, std::vector<double>(20, 0.1));
  CHECK_THROWS_AS(moments_from_cumulants_enum(bigf, 15), CapacityError);
}

TEST_CASE("Gaussian and semicircle") {
  const auto g = moments_from_cumulants_recursive(CumulantSequence(ChaosKind::classical, {0, 0, 1, 0, 0, 0, 0, 0, 0}), 8);
  CHECK(g[8] == doctest::Approx(105.0));
  const auto s = moments_from_cumulants_recursive(CumulantSequence(ChaosKind::free, {0, 0, 1, 0, 0, 0, 0, 0, 0}), 8);
  CHECK(s[8] == doctest::Approx(14.0));
  CHECK(s[7] == 0.0);
}

TEST_CASE("exact target tables") {
  const auto cm = target_moments(ChaosKind::classical, 16);
  const auto ck = target_cumulants(ChaosKind::classical, 16);
  for (int r = 1; r <= 8; ++r) {
    const BigInt df = double_factorial(2 * r - 1);
    CHECK(cm.values[2 * r] == Rational(df * df));
    CHECK(ck.values[2 * r] == Rational(factorial(2 * r - 1)));
    CHECK(cm.values[2 * r - 1] == 0);
    CHECK(ck.values[2 * r - 1] == 0);
  }
  CHECK(cm.values[16] == Rational(BigInt(2027025) * BigInt(2027025)));

  const auto fm = target_moments(ChaosKind::free, 8);
  CHECK(fm.values[2] == Rational(1));
  CHECK(fm.values[4] == Rational(5, 2));
  CHECK(fm.values[6] == Rational(33, 4));
  CHECK(fm.values[8] == Rational(249, 8));
  const auto fk = target_cumulants(ChaosKind::free, 8);
  CHECK(fk.values[2] == Rational(1));
  CHECK(fk.values[4] == Rational(1, 2));
  CHECK(fk.values[8] == Rational(1, 8));
}

TEST_CASE("exact targets agree with exact partition sums") {
  for (auto kind : {ChaosKind::classical, ChaosKind::free}) {
    const int R = 8;
    const auto k = target_cumulants(kind, R).values;
    const auto expect = kind == ChaosKind::classical ? oracle::classical_moments_by_partition_sum(k, R)
                                                     : oracle::free_moments_by_partition_sum(k, R);
    const auto m = target_moments(kind, R).values;
    for (int n = 1; n <= R; ++n) CHECK(m[n] == expect[n]);
    // The generic recursion in exact arithmetic lands on the same table.
    const auto viaRec = moments_recursion<Rational>(kind, std::span<const Rational>(k), R);
    for (int n = 1; n <= R; ++n) CHECK(viaRec[n] == m[n]);
  }
}

TEST_CASE("float views") {
  const auto m = to_moments(target_moments(ChaosKind::free, 6));
  CHECK(m.kind == ChaosKind::free);
  CHECK(m[6] == 8.25);
  CHECK(target_moments(ChaosKind::classical, 4).as_doubles()[4] == 9.0);
}

TEST_CASE("displayed free Mobius formula versus true non-crossing inversion") {
  // The formula with (-1)^{|rho|-1} Cat(|rho|-1) per partition agrees with
  // inversion on centered data through order 5 and fails from order 6. The
  // Kreweras-complement Mobius function agrees at every order.
  std::mt19937_64 g(25);
  for (int trial = 0; trial < 10; ++trial) {
    const auto k = random_cumulants(g, 8, true);
    const auto mu = moments_from_cumulants_recursive(CumulantSequence(ChaosKind::free, k), 8);
    const auto& mv = mu.values;
    for (int n = 2; n <= 8; ++n) {
      double displayed = 0.0, kreweras = 0.0;
      for (const auto& p : oracle::noncrossing_by_filter(n)) {
        const int blocks = static_cast<int>(p.size());
        displayed += ((blocks - 1) % 2 ? -1.0 : 1.0) * catalan_d(blocks - 1) * product_over_blocks(p, mv);
        kreweras += mobius_to_top(p, n) * product_over_blocks(p, mv);
      }
      CAPTURE(n);
      CHECK(oracle::close_rel(kreweras, k[n], 1e-10));
      if (n <= 5) CHECK(oracle::close_rel(displayed, k[n], 1e-10));
      if (n == 6) CHECK_FALSE(oracle::close_rel(displayed, k[n], 1e-6));
    }
  }
}
