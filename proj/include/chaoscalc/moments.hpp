#pragma once

#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chaoscalc/partitions.hpp"
#include "chaoscalc/spectral.hpp"

namespace chaoscalc {

using Rational = boost::multiprecision::cpp_rational;

/// Moments from cumulants by recursion, generic in the scalar so the same
/// code serves doubles, exact rationals and forward-mode derivatives.
///
/// `kappa[r]` for r = 1..R (kappa[0] ignored). Returns mu[0..R] with mu[0] = 1.
///   classical: mu_n = sum_k C(n-1, k-1) kappa_k mu_{n-k}
///   free:      mu_n = sum_k kappa_k [x^{n-k}] M(x)^k,  M(x) = sum_j mu_j x^j
template <typename T>
std::vector<T> moments_recursion(ChaosKind kind, std::span<const T> kappa, int R) {
  const auto N = static_cast<std::size_t>(R);
  std::vector<T> mu(N + 1, T(0.0));
  mu[0] = T(1.0);
  if (kind == ChaosKind::classical) {
    // Pascal row for C(n-1, k-1), built up as n grows; exact in double for R < 50.
    std::vector<double> row{1.0};
    for (std::size_t n = 1; n <= N; ++n) {
      T acc(0.0);
      for (std::size_t k = 1; k <= n; ++k) acc += T(row[k - 1]) * kappa[k] * mu[n - k];
      mu[n] = acc;
      std::vector<double> next(row.size() + 1, 1.0);
      for (std::size_t i = 1; i < row.size(); ++i) next[i] = row[i - 1] + row[i];
      row = std::move(next);
    }
    return mu;
  }
  // pw[k][j] = [x^j] M(x)^k, filled column by column as moments appear.
  std::vector<std::vector<T>> pw(N + 1, std::vector<T>(N + 1, T(0.0)));
  pw[0][0] = T(1.0);
  for (std::size_t k = 1; k <= N; ++k) pw[k][0] = T(1.0);
  for (std::size_t n = 1; n <= N; ++n) {
    T acc(0.0);
    for (std::size_t k = 1; k <= n; ++k) acc += kappa[k] * pw[k][n - k];
    mu[n] = acc;
    for (std::size_t k = 1; k <= N; ++k) {
      T c(0.0);
      for (std::size_t j = 0; j <= n; ++j) c += mu[j] * pw[k - 1][n - j];
      pw[k][n] = c;
    }
  }
  return mu;
}

/// Reference path: literal sum over all set partitions (classical) or all
/// non-crossing partitions (free) of prod kappa_{|A|}. Gated by the caps.
MomentSequence moments_from_cumulants_enum(const CumulantSequence& c, int max_order, const EnumerationCaps& caps = {});

/// Fast path, same values.
MomentSequence moments_from_cumulants_recursive(const CumulantSequence& c, int max_order);

/// Inverse of the forward map by triangular solve. Requires a centered input.
CumulantSequence cumulants_from_moments(const MomentSequence& m, int max_order);

/// Exact order-indexed values with a float view. Index 0 as in OrderSequence.
struct ExactSequence {
  ChaosKind kind = ChaosKind::classical;
  std::vector<Rational> values;

  int max_order() const { return static_cast<int>(values.size()) - 1; }
  std::vector<double> as_doubles() const;
};

/// classical mu_{2r} = ((2r-1)!!)^2; free phi(F^{2n}) = (1/(2^n n)) sum_k 2^k C(n,k) C(2n,k-1). Odd entries 0.
ExactSequence target_moments(ChaosKind kind, int max_order);
/// classical kappa_{2r} = (2r-1)!; free kappa_{2n} = 2^{1-n}. Odd entries 0.
ExactSequence target_cumulants(ChaosKind kind, int max_order);

MomentSequence to_moments(const ExactSequence& e);
CumulantSequence to_cumulants(const ExactSequence& e);

}  // namespace chaoscalc
