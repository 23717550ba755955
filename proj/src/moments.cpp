#include "chaoscalc/moments.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

namespace {

using Signature = std::vector<int>;  // sorted block sizes
using SignatureCounts = std::map<Signature, std::uint64_t>;

// Partitions of a given order grouped by block-size multiset. The product of
// cumulants only depends on that multiset, so the partition sum reduces to
// a weighted sum over signatures.
const SignatureCounts& signature_counts(ChaosKind kind, int n) {
  static std::mutex mutex;
  static std::map<std::pair<ChaosKind, int>, SignatureCounts> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({kind, n});
  if (inserted) {
    auto& counts = it->second;
    auto tally = [&](const std::vector<std::uint8_t>& labels, int blocks) {
      Signature sizes(static_cast<std::size_t>(blocks), 0);
      for (auto l : labels) ++sizes[l];
      std::sort(sizes.begin(), sizes.end());
      ++counts[sizes];
    };
    if (kind == ChaosKind::classical) for_each_set_partition(n, tally);
    else for_each_noncrossing_partition(n, tally);
  }
  return it->second;
}

}  // namespace

MomentSequence moments_from_cumulants_enum(const CumulantSequence& c, int max_order, const EnumerationCaps& caps) {
  const int cap = c.kind == ChaosKind::classical ? caps.set_partitions : caps.noncrossing;
  if (max_order > cap) {
    throw CapacityError("moments_from_cumulants_enum: order " + std::to_string(max_order) +
                        " exceeds the enumeration cap " + std::to_string(cap));
  }
  if (max_order > c.max_order()) throw InvalidInput("moments_from_cumulants_enum: order exceeds cumulant data");
  if (max_order < 1) throw InvalidInput("moments_from_cumulants_enum: order must be at least 1");
  std::vector<double> mu(static_cast<std::size_t>(max_order) + 1, 0.0);
  mu[0] = 1.0;
  for (int n = 1; n <= max_order; ++n) {
    double total = 0.0;
    for (const auto& [sizes, count] : signature_counts(c.kind, n)) {
      double prod = static_cast<double>(count);
      for (int s : sizes) prod *= c[s];
      total += prod;
    }
    mu[static_cast<std::size_t>(n)] = total;
  }
  return MomentSequence(c.kind, std::move(mu));
}

MomentSequence moments_from_cumulants_recursive(const CumulantSequence& c, int max_order) {
  if (max_order > c.max_order()) throw InvalidInput("moments_from_cumulants_recursive: order exceeds cumulant data");
  if (max_order < 1) throw InvalidInput("moments_from_cumulants_recursive: order must be at least 1");
  std::vector<double> kappa(c.values.begin(), c.values.begin() + max_order + 1);
  return MomentSequence(c.kind, moments_recursion<double>(c.kind, kappa, max_order));
}

CumulantSequence cumulants_from_moments(const MomentSequence& m, int max_order) {
  if (max_order > m.max_order()) throw InvalidInput("cumulants_from_moments: order exceeds moment data");
  if (max_order < 1) throw InvalidInput("cumulants_from_moments: order must be at least 1");
  const double scale = max_order >= 2 ? std::sqrt(std::abs(m[2])) : 0.0;
  if (std::abs(m[1]) > 1e-12 * std::max(1.0, scale)) {
    throw InvalidInput("cumulants_from_moments: input is not centered (first moment " + std::to_string(m[1]) + ")");
  }
  const auto N = static_cast<std::size_t>(max_order);
  std::vector<double> mu(m.values.begin(), m.values.begin() + max_order + 1);
  mu[0] = 1.0;
  mu[1] = 0.0;
  std::vector<double> kappa(N + 1, 0.0);

  if (m.kind == ChaosKind::classical) {
    std::vector<double> row{1.0};
    for (std::size_t n = 1; n <= N; ++n) {
      double acc = mu[n];
      for (std::size_t k = 1; k < n; ++k) acc -= row[k - 1] * kappa[k] * mu[n - k];
      kappa[n] = acc;
      std::vector<double> next(row.size() + 1, 1.0);
      for (std::size_t i = 1; i < row.size(); ++i) next[i] = row[i - 1] + row[i];
      row = std::move(next);
    }
  } else {
    // [x^j] M(x)^k from the known moments, then peel off the k = n term.
    std::vector<std::vector<double>> pw(N + 1, std::vector<double>(N + 1, 0.0));
    pw[0][0] = 1.0;
    for (std::size_t k = 1; k <= N; ++k)
      for (std::size_t j = 0; j <= N; ++j)
        for (std::size_t i = 0; i <= j; ++i) pw[k][j] += mu[i] * pw[k - 1][j - i];
    for (std::size_t n = 1; n <= N; ++n) {
      double acc = mu[n];
      for (std::size_t k = 1; k < n; ++k) acc -= kappa[k] * pw[k][n - k];
      kappa[n] = acc;
    }
  }
  return CumulantSequence(m.kind, std::move(kappa));
}

std::vector<double> ExactSequence::as_doubles() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(static_cast<double>(v));
  return out;
}

ExactSequence target_moments(ChaosKind kind, int max_order) {
  if (max_order < 2) throw InvalidInput("target_moments: max order must be at least 2");
  ExactSequence out{kind, std::vector<Rational>(static_cast<std::size_t>(max_order) + 1, Rational(0))};
  out.values[0] = 1;
  for (int n = 1; 2 * n <= max_order; ++n) {
    Rational v;
    if (kind == ChaosKind::classical) {
      const BigInt df = double_factorial(2 * n - 1);
      v = Rational(df * df);
    } else {
      BigInt sum = 0;
      for (int k = 1; k <= n; ++k) sum += (BigInt(1) << k) * binomial(n, k) * binomial(2 * n, k - 1);
      v = Rational(sum, (BigInt(1) << n) * n);
    }
    out.values[static_cast<std::size_t>(2 * n)] = v;
  }
  return out;
}

ExactSequence target_cumulants(ChaosKind kind, int max_order) {
  if (max_order < 2) throw InvalidInput("target_cumulants: max order must be at least 2");
  ExactSequence out{kind, std::vector<Rational>(static_cast<std::size_t>(max_order) + 1, Rational(0))};
  for (int n = 1; 2 * n <= max_order; ++n) {
    out.values[static_cast<std::size_t>(2 * n)] =
        kind == ChaosKind::classical ? Rational(factorial(2 * n - 1)) : Rational(BigInt(1), BigInt(1) << (n - 1));
  }
  return out;
}

MomentSequence to_moments(const ExactSequence& e) { return MomentSequence(e.kind, e.as_doubles()); }

CumulantSequence to_cumulants(const ExactSequence& e) {
  auto v = e.as_doubles();
  v[0] = 0.0;
  return CumulantSequence(e.kind, std::move(v));
}

}  // namespace chaoscalc
