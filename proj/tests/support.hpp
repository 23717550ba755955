#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's enumeration or recursion code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Blocks = std::vector<std::vector<int>>;

// Partitions of {1..n} built by inserting n into every block of each
// partition of {1..n-1}, or as a new singleton.
inline std::vector<Blocks> partitions_by_insertion(int n) {
  std::vector<Blocks> current{Blocks{}};
  for (int e = 1; e <= n; ++e) {
    std::vector<Blocks> next;
    for (const auto& p : current) {
      for (std::size_t b = 0; b < p.size(); ++b) {
        Blocks q = p;
        q[b].push_back(e);
        next.push_back(std::move(q));
      }
      Blocks q = p;
      q.push_back({e});
      next.push_back(std::move(q));
    }
    current = std::move(next);
  }
  return current;
}

inline bool has_crossing(const Blocks& p) {
  int n = 0;
  for (const auto& b : p) n += static_cast<int>(b.size());
  std::vector<int> label(n + 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int e : p[i]) label[e] = static_cast<int>(i);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      if (label[b] == label[a]) continue;
      for (int c = b + 1; c <= n; ++c) {
        if (label[c] != label[a]) continue;
        for (int d = c + 1; d <= n; ++d)
          if (label[d] == label[b]) return true;
      }
    }
  return false;
}

inline std::vector<Blocks> noncrossing_by_filter(int n) {
  std::vector<Blocks> out;
  for (auto& p : partitions_by_insertion(n))
    if (!has_crossing(p)) out.push_back(std::move(p));
  return out;
}

// Bell numbers read off the Bell triangle.
inline std::vector<std::uint64_t> bell_triangle(int n) {
  std::vector<std::uint64_t> bell{1};
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
    bell.push_back(row.front());
  }
  return bell;  // bell[i] = B_i
}

inline std::vector<std::uint64_t> catalan_recurrence(int n) {
  std::vector<std::uint64_t> c{1};
  for (int m = 0; m < n; ++m) {
    std::uint64_t s = 0;
    for (int i = 0; i <= m; ++i) s += c[i] * c[m - i];
    c.push_back(s);
  }
  return c;
}

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// E (N^2 - 1)^n expanded binomially against Gaussian moments.
inline double centered_chi_moment(int n) {
  double s = 0.0;
  double gauss = 1.0;  // E N^{2k} = (2k-1)!!
  for (int k = 0; k <= n; ++k) {
    if (k > 0) gauss *= 2 * k - 1;
    s += binom(n, k) * ((n - k) % 2 ? -1.0 : 1.0) * gauss;
  }
  return s;
}

// Moments of sum_z l_z (N_z^2 - 1)/sqrt2 by convolving independent terms.
inline std::vector<double> classical_moments_by_convolution(const std::vector<double>& lambdas, int R) {
  std::vector<double> total(R + 1, 0.0);
  total[0] = 1.0;
  for (double l : lambdas) {
    std::vector<double> term(R + 1);
    for (int n = 0; n <= R; ++n) term[n] = std::pow(l / std::sqrt(2.0), n) * centered_chi_moment(n);
    std::vector<double> next(R + 1, 0.0);
    for (int n = 0; n <= R; ++n)
      for (int k = 0; k <= n; ++k) next[n] += binom(n, k) * total[k] * term[n - k];
    total = std::move(next);
  }
  return total;
}

// sum over non-crossing partitions (found by filtering) of prod kappa_{|A|}.
template <typename T>
std::vector<T> free_moments_by_partition_sum(const std::vector<T>& kappa, int R) {
  std::vector<T> mu(R + 1, T(0));
  mu[0] = T(1);
  for (int n = 1; n <= R; ++n) {
    for (const auto& p : noncrossing_by_filter(n)) {
      T term(1);
      for (const auto& b : p) term = term * kappa[b.size()];
      mu[n] += term;
    }
  }
  return mu;
}

template <typename T>
std::vector<T> classical_moments_by_partition_sum(const std::vector<T>& kappa, int R) {
  std::vector<T> mu(R + 1, T(0));
  mu[0] = T(1);
  for (int n = 1; n <= R; ++n) {
    for (const auto& p : partitions_by_insertion(n)) {
      T term(1);
      for (const auto& b : p) term = term * kappa[b.size()];
      mu[n] += term;
    }
  }
  return mu;
}

inline std::vector<double> random_lambdas(std::mt19937_64& g, int min_len, int max_len, bool normalize) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::normal_distribution<double> normal;
  std::vector<double> l(static_cast<std::size_t>(len(g)));
  double s = 0.0;
  for (auto& v : l) {
    v = normal(g);
    s += v * v;
  }
  if (normalize) {
    const double scale = 1.0 / std::sqrt(s);
    for (auto& v : l) v *= scale;
  }
  return l;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// min over all bijections of sum (a_i - b_sigma(i))^2, both zero-padded to length L.
inline double min_bijection_cost(std::vector<double> a, std::vector<double> b, std::size_t L) {
  a.resize(L, 0.0);
  b.resize(L, 0.0);
  std::vector<std::size_t> perm(L);
  for (std::size_t i = 0; i < L; ++i) perm[i] = i;
  double best = INFINITY;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < L && s < best; ++i) s += (a[i] - b[perm[i]]) * (a[i] - b[perm[i]]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::size_t count_if_positive(const std::vector<double>& v, bool positive) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [&](double x) { return positive ? x > 0 : x < 0; }));
}

// sum_i (2^{n/2} l_i^n - 2^{m/2} l_i^m)^2, halved for the classical kind.
inline double delta_by_coefficients(const std::vector<double>& l, int n, int m, bool classical) {
  double s = 0.0;
  for (double x : l) {
    const double d = std::pow(2.0, n / 2.0) * std::pow(x, n) - std::pow(2.0, m / 2.0) * std::pow(x, m);
    s += d * d;
  }
  return classical ? 0.5 * s : s;
}

// Normalized sequence whose largest entry is at least 1/sqrt2 in absolute value.
inline std::vector<double> dominant_lambdas(std::mt19937_64& g, int max_len) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double top = std::sqrt(0.5 + 0.5 * u(g) * u(g));
  auto rest = random_lambdas(g, 0, max_len - 1, true);
  const double scale = std::sqrt(1.0 - top * top);
  for (auto& v : rest) v *= scale;
  if (rest.empty()) return {u(g) < 0.5 ? 1.0 : -1.0};
  rest.push_back(u(g) < 0.5 ? top : -top);
  std::shuffle(rest.begin(), rest.end(), g);
  return rest;
}

// Spectrally symmetric sequence with sum of squares s in (0, 1].
inline std::vector<double> symmetric_lambdas(std::mt19937_64& g, int max_pairs) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto half = random_lambdas(g, 1, max_pairs, true);
  const double s = std::sqrt(0.5 * (0.05 + 0.95 * u(g)));
  std::vector<double> out;
  for (double v : half) {
    out.push_back(std::abs(v) * s);
    out.push_back(-std::abs(v) * s);
  }
  std::shuffle(out.begin(), out.end(), g);
  return out;
}

struct PairFixture {
  std::vector<double> x;
  double eps = 0.0;
};

// Random input meeting the dominant-pair hypotheses: l1 norm 1, every entry
// below 1/2, and eps strictly between 1/2 - ||x||_2^2 and 1/6.
inline PairFixture dominant_pair_fixture(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const int m = 1 + static_cast<int>(u(g) * 6);
    const double a = 0.25 + 0.25 * u(g), b = 0.25 + 0.25 * u(g);
    std::gamma_distribution<double> gamma(0.2 + 2.8 * u(g));
    std::vector<double> w(static_cast<std::size_t>(m));
    double total = 0.0;
    for (auto& v : w) total += (v = gamma(g) + 1e-300);
    PairFixture f;
    f.x = {a, b};
    for (double v : w) f.x.push_back(v / total * (1.0 - a - b));
    std::shuffle(f.x.begin(), f.x.end(), g);
    double sq = 0.0, mx = 0.0;
    for (double v : f.x) {
      sq += v * v;
      mx = std::max(mx, v);
    }
    const double deficit = 0.5 - sq;
    if (mx >= 0.5 || deficit >= 1.0 / 6.0) continue;
    f.eps = deficit + (0.001 + 0.998 * u(g)) * (1.0 / 6.0 - deficit);
    return f;
  }
}

}  // namespace oracle
