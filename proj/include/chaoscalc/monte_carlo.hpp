#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "chaoscalc/spectral.hpp"

namespace chaoscalc {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Counter-based generator: the output is a pure function of
/// (seed, stream, position), so stream i can be produced by any thread.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = kDefaultSeed;
  std::size_t count() const { return values.size(); }
};

/// Draw i is sum_j l_j (N_{ij}^2 - 1)/sqrt2 with normals from stream i.
/// `threads` = 0 picks the hardware concurrency; the output does not depend on it.
SampleBatch sample_classical(const CoefficientSequence& seq, std::size_t count, std::uint64_t seed,
                             unsigned threads = 0);

/// values[r] = mean of x^r, r = 1..R, values[0] = 1.
MomentSequence empirical_moments(const SampleBatch& batch, int max_order);

/// Exact W2 between two equal-size empirical measures (sorted coupling).
double empirical_wasserstein2(const SampleBatch& a, const SampleBatch& b);

/// Single-column CSV with a comment header carrying the generating parameters.
void write_batch_csv(std::ostream& out, const SampleBatch& batch, const CoefficientSequence& seq);

struct GueEstimate {
  int order = 0;
  double estimate = 0.0;
  int matrix_size = 0;
  int replicas = 0;
  double std_error = 0.0;
};

/// Normalized trace of M^order for M = sum_z l_z (G_z^2 - I) with independent
/// GUE matrices scaled to a unit semicircle, averaged over replicas.
GueEstimate gue_free_moment_estimate(const CoefficientSequence& seq, int order, int matrix_size, int replicas,
                                     std::uint64_t seed, unsigned threads = 0);

/// Same replicas, every even order 2..max_order.
std::vector<GueEstimate> gue_free_moment_estimates(const CoefficientSequence& seq, int max_order, int matrix_size,
                                                   int replicas, std::uint64_t seed, unsigned threads = 0);

}  // namespace chaoscalc
