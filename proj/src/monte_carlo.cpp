#include "chaoscalc/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "chaoscalc/errors.hpp"
#include "parallel.hpp"

namespace chaoscalc {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using ComplexMatrix = Eigen::MatrixXcd;

ComplexMatrix sample_gue(CounterRng& rng, int n) {
  std::normal_distribution<double> normal;
  const double diag_scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double off_scale = 1.0 / std::sqrt(2.0 * n);
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    g(j, j) = normal(rng) * diag_scale;
    for (int i = j + 1; i < n; ++i) {
      const double re = normal(rng) * off_scale;
      const double im = normal(rng) * off_scale;
      g(i, j) = {re, im};
      g(j, i) = {re, -im};
    }
  }
  return g;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream ^ 0xD1B54A32D192ED03ULL))) {}

CounterRng::result_type CounterRng::operator()() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++); }

SampleBatch sample_classical(const CoefficientSequence& seq, std::size_t count, std::uint64_t seed, unsigned threads) {
  if (seq.kind != ChaosKind::classical) {
    throw UnsupportedKind("sample_classical: no classical sampler for free chaos; use the GUE estimator");
  }
  if (count == 0) throw InvalidInput("sample_classical: count must be positive");
  SampleBatch batch{std::vector<double>(count), seed};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  detail::parallel_for(count, threads, [&](std::size_t i) {
    CounterRng rng(seed, i);
    std::normal_distribution<double> normal;
    double f = 0.0;
    for (double l : seq.lambdas) {
      const double z = normal(rng);
      f += l * (z * z - 1.0);
    }
    batch.values[i] = f * inv_sqrt2;
  });
  return batch;
}

MomentSequence empirical_moments(const SampleBatch& batch, int max_order) {
  if (max_order < 2) throw InvalidInput("empirical_moments: max order must be at least 2");
  if (batch.values.empty()) throw InvalidInput("empirical_moments: empty batch");
  std::vector<double> sums(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (double x : batch.values) {
    double p = 1.0;
    for (int r = 1; r <= max_order; ++r) {
      p *= x;
      sums[static_cast<std::size_t>(r)] += p;
    }
  }
  const double n = static_cast<double>(batch.values.size());
  for (auto& s : sums) s /= n;
  sums[0] = 1.0;
  return MomentSequence(ChaosKind::classical, std::move(sums));
}

double empirical_wasserstein2(const SampleBatch& a, const SampleBatch& b) {
  if (a.count() != b.count()) throw InvalidInput("empirical_wasserstein2: batch sizes differ");
  if (a.values.empty()) throw InvalidInput("empirical_wasserstein2: empty batches");
  std::vector<double> x = a.values, y = b.values;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s / static_cast<double>(x.size()));
}

void write_batch_csv(std::ostream& out, const SampleBatch& batch, const CoefficientSequence& seq) {
  out << "# seed=" << batch.seed << " count=" << batch.count() << " kind=" << to_string(seq.kind) << " lambda=[";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < seq.lambdas.size(); ++i) out << (i ? "," : "") << seq.lambdas[i];
  out << "]\nvalue\n";
  for (double v : batch.values) out << v << '\n';
}

std::vector<GueEstimate> gue_free_moment_estimates(const CoefficientSequence& seq, int max_order, int matrix_size,
                                                   int replicas, std::uint64_t seed, unsigned threads) {
  if (seq.kind != ChaosKind::free) throw UnsupportedKind("gue_free_moment_estimate: free kind only");
  if (max_order < 2 || max_order % 2 != 0) throw InvalidInput("gue_free_moment_estimate: order must be even and >= 2");
  if (max_order > 12) throw InvalidInput("gue_free_moment_estimate: order must be at most 12");
  if (matrix_size < 64) throw InvalidInput("gue_free_moment_estimate: matrix size must be at least 64");
  if (replicas < 1) throw InvalidInput("gue_free_moment_estimate: replicas must be positive");

  const int orders = max_order / 2;
  std::vector<std::vector<double>> per_replica(static_cast<std::size_t>(replicas));
  detail::parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t rep) {
    CounterRng rng(seed, rep);
    const int n = matrix_size;
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (double l : seq.lambdas) {
      const ComplexMatrix g = sample_gue(rng, n);
      m.noalias() += l * (g * g);
      m.diagonal().array() -= l;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = solver.eigenvalues();
    std::vector<double> traces(static_cast<std::size_t>(orders), 0.0);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const double sq = ev[i] * ev[i];
      double p = 1.0;
      for (int k = 0; k < orders; ++k) {
        p *= sq;
        traces[static_cast<std::size_t>(k)] += p;
      }
    }
    for (auto& t : traces) t /= n;
    per_replica[rep] = std::move(traces);
  });

  std::vector<GueEstimate> out;
  for (int k = 0; k < orders; ++k) {
    double mean = 0.0;
    for (const auto& r : per_replica) mean += r[static_cast<std::size_t>(k)];
    mean /= replicas;
    double var = 0.0;
    for (const auto& r : per_replica) var += (r[static_cast<std::size_t>(k)] - mean) * (r[static_cast<std::size_t>(k)] - mean);
    const double se = replicas > 1 ? std::sqrt(var / (replicas - 1) / replicas) : 0.0;
    out.push_back(GueEstimate{2 * (k + 1), mean, matrix_size, replicas, se});
  }
  return out;
}

GueEstimate gue_free_moment_estimate(const CoefficientSequence& seq, int order, int matrix_size, int replicas,
                                     std::uint64_t seed, unsigned threads) {
  if (order % 2 != 0) throw InvalidInput("gue_free_moment_estimate: order must be even");
  return gue_free_moment_estimates(seq, order, matrix_size, replicas, seed, threads).back();
}

}  // namespace chaoscalc
