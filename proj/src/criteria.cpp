#include "chaoscalc/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/partitions.hpp"

namespace chaoscalc {

namespace {

double factorial_d(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_normalized(double second, const char* what) {
  if (std::abs(second - 1.0) > kNormalizationTolerance) {
    throw InvalidInput(std::string(what) + ": requires unit variance, got " + std::to_string(second));
  }
}

void require_order(const OrderSequence& s, int order, const char* what) {
  if (order > s.max_order()) {
    throw InvalidInput(std::string(what) + ": needs order " + std::to_string(order) + ", data stops at " +
                       std::to_string(s.max_order()));
  }
}

double target_moment(ChaosKind kind, int order) {
  return static_cast<double>(target_moments(kind, std::max(order, 2)).values[static_cast<std::size_t>(order)]);
}

// Hypothesis shared by the lower-bound and gap-ratio results.
void require_lower_bound_hypothesis(const MomentSequence& m, const char* what) {
  require_order(m, 4, what);
  if (std::abs(m[2] - 1.0) > kNormalizationTolerance) {
    throw PreconditionError(std::string(what) + ": hypothesis " +
                            (m.kind == ChaosKind::classical ? "E(F^2) = 1" : "phi(F^2) = 1") + " fails");
  }
  const double t4 = target_moment(m.kind, 4);
  if (m[4] < t4 * (1.0 - 1e-12)) {
    throw PreconditionError(std::string(what) + ": hypothesis " +
                            (m.kind == ChaosKind::classical ? "E(F^4) >= 9" : "phi(F^4) >= 5/2") + " fails (" +
                            std::to_string(m[4]) + ")");
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::equality: return "equality";
  }
  return "?";
}

CriterionReport make_report(std::string name, double lhs, double rhs, double gap, double rel_tol) {
  const double tol = rel_tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  Verdict v = Verdict::equality;
  if (gap > tol) v = Verdict::holds;
  else if (gap < -tol) v = Verdict::violated;
  return CriterionReport{std::move(name), lhs, rhs, gap, v, tol};
}

double delta_gap(const CumulantSequence& c, int n, int m) {
  if (n == m) throw InvalidInput("delta_gap: n and m must differ");
  if (n < 1 || m < 1) throw InvalidInput("delta_gap: n and m must be positive");
  if ((n + m) % 2 != 0) throw InvalidInput("delta_gap: n + m must be even");
  require_order(c, 2 * std::max(n, m), "delta_gap");
  if (c.kind == ChaosKind::classical) {
    return c[2 * n] / factorial_d(2 * n - 1) - 2.0 * c[n + m] / factorial_d(n + m - 1) +
           c[2 * m] / factorial_d(2 * m - 1);
  }
  return std::ldexp(c[2 * m], m) + std::ldexp(c[2 * n], n) - std::ldexp(c[n + m], (n + m + 2) / 2);
}

double delta_gap_spectral(const CoefficientSequence& seq, int n, int m) {
  if (seq.kind != ChaosKind::classical) throw UnsupportedKind("delta_gap_spectral: classical kind only");
  if (n == m) throw InvalidInput("delta_gap_spectral: n and m must differ");
  if (n < 1 || m < 1) throw InvalidInput("delta_gap_spectral: n and m must be positive");
  const double sn = std::pow(2.0, 0.5 * n);
  const double sm = std::pow(2.0, 0.5 * m);
  double total = 0.0;
  for (double l : seq.lambdas) {
    const double d = sn * std::pow(l, n) - sm * std::pow(l, m);
    total += d * d;
  }
  return 0.5 * total;
}

CriterionReport characterization_check(const CoefficientSequence& seq, double rel_tol) {
  require_normalized(seq.sum_of_squares(), "characterization_check");
  const auto c = cumulants_from_coefficients(seq, 6);
  const double delta = delta_gap(c, 3, 1);
  const double odd = std::abs(c[3]);
  const double worst = std::max(delta, odd);
  CriterionReport r{"characterization", delta, odd, -worst, Verdict::equality, rel_tol};
  r.verdict = worst <= rel_tol ? Verdict::equality : Verdict::violated;
  return r;
}

CriterionReport cumulant_ladder_report(const CumulantSequence& c, int r, double rel_tol) {
  if (r < 2) throw InvalidInput("cumulant_ladder_report: r must be at least 2");
  require_order(c, std::max(2 * r, 4), "cumulant_ladder_report");
  const double k2 = c[2];
  if (!(k2 > 0.0)) throw InvalidInput("cumulant_ladder_report: second cumulant must be positive");
  double lhs, rhs;
  if (c.kind == ChaosKind::classical) {
    lhs = c[2 * r] / (factorial_d(2 * r - 1) * k2) - 1.0;
    rhs = (r - 1) * (c[4] / (6.0 * k2) - 1.0);
  } else {
    lhs = std::ldexp(c[2 * r], r - 1) - k2;
    rhs = (r - 1) * (2.0 * c[4] - k2);
  }
  return make_report("cumulant_ladder", lhs, rhs, lhs - rhs, rel_tol);
}

CriterionReport moment_lower_bound_report(const MomentSequence& m, int r, double rel_tol) {
  if (r < 1) throw InvalidInput("moment_lower_bound_report: r must be positive");
  require_lower_bound_hypothesis(m, "moment_lower_bound_report");
  require_order(m, 2 * r, "moment_lower_bound_report");
  const double lhs = m[2 * r];
  const double rhs = target_moment(m.kind, 2 * r);
  return make_report("moment_lower_bound", lhs, rhs, lhs - rhs, rel_tol);
}

CriterionReport moment_gap_ratio_report(const MomentSequence& m, int m_small, int n_large, double rel_tol) {
  if (m_small < 2 || n_large < m_small) throw InvalidInput("moment_gap_ratio_report: need 2 <= m <= n");
  require_lower_bound_hypothesis(m, "moment_gap_ratio_report");
  require_order(m, 2 * n_large, "moment_gap_ratio_report");
  const double factor = m.kind == ChaosKind::classical
                            ? static_cast<double>(binomial(2 * n_large - 2 * m_small, 2))
                            : static_cast<double>(catalan_number(n_large - m_small));
  const double lhs = m[2 * n_large] - target_moment(m.kind, 2 * n_large);
  const double rhs = factor * (m[2 * m_small] - target_moment(m.kind, 2 * m_small));
  return make_report("moment_gap_ratio", lhs, rhs, lhs - rhs, rel_tol);
}

std::vector<CriterionReport> symmetric_upper_bound_report(const CoefficientSequence& seq, int r, double rel_tol) {
  if (r < 1) throw InvalidInput("symmetric_upper_bound_report: r must be positive");
  if (!is_spectrally_symmetric(seq)) {
    throw PreconditionError("symmetric_upper_bound_report: coefficients are not spectrally symmetric");
  }
  if (seq.sum_of_squares() > 1.0 + kNormalizationTolerance) {
    throw PreconditionError("symmetric_upper_bound_report: hypothesis sum of squares <= 1 fails");
  }
  const int order = std::max(2 * r, 2);
  const auto c = cumulants_from_coefficients(seq, order);
  const auto mom = moments_from_cumulants_recursive(c, order);
  const double target_k = static_cast<double>(target_cumulants(seq.kind, order).values[static_cast<std::size_t>(2 * r)]);
  const double target_m = target_moment(seq.kind, 2 * r);
  return {
      make_report("symmetric_cumulant_upper_bound", c[2 * r], target_k, target_k - c[2 * r], rel_tol),
      make_report("symmetric_moment_upper_bound", mom[2 * r], target_m, target_m - mom[2 * r], rel_tol),
  };
}

DominantPair dominant_pair_detect(std::span<const double> x, double eps) {
  if (x.size() < 2) throw InvalidInput("dominant_pair_detect: need at least two entries");
  for (double v : x)
    if (!(v >= 0.0)) throw InvalidInput("dominant_pair_detect: entries must be non-negative");
  if (!(eps < 1.0 / 6.0)) throw PreconditionError("dominant_pair_detect: hypothesis eps < 1/6 fails");
  const double l1 = std::accumulate(x.begin(), x.end(), 0.0);
  if (std::abs(l1 - 1.0) > kNormalizationTolerance) {
    throw PreconditionError("dominant_pair_detect: hypothesis ||x||_1 = 1 fails");
  }
  if (!(*std::max_element(x.begin(), x.end()) < 0.5)) {
    throw PreconditionError("dominant_pair_detect: hypothesis ||x||_inf < 1/2 fails");
  }
  const double l2sq = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
  if (!(l2sq > 0.5 - eps)) throw PreconditionError("dominant_pair_detect: hypothesis ||x||_2^2 > 1/2 - eps fails");

  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  DominantPair out{std::min(idx[0], idx[1]), std::max(idx[0], idx[1]), 0.0};
  for (std::size_t i = 2; i < idx.size(); ++i) out.residual += x[idx[i]];
  return out;
}

double classical_moment_constant(int n) {
  if (n < 0) throw InvalidInput("classical_moment_constant: n must be non-negative");
  BigInt sum = 0;
  for (int k = 0; k <= n; ++k) {
    const BigInt term = binomial(n, k) * double_factorial(2 * k - 1);
    if ((n - k) % 2 == 0) sum += term;
    else sum -= term;
  }
  return static_cast<double>(sum) * std::pow(2.0, -0.5 * n);
}

double classical_moment_constant_partition_form(int n) {
  double total = 0.0;
  for_each_set_partition(n, [&](const std::vector<std::uint8_t>& labels, int blocks) {
    std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
    for (auto l : labels) ++sizes[l];
    double term = std::ldexp(1.0, -blocks);
    for (int s : sizes) {
      if (s == 1) return;
      term *= factorial_d(s - 1);
    }
    total += term;
  });
  return std::pow(2.0, 0.5 * n) * total;
}

std::vector<CriterionReport> hypercontractivity_report(const CumulantSequence& c, const MomentSequence& m, int n,
                                                       double rel_tol) {
  if (n < 2) throw InvalidInput("hypercontractivity_report: n must be at least 2");
  require_order(c, n, "hypercontractivity_report");
  require_order(m, n, "hypercontractivity_report");
  const double scale = std::pow(std::max(c[2], 0.0), 0.5 * n);
  const double kn = std::abs(c[n]);
  const double mn = std::abs(m[n]);
  std::vector<CriterionReport> out;
  if (c.kind == ChaosKind::classical) {
    const double kc = std::pow(2.0, 0.5 * n - 1.0) * factorial_d(n - 1) * scale;
    const double mc = classical_moment_constant(n) * scale;
    out.push_back(make_report("hypercontractivity_cumulant", kn, kc, kc - kn, rel_tol));
    out.push_back(make_report("hypercontractivity_moment", mn, mc, mc - mn, rel_tol));
  } else {
    const double mc = static_cast<double>(catalan_number(n)) * scale;
    const double sharp = static_cast<double>(partition_counts(n, PartitionFamily::noncrossing_no_singleton)) * scale;
    out.push_back(make_report("hypercontractivity_cumulant", kn, scale, scale - kn, rel_tol));
    out.push_back(make_report("hypercontractivity_moment", mn, mc, mc - mn, rel_tol));
    out.push_back(make_report("hypercontractivity_moment_sharp", mn, sharp, sharp - mn, rel_tol));
  }
  return out;
}

double w2_gap(const MomentSequence& m, W2GapMode mode) {
  require_order(m, 2, "w2_gap");
  if (std::abs(m[2] - 1.0) > kNormalizationTolerance) {
    throw PreconditionError(std::string("w2_gap: hypothesis ") +
                            (m.kind == ChaosKind::classical ? "E(F^2) = 1" : "phi(F^2) = 1") + " fails");
  }
  if (mode.kind == W2GapMode::Kind::sextic) {
    require_order(m, 6, "w2_gap");
    if (m.kind == ChaosKind::classical) return (m[6] - 225.0) - 55.0 * (m[4] - 9.0);
    return (m[6] - 8.25) - 7.0 * (m[4] - 2.5);
  }
  if (mode.r < 2) throw InvalidInput("w2_gap: even_2r mode needs r >= 2");
  require_lower_bound_hypothesis(m, "w2_gap");
  require_order(m, 2 * mode.r, "w2_gap");
  return m[2 * mode.r] - target_moment(m.kind, 2 * mode.r);
}

CriterionReport polynomial_identity_check(const CoefficientSequence& seq, double rel_tol) {
  require_normalized(seq.sum_of_squares(), "polynomial_identity_check");
  const auto c = cumulants_from_coefficients(seq, 6);
  const auto mu = moments_from_cumulants_recursive(c, 6);
  double lhs, rhs;
  if (seq.kind == ChaosKind::classical) {
    lhs = mu[6] - 55.0 * mu[4] + 331.0 * mu[2] - 61.0;
    rhs = 120.0 * delta_gap(c, 3, 1) + 10.0 * c[3] * c[3];
  } else {
    lhs = mu[6] - 7.0 * mu[4] + 9.25 * mu[2];
    rhs = c[6] - c[4] + 0.25 * c[2] + 3.0 * c[3] * c[3];
  }
  return make_report("polynomial_identity", lhs, rhs, lhs - rhs, rel_tol);
}

double coupling_distance(const CoefficientSequence& a, const CoefficientSequence& b) {
  if (a.kind != b.kind) throw InvalidInput("coupling_distance: chaos kinds differ");
  const auto [ap, an] = split_signed_parts(a);
  const auto [bp, bn] = split_signed_parts(b);
  auto aligned = [](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::max(u.size(), v.size()); ++i) {
      const double d = (i < u.size() ? u[i] : 0.0) - (i < v.size() ? v[i] : 0.0);
      s += d * d;
    }
    return s;
  };
  // Negative parts come back as magnitudes, descending, which is the same alignment.
  return std::sqrt(aligned(ap.lambdas, bp.lambdas) + aligned(an.lambdas, bn.lambdas));
}

double target_distance_squared_formula(const CoefficientSequence& seq) {
  const double s = std::sqrt(2.0);
  return 2.0 - s * seq.largest_positive() + s * seq.most_negative();
}

}  // namespace chaoscalc
