#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaoscalc/moments.hpp"
#include "chaoscalc/spectral.hpp"

namespace chaoscalc {

inline constexpr double kDefaultRelativeTolerance = 1e-9;
inline constexpr double kNormalizationTolerance = 1e-8;

enum class Verdict { holds, violated, equality };
std::string_view to_string(Verdict v);

/// Outcome of one inequality or identity.
///
/// `gap` is the signed slack of the inequality: positive when it holds
/// strictly, negative when it fails. For identities it is lhs - rhs.
/// `tolerance` is the absolute threshold behind the verdict.
struct CriterionReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  Verdict verdict = Verdict::equality;
  double tolerance = 0.0;
};

/// Verdict from a signed slack. The absolute tolerance is
/// rel_tol * max(1, |lhs|, |rhs|), so high-order moments near 1e12 and
/// gaps near zero are both judged sensibly.
CriterionReport make_report(std::string name, double lhs, double rhs, double gap,
                            double rel_tol = kDefaultRelativeTolerance);

/// Cumulant form of the Gamma-difference variance.
///   classical: k_{2n}/(2n-1)! - 2 k_{n+m}/(n+m-1)! + k_{2m}/(2m-1)!
///   free:      2^m k_{2m} + 2^n k_{2n} - 2^{(n+m+2)/2} k_{n+m}
/// Requires n != m, n, m >= 1, n + m even, 2 max(n, m) <= max order.
double delta_gap(const CumulantSequence& c, int n, int m);

/// Classical only: (1/2) sum_i (2^{n/2} l_i^n - 2^{m/2} l_i^m)^2.
double delta_gap_spectral(const CoefficientSequence& seq, int n, int m);

/// Equality iff the Delta_{3,1} gap and |k_3| both vanish (within tolerance).
/// lhs carries the Delta gap and rhs carries |k_3|. Requires sum l^2 = 1.
CriterionReport characterization_check(const CoefficientSequence& seq, double rel_tol = kDefaultRelativeTolerance);

/// classical: k_{2r}/((2r-1)! k_2) - 1 >= (r-1)(k_4/(3! k_2) - 1)
/// free:      2^{r-1} k_{2r} - k_2 >= (r-1)(2 k_4 - k_2)
CriterionReport cumulant_ladder_report(const CumulantSequence& c, int r, double rel_tol = kDefaultRelativeTolerance);

/// mu_{2r}(F) >= mu_{2r}(target), given mu_2 = 1 and mu_4 at or above the target value.
CriterionReport moment_lower_bound_report(const MomentSequence& m, int r, double rel_tol = kDefaultRelativeTolerance);

/// (mu_{2n} - t_{2n}) >= factor (mu_{2m} - t_{2m}), factor C(2n-2m, 2) classical or Catalan(n-m) free.
CriterionReport moment_gap_ratio_report(const MomentSequence& m, int m_small, int n_large,
                                        double rel_tol = kDefaultRelativeTolerance);

/// Upper bounds for spectrally symmetric inputs with sum l^2 <= 1: first the
/// cumulant bound, then the moment bound.
std::vector<CriterionReport> symmetric_upper_bound_report(const CoefficientSequence& seq, int r,
                                                          double rel_tol = kDefaultRelativeTolerance);

struct DominantPair {
  std::size_t first = 0;   // 0-based, first <= second
  std::size_t second = 0;
  double residual = 0.0;   // sum of all other entries
};

/// Locates the two entries within eps of 1/2 for an l1-normalized sequence
/// whose squared l2 norm is close to 1/2. Throws PreconditionError naming the
/// failed hypothesis.
DominantPair dominant_pair_detect(std::span<const double> x, double eps);

/// 2^{-n/2} sum_k C(n,k) (-1)^{n-k} (2k)!/(k! 2^k): the n-th moment of (N^2 - 1)/sqrt2.
double classical_moment_constant(int n);
/// 2^{n/2} sum over singleton-free partitions of 2^{-|pi|} prod (|A|-1)!, by enumeration.
double classical_moment_constant_partition_form(int n);

/// Cumulant and moment bounds in terms of k_2^{n/2}. For the free kind a
/// third report uses the singleton-free non-crossing count, which is the
/// constant actually attained by a single coefficient.
std::vector<CriterionReport> hypercontractivity_report(const CumulantSequence& c, const MomentSequence& m, int n,
                                                       double rel_tol = kDefaultRelativeTolerance);

struct W2GapMode {
  enum class Kind { sextic, even_2r };
  Kind kind = Kind::sextic;
  int r = 3;
};

/// Quantity under the square root of the Wasserstein-2 bound, constant omitted.
///   sextic:  (mu_6 - t_6) - 55 (mu_4 - 9)   or   (phi_6 - 8.25) - 7 (phi_4 - 2.5)
///   even_2r: mu_{2r} - t_{2r}, which needs mu_4 >= t_4.
double w2_gap(const MomentSequence& m, W2GapMode mode = {});

/// E P(F) from moments against its cumulant expansion:
///   classical P(x) = x^6 - 55x^4 + 331x^2 - 61,  E P(F) = 120 Delta_{3,1} + 10 k_3^2
///   free      P(x) = x^6 - 7x^4 + (37/4)x^2,     phi P(F) = k_6 - k_4 + k_2/4 + 3 k_3^2
CriterionReport polynomial_identity_check(const CoefficientSequence& seq, double rel_tol = kDefaultRelativeTolerance);

/// || l_a - l_b || with positives matched in descending order, negatives
/// matched from the most negative, and missing slots filled with 0.
double coupling_distance(const CoefficientSequence& a, const CoefficientSequence& b);

/// 2 - sqrt2 l_1 + sqrt2 l_{-1}; equals coupling_distance(seq, target)^2 when sum l^2 = 1.
double target_distance_squared_formula(const CoefficientSequence& seq);

}  // namespace chaoscalc
