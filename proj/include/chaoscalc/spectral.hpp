#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace chaoscalc {

/// Classical: F = sum l_z (N_z^2 - 1)/sqrt(2) with iid Gaussians.
/// Free: F = sum l_z (S_z^2 - 1) with freely independent semicirculars.
enum class ChaosKind { classical, free };

std::string_view to_string(ChaosKind kind);
/// Throws InvalidInput on anything other than "classical" or "free".
ChaosKind parse_chaos_kind(std::string_view tag);

/// Spectral coefficients of a second-chaos element. Zeros are dropped on
/// construction; everything else is stored as given until canonicalize().
struct CoefficientSequence {
  ChaosKind kind = ChaosKind::classical;
  std::vector<double> lambdas;

  CoefficientSequence() = default;
  CoefficientSequence(ChaosKind k, std::vector<double> values);

  double sum_of_squares() const;
  /// Largest positive coefficient, or 0 when there is none.
  double largest_positive() const;
  /// Most negative coefficient, or 0 when there is none.
  double most_negative() const;
  bool empty() const { return lambdas.empty(); }
  std::size_t size() const { return lambdas.size(); }
};

/// Order-indexed data: values[r] for r = 1..R. Slot 0 holds 1 (the zeroth
/// moment) for moments and 0 for cumulants so that recursions can index freely.
struct OrderSequence {
  ChaosKind kind = ChaosKind::classical;
  std::vector<double> values;

  OrderSequence() = default;
  OrderSequence(ChaosKind k, std::vector<double> v) : kind(k), values(std::move(v)) {}

  int max_order() const { return static_cast<int>(values.size()) - 1; }
  /// Bounds-checked read; throws InvalidInput past max_order().
  double at(int r) const;
  double operator[](int r) const { return values[static_cast<std::size_t>(r)]; }
};

struct CumulantSequence : OrderSequence {
  using OrderSequence::OrderSequence;
};

struct MomentSequence : OrderSequence {
  using OrderSequence::OrderSequence;
};

/// Drops zeros; positives descending, then negatives ascending in value
/// (largest magnitude first). Idempotent.
CoefficientSequence canonicalize(const CoefficientSequence& seq);

/// Power sum p_r = sum_z l_z^r.
double power_sum(std::span<const double> lambdas, int r);

/// Classical: k_r = 2^{r/2-1} (r-1)! p_r; free: k_r = p_r; k_1 = 0 for both.
/// Throws InvalidInput when max_order < 2.
CumulantSequence cumulants_from_coefficients(const CoefficientSequence& seq, int max_order);

/// Positive part and absolute values of the negative part, each canonical.
std::pair<CoefficientSequence, CoefficientSequence> split_signed_parts(const CoefficientSequence& seq);

/// [1/sqrt2, -1/sqrt2]: the normal product law (classical) or the tetilla law (free).
CoefficientSequence target_coefficients(ChaosKind kind);

/// True when the multiset of coefficients is invariant under negation (exact comparison).
bool is_spectrally_symmetric(const CoefficientSequence& seq);

}  // namespace chaoscalc
