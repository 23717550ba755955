#include "chaoscalc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

std::string_view to_string(ChaosKind kind) { return kind == ChaosKind::classical ? "classical" : "free"; }

ChaosKind parse_chaos_kind(std::string_view tag) {
  if (tag == "classical") return ChaosKind::classical;
  if (tag == "free") return ChaosKind::free;
  throw InvalidInput("unknown chaos kind '" + std::string(tag) + "'");
}

CoefficientSequence::CoefficientSequence(ChaosKind k, std::vector<double> values) : kind(k) {
  lambdas.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("coefficient is not finite");
    if (v != 0.0) lambdas.push_back(v);
  }
}

double CoefficientSequence::sum_of_squares() const { return power_sum(lambdas, 2); }

double CoefficientSequence::largest_positive() const {
  double best = 0.0;
  for (double v : lambdas) best = std::max(best, v);
  return best;
}

double CoefficientSequence::most_negative() const {
  double best = 0.0;
  for (double v : lambdas) best = std::min(best, v);
  return best;
}

double OrderSequence::at(int r) const {
  if (r < 0 || r > max_order()) {
    throw InvalidInput("order " + std::to_string(r) + " outside 0.." + std::to_string(max_order()));
  }
  return values[static_cast<std::size_t>(r)];
}

CoefficientSequence canonicalize(const CoefficientSequence& seq) {
  CoefficientSequence out(seq.kind, seq.lambdas);
  std::sort(out.lambdas.begin(), out.lambdas.end(), [](double a, double b) {
    if ((a > 0) != (b > 0)) return a > 0;
    return a > 0 ? a > b : a < b;
  });
  return out;
}

double power_sum(std::span<const double> lambdas, int r) {
  double s = 0.0;
  for (double v : lambdas) {
    double p = 1.0;
    for (int i = 0; i < r; ++i) p *= v;
    s += p;
  }
  return s;
}

CumulantSequence cumulants_from_coefficients(const CoefficientSequence& seq, int max_order) {
  if (max_order < 2) throw InvalidInput("cumulants_from_coefficients: max order must be at least 2");
  std::vector<double> k(static_cast<std::size_t>(max_order) + 1, 0.0);
  double fact = 1.0;  // (r-1)!
  for (int r = 2; r <= max_order; ++r) {
    fact *= (r - 1);
    const double p = power_sum(seq.lambdas, r);
    k[static_cast<std::size_t>(r)] =
        seq.kind == ChaosKind::classical ? std::pow(2.0, 0.5 * r - 1.0) * fact * p : p;
  }
  return CumulantSequence(seq.kind, std::move(k));
}

std::pair<CoefficientSequence, CoefficientSequence> split_signed_parts(const CoefficientSequence& seq) {
  std::vector<double> pos, neg;
  for (double v : seq.lambdas) {
    if (v > 0) pos.push_back(v);
    else if (v < 0) neg.push_back(-v);
  }
  return {canonicalize(CoefficientSequence(seq.kind, std::move(pos))),
          canonicalize(CoefficientSequence(seq.kind, std::move(neg)))};
}

CoefficientSequence target_coefficients(ChaosKind kind) {
  const double h = 1.0 / std::sqrt(2.0);
  return CoefficientSequence(kind, {h, -h});
}

bool is_spectrally_symmetric(const CoefficientSequence& seq) {
  auto [pos, neg] = split_signed_parts(seq);
  return pos.lambdas == neg.lambdas;
}

}  // namespace chaoscalc
