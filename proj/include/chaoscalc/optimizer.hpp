#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chaoscalc/monte_carlo.hpp"
#include "chaoscalc/spectral.hpp"

namespace chaoscalc {

inline constexpr int kMaxOptimizerCoefficients = 16;

enum class MomentObjective { minimize_mu4, maximize_mu4 };

/// Equality constraint mu_order(l) = target.
struct MomentConstraint {
  int order = 2;
  double target = 1.0;
};

struct OptimizationProblem {
  ChaosKind kind = ChaosKind::classical;
  int k = 1;
  MomentObjective objective = MomentObjective::minimize_mu4;
  std::vector<MomentConstraint> constraints;
  /// Empty, or k entries of +1 / -1 fixing the sign of each coefficient.
  std::vector<int> sign_pattern;
  int restarts = 64;
  std::uint64_t seed = kDefaultSeed;
  double constraint_tol = 1e-10;
  double stationarity_tol = 1e-12;

  /// Throws InvalidInput when the problem is malformed.
  void validate() const;
};

struct OptimizationResult {
  CoefficientSequence lambdas;
  double objective_value = 0.0;
  double constraint_violation = 0.0;
  /// Relative first-order residual |grad f + J^T y| / max(1, |grad f|) at the least-squares multipliers.
  double kkt_residual = 0.0;
  bool converged = false;
  int restarts_used = 0;
  int best_restart = -1;
};

struct ProblemEvaluation {
  double objective = 0.0;                    // mu_4
  std::vector<double> constraint_values;     // mu_order - target, per constraint
  std::vector<double> gradient;              // d mu_4 / d l
  std::vector<std::vector<double>> constraint_gradients;
};

/// Objective, constraint residuals and analytic derivatives with respect to the coefficients.
ProblemEvaluation evaluate_problem(const OptimizationProblem& p, std::span<const double> lambdas);

/// Multistart augmented-Lagrangian minimization (or maximization) of mu_4.
/// Never throws on non-convergence: converged = false and the least
/// infeasible iterate is returned instead.
OptimizationResult minimize_fourth_moment(const OptimizationProblem& p, unsigned threads = 0);

}  // namespace chaoscalc
