#include "chaoscalc/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/moments.hpp"
#include "parallel.hpp"

namespace chaoscalc {

namespace {

// Forward-mode value with derivatives with respect to every coefficient.
struct Jet {
  double v = 0.0;
  std::array<double, kMaxOptimizerCoefficients> d{};

  Jet() = default;
  explicit Jet(double value) : v(value) {}

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += o.d[i];
    return *this;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.v * b.v);
    for (std::size_t i = 0; i < r.d.size(); ++i) r.d[i] = a.v * b.d[i] + b.v * a.d[i];
    return r;
  }
};

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Evaluation {
  double f = 0.0;
  Vec grad;   // df/dx
  Vec c;      // raw residuals mu_j - target_j
  Mat jac;    // dc/dx, one row per constraint
};

// Moments as functions of the optimization variables x: l = x without a sign
// pattern, l = sign * x^2 with one, so the signs can never flip.
class MomentModel {
 public:
  explicit MomentModel(const OptimizationProblem& p) : problem_(p) {
    signs_ = Vec::Ones(p.k);
    squared_ = !p.sign_pattern.empty();
    for (std::size_t i = 0; i < p.sign_pattern.size(); ++i) signs_[static_cast<Eigen::Index>(i)] = p.sign_pattern[i];
    max_order_ = 4;
    for (const auto& c : p.constraints) max_order_ = std::max(max_order_, c.order);
  }

  double coefficient(const Vec& x, int i) const { return squared_ ? signs_[i] * x[i] * x[i] : x[i]; }
  double derivative(const Vec& x, int i) const { return squared_ ? 2.0 * signs_[i] * x[i] : 1.0; }
  /// Inverse map for a starting point given as magnitudes.
  double variable(double magnitude) const { return squared_ ? std::sqrt(std::abs(magnitude)) : magnitude; }

  Evaluation evaluate(const Vec& x) const {
    const int k = problem_.k;
    const auto R = static_cast<std::size_t>(max_order_);
    std::vector<Jet> kappa(R + 1);
    double fact = 1.0;
    for (std::size_t r = 2; r <= R; ++r) {
      fact *= static_cast<double>(r - 1);
      const double coef =
          problem_.kind == ChaosKind::classical ? std::pow(2.0, 0.5 * static_cast<double>(r) - 1.0) * fact : 1.0;
      Jet p;
      for (int i = 0; i < k; ++i) {
        const double l = coefficient(x, i);
        const double lr1 = std::pow(l, static_cast<double>(r - 1));
        p.v += lr1 * l;
        p.d[static_cast<std::size_t>(i)] = static_cast<double>(r) * lr1 * derivative(x, i);
      }
      p.v *= coef;
      for (auto& di : p.d) di *= coef;
      kappa[r] = p;
    }
    const auto mu = moments_recursion<Jet>(problem_.kind, std::span<const Jet>(kappa), max_order_);

    Evaluation e;
    e.f = mu[4].v;
    e.grad.resize(k);
    for (int i = 0; i < k; ++i) e.grad[i] = mu[4].d[static_cast<std::size_t>(i)];
    const auto m = static_cast<Eigen::Index>(problem_.constraints.size());
    e.c.resize(m);
    e.jac.resize(m, k);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& con = problem_.constraints[static_cast<std::size_t>(j)];
      const Jet& mj = mu[static_cast<std::size_t>(con.order)];
      e.c[j] = mj.v - con.target;
      for (int i = 0; i < k; ++i) e.jac(j, i) = mj.d[static_cast<std::size_t>(i)];
    }
    return e;
  }

 private:
  const OptimizationProblem& problem_;
  Vec signs_;
  bool squared_ = false;
  int max_order_ = 4;
};

struct Outcome {
  std::vector<double> lambdas;
  double objective = 0.0;
  double violation = std::numeric_limits<double>::infinity();
  double kkt = std::numeric_limits<double>::infinity();
};

class AugmentedLagrangian {
 public:
  AugmentedLagrangian(const OptimizationProblem& p, const MomentModel& model)
      : problem_(p), model_(model), sense_(p.objective == MomentObjective::minimize_mu4 ? 1.0 : -1.0) {
    const auto m = static_cast<Eigen::Index>(p.constraints.size());
    scale_.resize(m);
    for (Eigen::Index j = 0; j < m; ++j)
      scale_[j] = 1.0 / std::max(1.0, std::abs(p.constraints[static_cast<std::size_t>(j)].target));
    multipliers_ = Vec::Zero(m);
  }

  Vec solve(Vec x) {
    double prev = std::numeric_limits<double>::infinity();
    const double blowup = 1e2 * std::max(1.0, x.norm());
    for (int outer = 0; outer < 80; ++outer) {
      const Vec before = x;
      x = inner_bfgs(x);
      // Maximizing a quartic against a quadratic penalty can run off to
      // infinity; step back and stiffen the penalty.
      if (!x.allFinite() || x.norm() > blowup) {
        x = before;
        penalty_ = std::min(penalty_ * 10.0, 1e10);
        continue;
      }
      const Evaluation e = model_.evaluate(x);
      const Vec sc = scale_.cwiseProduct(e.c);
      const double viol = sc.size() ? sc.cwiseAbs().maxCoeff() : 0.0;
      if (viol <= 1e-9 && last_inner_converged_) break;
      multipliers_ += penalty_ * sc;
      if (viol > 0.25 * prev) {
        if (penalty_ >= 1e10) break;  // stalled at the largest penalty
        penalty_ = std::min(penalty_ * 10.0, 1e10);
      }
      prev = viol;
    }
    return polish(x);
  }

 private:
  double merit(const Evaluation& e) const {
    const Vec sc = scale_.cwiseProduct(e.c);
    return sense_ * e.f + multipliers_.dot(sc) + 0.5 * penalty_ * sc.squaredNorm();
  }

  Vec merit_gradient(const Evaluation& e) const {
    const Vec sc = scale_.cwiseProduct(e.c);
    const Vec weights = (multipliers_ + penalty_ * sc).cwiseProduct(scale_);
    return sense_ * e.grad + e.jac.transpose() * weights;
  }

  Vec inner_bfgs(Vec x) {
    const auto k = x.size();
    Mat h = Mat::Identity(k, k);
    Evaluation e = model_.evaluate(x);
    double phi = merit(e);
    Vec g = merit_gradient(e);
    const double gtol = std::max(problem_.stationarity_tol, 1e-14) * (1.0 + penalty_);
    last_inner_converged_ = false;
    for (int iter = 0; iter < 400; ++iter) {
      if (g.lpNorm<Eigen::Infinity>() <= gtol) {
        last_inner_converged_ = true;
        break;
      }
      Vec p = -h * g;
      if (g.dot(p) >= 0.0) {
        h.setIdentity();
        p = -g;
      }
      const double pn = p.norm();
      if (pn > 0.5) p *= 0.5 / pn;
      double t = 1.0;
      Vec xn;
      Evaluation en;
      double phin = 0.0;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        xn = x + t * p;
        en = model_.evaluate(xn);
        phin = merit(en);
        if (std::isfinite(phin) && phin <= phi + 1e-4 * t * g.dot(p)) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) {
        // No descent at working precision; treat as stationary.
        last_inner_converged_ = true;
        break;
      }
      const Vec gn = merit_gradient(en);
      const Vec s = xn - x;
      const Vec y = gn - g;
      const double sy = s.dot(y);
      if (sy > 1e-16 * s.norm() * y.norm()) {
        const double rho = 1.0 / sy;
        const Mat I = Mat::Identity(k, k);
        h = (I - rho * s * y.transpose()) * h * (I - rho * y * s.transpose()) + rho * s * s.transpose();
      }
      x = xn;
      g = gn;
      phi = phin;
    }
    return x;
  }

  // Minimum-norm Newton steps onto the constraint manifold.
  Vec polish(Vec x) const {
    if (problem_.constraints.empty()) return x;
    for (int it = 0; it < 30; ++it) {
      const Evaluation e = model_.evaluate(x);
      if (e.c.cwiseAbs().maxCoeff() <= 1e-3 * problem_.constraint_tol) break;
      const Vec step = e.jac.completeOrthogonalDecomposition().solve(-e.c);
      if (!step.allFinite()) break;
      const Vec xn = x + step;
      if (model_.evaluate(xn).c.cwiseAbs().maxCoeff() >= e.c.cwiseAbs().maxCoeff()) break;
      x = xn;
    }
    return x;
  }

  const OptimizationProblem& problem_;
  const MomentModel& model_;
  double sense_;
  Vec scale_;
  Vec multipliers_;
  double penalty_ = 10.0;
  bool last_inner_converged_ = false;
};

double kkt_residual(const Evaluation& e) {
  const double gn = e.grad.norm();
  if (e.c.size() == 0) return gn / std::max(1.0, gn);
  const Vec y = e.jac.transpose().completeOrthogonalDecomposition().solve(-e.grad);
  return (e.grad + e.jac.transpose() * y).norm() / std::max(1.0, gn);
}

double initial_radius(const OptimizationProblem& p) {
  for (const auto& c : p.constraints)
    if (c.order == 2 && c.target > 0.0) return std::sqrt(c.target);
  return 1.0;
}

Outcome run_restart(const OptimizationProblem& p, const MomentModel& model, std::size_t restart) {
  CounterRng rng(p.seed, restart);
  std::normal_distribution<double> normal;
  Vec u(p.k);
  for (int i = 0; i < p.k; ++i) u[i] = normal(rng);
  if (u.norm() == 0.0) u.setOnes();
  u *= initial_radius(p) / u.norm();
  Vec x(p.k);
  for (int i = 0; i < p.k; ++i) x[i] = model.variable(u[i]);

  AugmentedLagrangian solver(p, model);
  x = solver.solve(x);

  Outcome out;
  const Evaluation e = model.evaluate(x);
  out.kkt = kkt_residual(e);
  for (int i = 0; i < p.k; ++i) out.lambdas.push_back(model.coefficient(x, i));
  // Objective and constraints are re-derived through the public moment path.
  const CoefficientSequence seq(p.kind, out.lambdas);
  int order = 4;
  for (const auto& c : p.constraints) order = std::max(order, c.order);
  const auto mu = moments_from_cumulants_recursive(cumulants_from_coefficients(seq, order), order);
  out.objective = mu[4];
  out.violation = 0.0;
  for (const auto& c : p.constraints) out.violation = std::max(out.violation, std::abs(mu[c.order] - c.target));
  if (!std::isfinite(out.objective)) out.violation = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

void OptimizationProblem::validate() const {
  if (k < 1 || k > kMaxOptimizerCoefficients) {
    throw InvalidInput("optimization problem: k must be in 1.." + std::to_string(kMaxOptimizerCoefficients));
  }
  for (const auto& c : constraints) {
    if (c.order < 2 || c.order > 12 || c.order % 2 != 0) {
      throw InvalidInput("optimization problem: constraint orders must be even and in 2..12");
    }
    if (!std::isfinite(c.target)) throw InvalidInput("optimization problem: constraint target is not finite");
  }
  if (!(constraint_tol > 0.0)) throw InvalidInput("optimization problem: constraint_tol must be positive");
  if (!(stationarity_tol > 0.0)) throw InvalidInput("optimization problem: stationarity_tol must be positive");
  if (restarts < 1) throw InvalidInput("optimization problem: restarts must be positive");
  if (!sign_pattern.empty()) {
    if (static_cast<int>(sign_pattern.size()) != k) {
      throw InvalidInput("optimization problem: sign pattern length must equal k");
    }
    for (int s : sign_pattern)
      if (s != 1 && s != -1) throw InvalidInput("optimization problem: sign pattern entries must be +1 or -1");
  }
}

ProblemEvaluation evaluate_problem(const OptimizationProblem& p, std::span<const double> lambdas) {
  if (static_cast<int>(lambdas.size()) != p.k) throw InvalidInput("evaluate_problem: expected k coefficients");
  OptimizationProblem plain = p;
  plain.sign_pattern.clear();
  plain.validate();
  const MomentModel model(plain);
  Vec x(p.k);
  for (int i = 0; i < p.k; ++i) x[i] = lambdas[static_cast<std::size_t>(i)];
  const Evaluation e = model.evaluate(x);
  ProblemEvaluation out;
  out.objective = e.f;
  out.gradient.assign(e.grad.data(), e.grad.data() + e.grad.size());
  for (Eigen::Index j = 0; j < e.c.size(); ++j) {
    out.constraint_values.push_back(e.c[j]);
    std::vector<double> row(static_cast<std::size_t>(p.k));
    for (int i = 0; i < p.k; ++i) row[static_cast<std::size_t>(i)] = e.jac(j, i);
    out.constraint_gradients.push_back(std::move(row));
  }
  return out;
}

OptimizationResult minimize_fourth_moment(const OptimizationProblem& p, unsigned threads) {
  p.validate();
  const MomentModel model(p);
  std::vector<Outcome> outcomes(static_cast<std::size_t>(p.restarts));
  detail::parallel_for(outcomes.size(), threads,
                       [&](std::size_t i) { outcomes[i] = run_restart(p, model, i); });

  const double sense = p.objective == MomentObjective::minimize_mu4 ? 1.0 : -1.0;
  int best = -1;
  bool best_feasible = false;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    const bool feasible = o.violation <= p.constraint_tol;
    if (best < 0) {
      best = static_cast<int>(i);
      best_feasible = feasible;
      continue;
    }
    const auto& b = outcomes[static_cast<std::size_t>(best)];
    bool better;
    if (feasible != best_feasible) better = feasible;
    else if (feasible) better = sense * o.objective < sense * b.objective;
    else better = o.violation < b.violation;
    if (better) {
      best = static_cast<int>(i);
      best_feasible = feasible;
    }
  }

  const auto& b = outcomes[static_cast<std::size_t>(best)];
  OptimizationResult r;
  r.lambdas = canonicalize(CoefficientSequence(p.kind, b.lambdas));
  r.objective_value = b.objective;
  r.constraint_violation = b.violation;
  r.kkt_residual = b.kkt;
  r.converged = best_feasible && b.kkt <= 1e-6;
  r.restarts_used = p.restarts;
  r.best_restart = best;
  return r;
}

}  // namespace chaoscalc
