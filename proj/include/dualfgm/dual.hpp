#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "dualfgm/fgm.hpp"
#include "dualfgm/linops.hpp"
#include "dualfgm/trace.hpp"

namespace dualfgm {

/// min g(x) subject to Ax = b, x in Q, with g 1-strongly convex in the
/// p-norm. Derived classes supply g and the maximizer
///
///   x(y) = argmax_{x in Q} { <y, b - Ax> - g(x) }.
///
/// The dual F(y) = <y, b - A x(y)> - g(x(y)) is convex with gradient
/// b - A x(y), which is L-Lipschitz for L = max_{||x||_p <= 1} ||Ax||_2^2.
class ConstrainedProblem {
 public:
  virtual ~ConstrainedProblem() = default;

  const SparseMatrix& matrix() const noexcept { return a_; }
  std::span<const double> rhs() const noexcept { return b_; }
  PrimalNorm norm() const noexcept { return norm_; }
  double lipschitz() const noexcept { return lipschitz_; }
  std::size_t primal_dim() const noexcept { return a_.cols(); }
  std::size_t dual_dim() const noexcept { return a_.rows(); }

  /// g(x).
  virtual double objective(std::span<const double> x) const = 0;
  /// x <- x(y).
  virtual void prox(std::span<const double> y, std::span<double> x) const = 0;
  /// F(y). The default goes through prox(); subclasses may override with a
  /// closed form.
  virtual double dual_value(std::span<const double> y) const;

 protected:
  /// Throws UsageError if b does not match A or lipschitz is not positive.
  ConstrainedProblem(SparseMatrix a, Vector b, PrimalNorm norm, double lipschitz);

 private:
  SparseMatrix a_;
  Vector b_;
  PrimalNorm norm_;
  double lipschitz_;
};

/// First-order oracle of the dual, optionally with a Tikhonov term
/// (mu/2)||y||^2 added. Each gradient costs one prox call and one product Ax.
class DualOracle {
 public:
  explicit DualOracle(const ConstrainedProblem& problem, double regularization = 0.0);

  const ConstrainedProblem& problem() const noexcept { return *problem_; }
  double regularization() const noexcept { return mu_; }
  /// L of the problem plus the regularization.
  double lipschitz() const noexcept { return problem_->lipschitz() + mu_; }
  std::size_t dimension() const noexcept { return problem_->dual_dim(); }

  /// x <- x(y); grad <- b - A x + mu y. Throws NumericError if x(y) is not finite.
  void evaluate(std::span<const double> y, std::span<double> x, std::span<double> grad) const;
  /// F(y) + (mu/2)||y||^2.
  double value(std::span<const double> y) const;

  /// Stateless FirstOrderOracle view; allocates scratch per gradient call.
  FirstOrderOracle first_order() const;

 private:
  const ConstrainedProblem* problem_;
  double mu_;
};

DualOracle build_dual_oracle(const ConstrainedProblem& problem);

/// lambda_k = 2(k+2)/(N(N+3)), 0 <= k < N. Throws UsageError otherwise.
double primal_weight(std::int64_t k, std::int64_t n);

struct Certificate {
  double gap = 0.0;       // F(y~) + g(x^N)
  double residual = 0.0;  // ||A x^N - b||_2
  std::int64_t iterations = 0;
  double primal_value = 0.0;  // g(x^N)
  double dual_value = 0.0;    // F(y~)
  bool converged = false;
};

/// Dual iteration plus the lambda-weighted primal average.
struct PrimalDualState {
  FgmState fgm;
  std::int64_t n = 0;
  Vector x_avg;
  /// sum_k lambda_k (A x_k - b), kept equal to A x_avg - b without extra products.
  Vector r_avg;
  DualAverage y_avg;
};

/// Folds x_new = x(y^N) into the average with weight 2(N+1)/(N(N+3)) where
/// N = state.n + 1, and the residual average with -grad_new.
void update_primal_average(PrimalDualState& state, std::span<const double> x_new,
                           std::span<const double> grad_new);
/// Same with an explicit incoming weight in (0, 1].
void update_primal_average(PrimalDualState& state, std::span<const double> x_new,
                           std::span<const double> grad_new, double incoming_weight);

struct PrimalDualOptions {
  double eps = 1e-6;
  double eps_feas = 1e-6;
  /// 0 selects 10 * primal_dual_iteration_bound(L, 1, eps, eps_feas).
  std::int64_t max_iter = 0;
  std::int64_t check_every = 10;
  ScheduleKind schedule = ScheduleKind::Simplified;
  TraceSink trace;
  std::function<void(const PrimalDualState&)> on_step;
  std::function<void(const PrimalDualState&, const Certificate&)> on_checkpoint;
};

struct PrimalDualResult {
  Vector x;
  Vector y;
  Certificate cert;
};

/// Fast gradient method on the dual from y = z = 0, stopping once
/// gap <= eps and residual <= eps_feas at a checkpoint. Running out of
/// iterations is reported through cert.converged, not thrown.
PrimalDualResult solve_primal_dual(const ConstrainedProblem& problem,
                                   const PrimalDualOptions& opts = {});

/// ceil(max{sqrt(18 L R^2 / eps), sqrt(18 L R / eps_feas)}), at least 1.
std::int64_t primal_dual_iteration_bound(double lipschitz, double radius, double eps,
                                         double eps_feas);

/// ceil(v) that ignores relative rounding noise of a few ulps.
double tolerant_ceil(double v);

}  // namespace dualfgm
