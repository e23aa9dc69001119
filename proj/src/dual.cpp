#include "dualfgm/dual.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "dualfgm/error.hpp"

namespace dualfgm {

ConstrainedProblem::ConstrainedProblem(SparseMatrix a, Vector b, PrimalNorm norm,
                                       double lipschitz)
    : a_(std::move(a)), b_(std::move(b)), norm_(norm), lipschitz_(lipschitz) {
  if (b_.size() != a_.rows()) {
    throw UsageError("constrained problem: b has length " + std::to_string(b_.size()) +
                     ", A has " + std::to_string(a_.rows()) + " rows");
  }
  if (!all_finite(b_)) throw ValidationError("constrained problem: b is not finite");
  if (!(lipschitz_ > 0.0) || !std::isfinite(lipschitz_)) {
    throw UsageError("constrained problem: Lipschitz constant must be positive");
  }
}

double ConstrainedProblem::dual_value(std::span<const double> y) const {
  Vector x(primal_dim());
  prox(y, x);
  Vector residual(b_);
  Vector ax = matvec(a_, x);
  kernels::axpy(-1.0, ax, residual);
  return kernels::dot(y, residual) - objective(x);
}

DualOracle::DualOracle(const ConstrainedProblem& problem, double regularization)
    : problem_(&problem), mu_(regularization) {
  if (!(regularization >= 0.0) || !std::isfinite(regularization)) {
    throw UsageError("dual oracle: regularization must be non-negative");
  }
}

void DualOracle::evaluate(std::span<const double> y, std::span<double> x,
                          std::span<double> grad) const {
  const ConstrainedProblem& p = *problem_;
  if (y.size() != p.dual_dim() || grad.size() != p.dual_dim() || x.size() != p.primal_dim()) {
    throw UsageError("dual oracle: dimension mismatch");
  }
  p.prox(y, x);
  if (!all_finite(x)) throw NumericError("dual oracle: prox returned a non-finite point", -1);
  matvec(p.matrix(), x, grad);
  kernels::axpby(1.0, p.rhs(), -1.0, grad);
  if (mu_ != 0.0) kernels::axpy(mu_, y, grad);
}

double DualOracle::value(std::span<const double> y) const {
  double f = problem_->dual_value(y);
  if (mu_ != 0.0) f += 0.5 * mu_ * kernels::nrm2sq(y);
  return f;
}

FirstOrderOracle DualOracle::first_order() const {
  FirstOrderOracle o;
  o.dimension = dimension();
  o.lipschitz = lipschitz();
  o.value = [self = *this](std::span<const double> y) { return self.value(y); };
  o.gradient = [self = *this](std::span<const double> y, std::span<double> g) {
    Vector x(self.problem().primal_dim());
    self.evaluate(y, x, g);
  };
  return o;
}

DualOracle build_dual_oracle(const ConstrainedProblem& problem) { return DualOracle(problem); }

double primal_weight(std::int64_t k, std::int64_t n) {
  if (n < 1 || k < 0 || k >= n) {
    throw UsageError("primal_weight: need 0 <= k < N, got k = " + std::to_string(k) +
                     ", N = " + std::to_string(n));
  }
  const double nn = static_cast<double>(n);
  return 2.0 * static_cast<double>(k + 2) / (nn * (nn + 3.0));
}

void update_primal_average(PrimalDualState& state, std::span<const double> x_new,
                           std::span<const double> grad_new, double incoming_weight) {
  if (!(incoming_weight > 0.0 && incoming_weight <= 1.0)) {
    throw UsageError("update_primal_average: weight must lie in (0, 1]");
  }
  if (state.n == 0) {
    state.x_avg.assign(x_new.size(), 0.0);
    state.r_avg.assign(grad_new.size(), 0.0);
  } else if (x_new.size() != state.x_avg.size() || grad_new.size() != state.r_avg.size()) {
    throw UsageError("update_primal_average: dimension mismatch");
  }
  const double keep = 1.0 - incoming_weight;
  kernels::axpby(incoming_weight, x_new, keep, state.x_avg);
  // A x(y) - b = -grad F(y).
  kernels::axpby(-incoming_weight, grad_new, keep, state.r_avg);
  ++state.n;
}

void update_primal_average(PrimalDualState& state, std::span<const double> x_new,
                           std::span<const double> grad_new) {
  const double n = static_cast<double>(state.n + 1);
  update_primal_average(state, x_new, grad_new, 2.0 * (n + 1.0) / (n * (n + 3.0)));
}

double tolerant_ceil(double v) {
  return std::ceil(v - 64.0 * std::numeric_limits<double>::epsilon() * std::abs(v));
}

std::int64_t primal_dual_iteration_bound(double lipschitz, double radius, double eps,
                                         double eps_feas) {
  if (!(lipschitz > 0.0 && radius > 0.0 && eps > 0.0 && eps_feas > 0.0)) {
    throw UsageError("primal_dual_iteration_bound: arguments must be positive");
  }
  const double by_gap = std::sqrt(18.0 * lipschitz * radius * radius / eps);
  const double by_feas = std::sqrt(18.0 * lipschitz * radius / eps_feas);
  const double n = tolerant_ceil(std::max(by_gap, by_feas));
  if (!(n < 9.0e18)) return std::numeric_limits<std::int64_t>::max();
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

PrimalDualResult solve_primal_dual(const ConstrainedProblem& problem,
                                   const PrimalDualOptions& opts) {
  if (!(opts.eps > 0.0) || !(opts.eps_feas > 0.0)) {
    throw UsageError("solve_primal_dual: eps and eps_feas must be positive");
  }
  if (opts.check_every < 1) throw UsageError("solve_primal_dual: check_every must be >= 1");
  const std::int64_t max_iter =
      opts.max_iter > 0
          ? opts.max_iter
          : 10 * primal_dual_iteration_bound(problem.lipschitz(), 1.0, opts.eps, opts.eps_feas);

  const auto t0 = std::chrono::steady_clock::now();
  const DualOracle dual(problem);
  const std::size_t m = problem.dual_dim();

  // x(y) at the current gradient point, captured by the oracle adapter so the
  // primal average reuses it instead of calling prox twice.
  Vector x_at_grad(problem.primal_dim());
  FirstOrderOracle oracle;
  oracle.dimension = m;
  oracle.lipschitz = dual.lipschitz();
  oracle.value = [&](std::span<const double> y) { return dual.value(y); };
  oracle.gradient = [&](std::span<const double> y, std::span<double> g) {
    dual.evaluate(y, x_at_grad, g);
  };

  PrimalDualState state{FgmState(Vector(m, 0.0)), 0, {}, {}, {}};
  StepSchedule schedule(opts.schedule, dual.lipschitz());
  Vector grad;
  PrimalDualResult result;
  Certificate& cert = result.cert;

  while (state.fgm.k < max_iter) {
    fgm_step(state.fgm, oracle, schedule, grad);
    const std::int64_t n = state.fgm.k;
    if (opts.schedule == ScheduleKind::Simplified) {
      update_primal_average(state, x_at_grad, grad);
    } else {
      update_primal_average(state, x_at_grad, grad, schedule.alpha_prev / state.fgm.alpha_sum);
    }
    update_dual_average(state.y_avg, state.fgm.y, n);
    if (opts.on_step) opts.on_step(state);

    if (n % opts.check_every != 0 && n != max_iter) continue;

    const Vector& y_tilde =
        opts.schedule == ScheduleKind::Simplified ? state.y_avg.value : state.fgm.y;
    cert.iterations = n;
    cert.dual_value = problem.dual_value(y_tilde);
    cert.primal_value = problem.objective(state.x_avg);
    cert.gap = cert.dual_value + cert.primal_value;
    cert.residual = kernels::nrm2(state.r_avg);
    if (!std::isfinite(cert.gap) || !std::isfinite(cert.residual)) {
      throw NumericError("solve_primal_dual: non-finite certificate", n);
    }
    // x^N is only approximately feasible, so the gap can dip slightly below 0.
    cert.converged = std::max(cert.gap, 0.0) <= opts.eps && cert.residual <= opts.eps_feas;

    if (opts.trace) {
      TraceRecord rec;
      rec.k = n;
      rec.dual_value = cert.dual_value;
      rec.gap = cert.gap;
      rec.residual = cert.residual;
      rec.norm_y = kernels::nrm2(y_tilde);
      rec.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      opts.trace(rec);
    }
    if (opts.on_checkpoint) opts.on_checkpoint(state, cert);
    if (cert.converged) break;
  }

  result.x = state.x_avg;
  result.y = opts.schedule == ScheduleKind::Simplified ? state.y_avg.value : state.fgm.y;
  return result;
}

}  // namespace dualfgm
