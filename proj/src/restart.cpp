#include "dualfgm/restart.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "dualfgm/error.hpp"

namespace dualfgm {

namespace {

std::int64_t to_count(double v) {
  if (!(v < 9.0e18)) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(v);
}

struct Evaluation {
  Vector x;
  double residual = 0.0;
  double norm_y = 0.0;
};

// x(y) and the unregularized residual ||A x(y) - b||.
Evaluation evaluate_point(const ConstrainedProblem& p, std::span<const double> y) {
  Evaluation e;
  e.x.resize(p.primal_dim());
  p.prox(y, e.x);
  Vector r = matvec(p.matrix(), e.x);
  kernels::axpy(-1.0, p.rhs(), r);
  e.residual = kernels::nrm2(r);
  e.norm_y = kernels::nrm2(y);
  return e;
}

}  // namespace

std::int64_t RestartConfig::inner_iterations(double lipschitz) const {
  if (!(mu > 0.0)) throw UsageError("restart: mu must be positive");
  return std::max<std::int64_t>(1, to_count(tolerant_ceil(std::sqrt(8.0 * lipschitz / mu))));
}

bool restart_stop_test(std::span<const double> y, double residual, double eps, double eps_feas) {
  if (residual < 0.0) throw UsageError("restart_stop_test: residual must be non-negative");
  return kernels::nrm2(y) * residual <= eps && residual <= eps_feas;
}

double decay_bound(std::int64_t n, double lipschitz, double mu, double radius) {
  if (n < 0 || !(lipschitz > 0.0 && mu > 0.0 && radius > 0.0)) {
    throw UsageError("decay_bound: arguments must be positive");
  }
  return std::sqrt(2.0 * lipschitz * mu * radius * radius) *
         std::exp(-0.5 * static_cast<double>(n) * std::sqrt(mu / (8.0 * lipschitz)));
}

std::int64_t restart_iteration_bound(double lipschitz, double mu, double radius, double eps,
                                     double eps_feas) {
  if (!(lipschitz > 0.0 && mu > 0.0 && radius > 0.0 && eps > 0.0 && eps_feas > 0.0)) {
    throw UsageError("restart_iteration_bound: arguments must be positive");
  }
  const double inner = std::sqrt(8.0 * lipschitz / mu);
  const double r2 = radius * radius;
  const double by_gap =
      std::max(0.0, tolerant_ceil(std::log2(2.0 * lipschitz * mu * r2 * r2 / (eps * eps))));
  const double by_feas =
      std::max(0.0, tolerant_ceil(std::log2(2.0 * lipschitz * mu * r2 / (eps_feas * eps_feas))));
  const double n = std::max(tolerant_ceil(inner * by_gap), tolerant_ceil(inner * by_feas));
  return std::max<std::int64_t>(1, to_count(n));
}

RestartResult restart_solve(const DualOracle& dual, const RestartConfig& cfg,
                            std::int64_t max_restarts) {
  if (!(cfg.eps > 0.0) || !(cfg.eps_feas > 0.0)) {
    throw UsageError("restart_solve: eps and eps_feas must be positive");
  }
  if (cfg.check_every < 1) throw UsageError("restart_solve: check_every must be >= 1");
  if (max_restarts < 1) throw UsageError("restart_solve: max_restarts must be >= 1");
  const double lipschitz = dual.lipschitz();
  if (!(cfg.mu > 0.0) || cfg.mu > lipschitz) {
    throw UsageError("restart_solve: need 0 < mu <= L");
  }
  const ConstrainedProblem& problem = dual.problem();
  const std::size_t m = problem.dual_dim();
  if (!cfg.y0.empty() && cfg.y0.size() != m) {
    throw UsageError("restart_solve: start point has the wrong dimension");
  }
  const std::int64_t inner = cfg.inner_iterations(lipschitz);
  const auto t0 = std::chrono::steady_clock::now();
  const FirstOrderOracle oracle = dual.first_order();

  RestartResult result;
  Vector start = cfg.y0.empty() ? Vector(m, 0.0) : cfg.y0;
  std::int64_t total = 0;
  Vector grad;

  auto emit = [&](std::int64_t k, std::span<const double> y, const Evaluation& e,
                  std::optional<std::int64_t> block) {
    if (!cfg.trace) return;
    TraceRecord rec;
    rec.k = k;
    rec.dual_value = dual.value(y);
    rec.gap = e.norm_y * e.residual;
    rec.residual = e.residual;
    rec.norm_y = e.norm_y;
    rec.restart_block = block;
    if (block && cfg.reference_radius) {
      rec.decay_bound = decay_bound(k, lipschitz, cfg.mu, *cfg.reference_radius);
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    cfg.trace(rec);
  };

  auto finish = [&](std::span<const double> y, Evaluation e, bool converged) {
    result.cert.iterations = total;
    result.cert.residual = e.residual;
    result.cert.gap = e.norm_y * e.residual;
    result.cert.primal_value = problem.objective(e.x);
    result.cert.dual_value = problem.dual_value(y);
    result.cert.converged = converged;
    result.x = std::move(e.x);
    result.y.assign(y.begin(), y.end());
  };

  for (std::int64_t block = 0; block < max_restarts; ++block) {
    FgmState state(start);
    StepSchedule schedule(ScheduleKind::Simplified, lipschitz);
    DualAverage avg;
    result.blocks = block + 1;
    for (std::int64_t j = 1; j <= inner; ++j) {
      fgm_step(state, oracle, schedule, grad);
      update_dual_average(avg, state.y, j);
      ++total;
      const bool block_end = j == inner;
      if (j % cfg.check_every != 0 && !block_end) continue;

      Evaluation e = evaluate_point(problem, avg.value);
      if (!std::isfinite(e.residual)) throw NumericError("restart_solve: non-finite residual", total);
      const bool stop = restart_stop_test(avg.value, e.residual, cfg.eps, cfg.eps_feas);
      emit(total, avg.value, e, block_end ? std::optional<std::int64_t>(block) : std::nullopt);
      if (block_end && cfg.on_block_end) cfg.on_block_end(block, avg.value, total);
      if (stop) {
        finish(avg.value, std::move(e), true);
        return result;
      }
      if (block_end && block + 1 == max_restarts) {
        finish(avg.value, std::move(e), false);
        return result;
      }
    }
    start = avg.value;
  }
  return result;  // unreachable: the last block always returns
}

RestartResult restart_solve(const ConstrainedProblem& problem, const RestartConfig& cfg,
                            std::int64_t max_restarts) {
  return restart_solve(DualOracle(problem), cfg, max_restarts);
}

RegularizedResult regularized_solve(const ConstrainedProblem& problem,
                                    const RegularizedOptions& opts) {
  if (!(opts.eps > 0.0) || !(opts.eps_feas > 0.0)) {
    throw UsageError("regularized_solve: eps and eps_feas must be positive");
  }
  if (!(opts.initial_radius > 0.0)) throw UsageError("regularized_solve: R0 must be positive");
  if (opts.max_doublings < 0) throw UsageError("regularized_solve: max_doublings must be >= 0");

  RegularizedResult out;
  double r2 = opts.initial_radius * opts.initial_radius;
  Vector start(problem.dual_dim(), 0.0);

  for (std::int64_t round = 0; round <= opts.max_doublings; ++round) {
    const double mu = opts.eps / r2;
    const DualOracle dual(problem, mu);
    const double lipschitz = dual.lipschitz();

    RestartConfig cfg;
    cfg.mu = std::min(mu, lipschitz);
    cfg.eps = opts.eps;
    cfg.eps_feas = opts.eps_feas;
    cfg.check_every = opts.check_every;
    cfg.y0 = start;
    cfg.trace = opts.trace;
    // Prescribed block count for this mu with R = R0.
    const std::int64_t iters = restart_iteration_bound(lipschitz, cfg.mu, std::sqrt(r2),
                                                       opts.eps, opts.eps_feas);
    const std::int64_t inner = cfg.inner_iterations(lipschitz);
    const std::int64_t blocks = std::max<std::int64_t>(1, (iters + inner - 1) / inner);

    RestartResult r = restart_solve(dual, cfg, blocks);
    out.stats.rounds = round + 1;
    out.stats.total_iterations += r.cert.iterations;
    out.stats.final_mu = mu;
    out.x = std::move(r.x);
    out.y = r.y;
    out.cert = r.cert;
    out.cert.iterations = out.stats.total_iterations;
    if (r.cert.converged) return out;
    start = std::move(r.y);
    r2 *= 2.0;
  }
  return out;
}

}  // namespace dualfgm
