#include "dualfgm/fgm.hpp"

#include <cmath>
#include <string>

#include "dualfgm/error.hpp"

namespace dualfgm {

StepSchedule::StepSchedule(ScheduleKind k, double l) : kind(k), lipschitz(l) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    throw UsageError("step schedule: Lipschitz constant must be positive and finite");
  }
}

StepSizes schedule_step(StepSchedule& s, std::int64_t k) {
  if (k < 0) throw UsageError("schedule_step: k must be non-negative");
  const double l = s.lipschitz;
  double alpha = 0.0;
  if (s.kind == ScheduleKind::Simplified) {
    alpha = static_cast<double>(k + 2) / (2.0 * l);
  } else if (k == 0) {
    alpha = 1.0 / l;
  } else {
    // Positive root of L a^2 - a - alpha_k^2 L = 0.
    const double ak = s.alpha_prev;
    alpha = (1.0 + std::sqrt(1.0 + 4.0 * l * l * ak * ak)) / (2.0 * l);
  }
  s.alpha_prev = alpha;
  const double tau = s.kind == ScheduleKind::Simplified ? 2.0 / static_cast<double>(k + 2)
                                                        : 1.0 / (alpha * l);
  return {alpha, tau};
}

FgmState::FgmState(std::span<const double> start)
    : x(start.begin(), start.end()), y(x), z(x) {}

void update_dual_average(DualAverage& avg, std::span<const double> y_new, std::int64_t n_new) {
  if (n_new != avg.n + 1) {
    throw UsageError("update_dual_average: expected N = " + std::to_string(avg.n + 1));
  }
  if (avg.n == 0) {
    avg.value.assign(y_new.begin(), y_new.end());
    avg.interior_mean.assign(y_new.size(), 0.0);
  } else if (y_new.size() != avg.value.size()) {
    throw UsageError("update_dual_average: dimension mismatch");
  }
  const double n = static_cast<double>(n_new);
  // Interior mass (N-1)/(N(N+3)); the terminal weight is its complement so
  // the weights sum to one in floating point too.
  const double interior = (n - 1.0) / (n * (n + 3.0));
  kernels::lincomb(interior, avg.interior_mean, 1.0 - interior, y_new, avg.value);
  // interior_mean <- ((N-1) mean + y^N) / N
  kernels::axpby(1.0 / n, y_new, (n - 1.0) / n, avg.interior_mean);
  avg.n = n_new;
}

void fgm_step(FgmState& state, const FirstOrderOracle& oracle, StepSchedule& schedule,
              Vector& grad) {
  const std::size_t dim = state.z.size();
  if (dim != oracle.dimension || state.y.size() != dim || state.x.size() != dim) {
    throw UsageError("fgm_step: state dimension does not match the oracle");
  }
  const StepSizes step = schedule_step(schedule, state.k);
  grad.resize(dim);

  kernels::lincomb(step.tau, state.z, 1.0 - step.tau, state.y, state.x);
  oracle.gradient(state.x, grad);
  if (!all_finite(grad)) {
    throw NumericError("fgm_step: non-finite gradient", state.k + 1);
  }
  kernels::lincomb(1.0, state.x, -1.0 / schedule.lipschitz, grad, state.y);
  kernels::axpy(-step.alpha_next, grad, state.z);

  state.alpha_sum += step.alpha_next;
  ++state.k;
}

FgmResult run_fgm(const FirstOrderOracle& oracle, std::span<const double> y0,
                  StepSchedule schedule, std::int64_t max_iter, const FgmCallback& callback) {
  if (max_iter < 1) throw UsageError("run_fgm: max_iter must be at least 1");
  FgmResult r{FgmState(y0), DualAverage{}};
  Vector grad;
  while (r.state.k < max_iter) {
    fgm_step(r.state, oracle, schedule, grad);
    update_dual_average(r.average, r.state.y, r.state.k);
    if (callback && callback(r.state.k, r.state, grad) == Control::Stop) break;
  }
  return r;
}

}  // namespace dualfgm
