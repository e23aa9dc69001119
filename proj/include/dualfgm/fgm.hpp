#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "dualfgm/linops.hpp"

namespace dualfgm {

enum class ScheduleKind { Exact, Simplified };

/// Step sequences {alpha_k, tau_k} of the fast gradient method.
///
/// Exact:      alpha_1 = 1/L,  alpha_k^2 L = alpha_{k+1}^2 L - alpha_{k+1}
/// Simplified: alpha_{k+1} = (k+2)/(2L)
/// In both cases tau_k = 1/(alpha_{k+1} L).
///
/// The Exact recurrence needs alpha_k, kept in `alpha_prev` and advanced by
/// schedule_step().
struct StepSchedule {
  ScheduleKind kind = ScheduleKind::Simplified;
  double lipschitz = 1.0;
  double alpha_prev = 0.0;

  StepSchedule() = default;
  StepSchedule(ScheduleKind k, double l);
};

struct StepSizes {
  double alpha_next;
  double tau;
};

/// Step sizes for iteration k (k >= 0). For the Exact kind, k == 0 resets the
/// recurrence to alpha_1 = 1/L; for k > 0 it uses s.alpha_prev as alpha_k.
/// Either way s.alpha_prev becomes alpha_{k+1}.
StepSizes schedule_step(StepSchedule& s, std::int64_t k);

/// f, its gradient, and the Lipschitz constant of the gradient. Both callables
/// must be pure functions of their input.
struct FirstOrderOracle {
  std::size_t dimension = 0;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  double lipschitz = 1.0;
};

/// Three-sequence iterate. At k == 0 x == y == z.
struct FgmState {
  std::int64_t k = 0;
  Vector x;
  Vector y;
  Vector z;
  double alpha_sum = 0.0;

  explicit FgmState(std::span<const double> start = {});
};

/// Running weighted average of the gradient-step sequence y^1..y^N:
/// interior weights 1/(N(N+3)), terminal weight (N+1)^2/(N(N+3)).
struct DualAverage {
  std::int64_t n = 0;
  Vector value;
  /// Uniform mean of y^1..y^N, needed for the next update.
  Vector interior_mean;
};

/// Adds y^{n_new}; requires n_new == avg.n + 1.
void update_dual_average(DualAverage& avg, std::span<const double> y_new, std::int64_t n_new);

/// One iteration:
///   x <- tau z + (1 - tau) y
///   grad <- f'(x)
///   y <- x - grad / L
///   z <- z - alpha grad
/// `grad` receives f'(x^{k+1}); it is resized to the state dimension. Throws
/// NumericError if the gradient is not finite.
void fgm_step(FgmState& state, const FirstOrderOracle& oracle, StepSchedule& schedule,
              Vector& grad);

enum class Control { Continue, Stop };

/// Called after every step with the step count, the new state and f'(x^k).
using FgmCallback =
    std::function<Control(std::int64_t k, const FgmState& state, std::span<const double> grad)>;

struct FgmResult {
  FgmState state;
  DualAverage average;
};

/// Runs up to max_iter steps from y0, maintaining the dual average.
FgmResult run_fgm(const FirstOrderOracle& oracle, std::span<const double> y0,
                  StepSchedule schedule, std::int64_t max_iter, const FgmCallback& callback = {});

}  // namespace dualfgm
