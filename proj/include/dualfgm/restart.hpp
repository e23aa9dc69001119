#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "dualfgm/dual.hpp"

// Restarted fast gradient method for duals that are mu-strongly convex in the
// 2-norm (e.g. g with Lipschitz gradient and no set constraint). Each block
// runs ceil(sqrt(8L/mu)) simplified-schedule iterations from the previous
// block's averaged point, which halves the squared distance to y*.

namespace dualfgm {

struct RestartConfig {
  double mu = 0.0;
  double eps = 1e-6;
  double eps_feas = 1e-6;
  std::int64_t check_every = 10;
  /// Empty starts from zero.
  Vector y0;
  /// Only used to report decay_bound() in trace records; the solver itself
  /// never consumes it.
  std::optional<double> reference_radius;
  TraceSink trace;
  /// Called at every block end with the block index, the averaged point and
  /// the total number of inner iterations so far.
  std::function<void(std::int64_t block, std::span<const double> y, std::int64_t total)>
      on_block_end;

  /// ceil(sqrt(8 L / mu)).
  std::int64_t inner_iterations(double lipschitz) const;
};

struct RestartResult {
  Vector x;  // x(y) at the stopping point
  Vector y;
  /// gap holds ||y|| * ||A x(y) - b||, an upper bound on g(x(y)) - g(x*).
  Certificate cert;
  std::int64_t blocks = 0;
};

/// true iff ||y|| * residual <= eps and residual <= eps_feas.
bool restart_stop_test(std::span<const double> y, double residual, double eps, double eps_feas);

/// sqrt(2 L mu R^2) exp(-(N/2) sqrt(mu / (8L))): envelope on ||A x(y^N) - b||
/// after N inner iterations in total.
double decay_bound(std::int64_t n, double lipschitz, double mu, double radius);

/// Worst-case iteration count of the restarted method under restart_stop_test.
std::int64_t restart_iteration_bound(double lipschitz, double mu, double radius, double eps,
                                     double eps_feas);

/// Runs up to max_restarts blocks on the dual of `problem`. The stopping test
/// is evaluated at every inner checkpoint and block end on the block average.
RestartResult restart_solve(const ConstrainedProblem& problem, const RestartConfig& cfg,
                            std::int64_t max_restarts);

/// Same on an arbitrary (possibly regularized) dual oracle. The stopping test
/// always uses the unregularized residual b - A x(y).
RestartResult restart_solve(const DualOracle& dual, const RestartConfig& cfg,
                            std::int64_t max_restarts);

struct RegularizedStats {
  std::int64_t rounds = 0;
  std::int64_t total_iterations = 0;
  double final_mu = 0.0;
};

struct RegularizedResult {
  Vector x;
  Vector y;
  Certificate cert;
  RegularizedStats stats;
};

struct RegularizedOptions {
  double eps = 1e-6;
  double eps_feas = 1e-6;
  /// Initial guess for ||y*||.
  double initial_radius = 1.0;
  std::int64_t max_doublings = 30;
  std::int64_t check_every = 10;
  TraceSink trace;
};

/// Baseline for duals that are not strongly convex: add (mu/2)||y||^2 with
/// mu = eps / R0^2, run the restarted method for the prescribed number of
/// blocks, and on failure double R0^2 (halve mu), warm-starting from the last
/// point. Non-convergence after max_doublings is flagged in cert.converged.
RegularizedResult regularized_solve(const ConstrainedProblem& problem,
                                    const RegularizedOptions& opts = {});

}  // namespace dualfgm
