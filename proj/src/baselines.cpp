#include "dualfgm/baselines.hpp"

#include <cmath>

#include "dualfgm/error.hpp"

namespace dualfgm {

namespace {

template <class Step>
AverageResult averaged_descent(std::span<const double> x0, std::int64_t n, double h,
                               const IterateObserver& observe, Step&& direction) {
  Vector x(x0.begin(), x0.end());
  Vector sum(x.size(), 0.0);
  Vector d(x.size());
  for (std::int64_t k = 0; k < n; ++k) {
    if (observe) observe(k, x);
    kernels::axpy(1.0, x, sum);
    direction(x, d);
    if (!all_finite(d)) throw NumericError("descent direction is not finite", k);
    kernels::axpy(-h, d, x);
  }
  if (observe) observe(n, x);
  for (double& e : sum) e /= static_cast<double>(n);
  return {std::move(sum), 0.0};
}

}  // namespace

AverageResult subgradient_solve(const SubgradOracle& oracle, std::span<const double> x0,
                                std::int64_t n, double radius, const IterateObserver& observe) {
  if (n < 1) throw UsageError("subgradient_solve: N must be at least 1");
  if (!(radius > 0.0)) throw UsageError("subgradient_solve: R must be positive");
  if (!(oracle.bound > 0.0)) throw UsageError("subgradient_solve: M must be positive");
  if (x0.size() != oracle.dimension) throw UsageError("subgradient_solve: dimension mismatch");
  const double h = radius / (oracle.bound * std::sqrt(static_cast<double>(n)));
  AverageResult r = averaged_descent(
      x0, n, h, observe,
      [&](std::span<const double> x, std::span<double> d) { oracle.subgradient(x, d); });
  r.f_bar = oracle.value(r.x_bar);
  return r;
}

AverageResult gd_solve(const FirstOrderOracle& oracle, std::span<const double> x0, std::int64_t n,
                       const IterateObserver& observe) {
  if (n < 1) throw UsageError("gd_solve: N must be at least 1");
  if (!(oracle.lipschitz > 0.0)) throw UsageError("gd_solve: L must be positive");
  if (x0.size() != oracle.dimension) throw UsageError("gd_solve: dimension mismatch");
  AverageResult r = averaged_descent(
      x0, n, 1.0 / (2.0 * oracle.lipschitz), observe,
      [&](std::span<const double> x, std::span<double> d) { oracle.gradient(x, d); });
  r.f_bar = oracle.value(r.x_bar);
  if (!std::isfinite(r.f_bar)) throw NumericError("gd_solve: non-finite objective", n);
  return r;
}

}  // namespace dualfgm
