#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "dualfgm/fgm.hpp"
#include "dualfgm/linops.hpp"

// Reference methods used as correctness anchors: averaged subgradient descent
// with a constant step R/(M sqrt N), and plain gradient descent with h = 1/(2L).

namespace dualfgm {

struct SubgradOracle {
  std::size_t dimension = 0;
  std::function<double(std::span<const double>)> value;
  /// Any element of the subdifferential; the solver never inspects it.
  std::function<void(std::span<const double>, std::span<double>)> subgradient;
  /// Bound on the subgradient norm over the sqrt(2) R ball.
  double bound = 1.0;
};

struct AverageResult {
  Vector x_bar;
  double f_bar = 0.0;
};

/// Observer for iterates x^0..x^N; used by tests to check ball properties.
using IterateObserver = std::function<void(std::int64_t k, std::span<const double> x)>;

/// N steps of x <- x - h s(x), h = R/(M sqrt N); returns the mean of x^0..x^{N-1}.
AverageResult subgradient_solve(const SubgradOracle& oracle, std::span<const double> x0,
                                std::int64_t n, double radius,
                                const IterateObserver& observe = {});

/// N steps of x <- x - f'(x)/(2L); returns the mean of x^0..x^{N-1}.
/// Throws NumericError on non-finite iterates.
AverageResult gd_solve(const FirstOrderOracle& oracle, std::span<const double> x0, std::int64_t n,
                       const IterateObserver& observe = {});

}  // namespace dualfgm
