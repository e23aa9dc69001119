#pragma once

#include <span>
#include <utility>

#include "dualfgm/dual.hpp"
#include "dualfgm/linops.hpp"

namespace dualfgm {

/// Numerically safe softmax / log-sum-exp (max-shifted).
void softmax(std::span<const double> v, std::span<double> out);
Vector softmax(std::span<const double> v);
double logsumexp(std::span<const double> v);

/// Entropy-linear programming: min sum_k x_k ln x_k over the unit simplex
/// subject to Ax = b. The entropy is 1-strongly convex in the 1-norm, so the
/// dual Lipschitz constant is the largest squared column norm of A.
///
///   x(y) = softmax(-A^T y)
///   F(y) = <y, b> + log sum_k exp(-[A^T y]_k)
class ElpProblem final : public ConstrainedProblem {
 public:
  ElpProblem(SparseMatrix a, Vector b);

  /// sum x ln x with 0 ln 0 = 0; +inf if any entry is negative.
  double objective(std::span<const double> x) const override;
  void prox(std::span<const double> y, std::span<double> x) const override;
  double dual_value(std::span<const double> y) const override;

 private:
  ElpProblem(std::pair<SparseMatrix, double> a_and_l, Vector b);
};

Vector elp_prox(const ElpProblem& problem, std::span<const double> y);
double elp_dual_value(const ElpProblem& problem, std::span<const double> y);

/// Least-norm solution of Ax = b: min (1/2)||x||^2 subject to Ax = b, with
/// L = lambda_max(A^T A).
///
/// With the multiplier convention used by ConstrainedProblem the maximizer is
/// x(y) = -A^T y and F(y) = <b, y> + (1/2)||A^T y||^2.
class QuadraticProblem final : public ConstrainedProblem {
 public:
  /// Estimates L by power iteration.
  QuadraticProblem(SparseMatrix a, Vector b, const PowerIterationOptions& opts = {});
  QuadraticProblem(SparseMatrix a, Vector b, double lipschitz);

  double objective(std::span<const double> x) const override;
  void prox(std::span<const double> y, std::span<double> x) const override;
  double dual_value(std::span<const double> y) const override;

  /// Convergence flag of the power iteration (true when L was supplied).
  bool lipschitz_converged() const noexcept { return lipschitz_converged_; }

 private:
  QuadraticProblem(std::pair<SparseMatrix, SpectralEstimate> a_and_l, Vector b);
  bool lipschitz_converged_ = true;
};

/// The same problem written as max_w { <b, w> - (1/2)||A^T w||^2 } with
/// w = -y: primal recovery x = A^T w and its objective. prox(y) == quad_prox(-y).
Vector quad_prox(const QuadraticProblem& problem, std::span<const double> w);
double quad_dual_value(const QuadraticProblem& problem, std::span<const double> w);

/// Stationary distribution of a row-stochastic P as the least-norm solution of
///
///   [ P^T - I ]       [ 0 ]
///   [ 1 ... 1 ] x  =  [ 1 ]
struct PageRankInstance {
  SparseMatrix transition;
  QuadraticProblem problem;
};

/// Builds A of shape (n+1) x n without densifying P. Throws ValidationError
/// for a non-square P, a negative entry, or a row whose sum is off by more
/// than 1e-8 (the message names the row).
SparseMatrix pagerank_matrix(const SparseMatrix& transition);
PageRankInstance build_pagerank(const SparseMatrix& transition,
                                const PowerIterationOptions& opts = {});

}  // namespace dualfgm
