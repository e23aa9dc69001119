#pragma once

// Seeded problem instances shared by the unit tests and the acceptance suite.

#include <random>

#include "dualfgm/problems.hpp"
#include "oracles.hpp"

namespace fixture {

/// ELP instance with entries U[0,1] and b = A x for a random simplex point,
/// so the constraint set is non-empty.
inline dualfgm::ElpProblem random_elp(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(seed);
  const auto d = oracle::uniform_dense(rng, rows, cols, 0.0, 1.0);
  const auto xhat = oracle::simplex_point(rng, cols);
  auto b = oracle::dense_matvec(d, rows, cols, xhat);
  return dualfgm::ElpProblem(dualfgm::SparseMatrix::from_dense(static_cast<std::int64_t>(rows),
                                                               static_cast<std::int64_t>(cols), d),
                             std::move(b));
}

/// Least-norm instance with a Gaussian A of full row rank and b = A x0.
inline dualfgm::QuadraticProblem random_quadratic(std::uint64_t seed, std::size_t rows,
                                                  std::size_t cols) {
  std::mt19937_64 rng(seed);
  const auto d = oracle::gaussian_dense(rng, rows, cols);
  const auto x0 = oracle::gaussian_vector(rng, cols);
  auto b = oracle::dense_matvec(d, rows, cols, x0);
  const double l = oracle::jacobi_eigenvalues(oracle::gram_rows(d, rows, cols), rows).back();
  return dualfgm::QuadraticProblem(
      dualfgm::SparseMatrix::from_dense(static_cast<std::int64_t>(rows),
                                        static_cast<std::int64_t>(cols), d),
      std::move(b), l);
}

/// Smallest non-zero eigenvalue of A A^T, by Jacobi on the dense Gram matrix.
inline double min_positive_eigenvalue(const dualfgm::SparseMatrix& a) {
  const auto d = a.to_dense();
  const auto ev = oracle::jacobi_eigenvalues(oracle::gram_rows(d, a.rows(), a.cols()), a.rows());
  const double tol = 1e-10 * ev.back();
  for (double e : ev)
    if (e > tol) return e;
  return 0.0;
}

/// Least-norm multiplier for the quadratic problem: y* = -(A A^T)^{-1} b for
/// full row rank A (the sign follows x(y) = -A^T y).
inline dualfgm::Vector quadratic_dual_solution(const dualfgm::QuadraticProblem& p) {
  const auto& a = p.matrix();
  const auto d = a.to_dense();
  auto y = oracle::solve(oracle::gram_rows(d, a.rows(), a.cols()),
                         dualfgm::Vector(p.rhs().begin(), p.rhs().end()), a.rows());
  for (double& e : y) e = -e;
  return y;
}

}  // namespace fixture
