#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dualfgm/kernels.hpp"

namespace dualfgm {

/// Dense real vector. All iterates, right-hand sides and averages use it.
using Vector = std::vector<double>;

struct Triplet {
  std::int64_t row;
  std::int64_t col;
  double value;
};

enum class Duplicates { Reject, Sum };

/// Immutable sparse matrix keeping both a row-compressed and a
/// column-compressed copy, so that Ax and A^T y are both O(nnz) gathers.
/// Explicit zeros are dropped at construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Throws ValidationError on out-of-range indices, non-finite values, or
  /// (with Duplicates::Reject) repeated (row, col) pairs.
  static SparseMatrix from_triplets(std::int64_t rows, std::int64_t cols,
                                    std::vector<Triplet> entries,
                                    Duplicates policy = Duplicates::Reject);
  static SparseMatrix from_dense(std::int64_t rows, std::int64_t cols,
                                 std::span<const double> row_major);
  static SparseMatrix identity(std::int64_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return row_val_.size(); }

  // Row-compressed view.
  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const kernels::Index> row_col() const noexcept { return row_col_; }
  std::span<const double> row_val() const noexcept { return row_val_; }
  // Column-compressed view.
  std::span<const std::size_t> col_ptr() const noexcept { return col_ptr_; }
  std::span<const kernels::Index> col_row() const noexcept { return col_row_; }
  std::span<const double> col_val() const noexcept { return col_val_; }

  /// Entries in row-major order.
  std::vector<Triplet> triplets() const;
  /// Row-major dense copy; intended for tests and small diagnostics.
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<kernels::Index> row_col_;
  std::vector<double> row_val_;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<kernels::Index> col_row_;
  std::vector<double> col_val_;
};

/// out = A x. Throws UsageError on dimension mismatch.
void matvec(const SparseMatrix& a, std::span<const double> x, std::span<double> out);
Vector matvec(const SparseMatrix& a, std::span<const double> x);

/// out = A^T y. Throws UsageError on dimension mismatch.
void rmatvec(const SparseMatrix& a, std::span<const double> y, std::span<double> out);
Vector rmatvec(const SparseMatrix& a, std::span<const double> y);

/// Squared Euclidean norm of every column.
Vector column_norms_sq(const SparseMatrix& a);

struct SpectralEstimate {
  double value = 0.0;
  std::int64_t iterations = 0;
  /// False when max_iter ran out before the relative change dropped below tol.
  bool converged = false;
};

struct PowerIterationOptions {
  double tol = 1e-9;
  /// 0 selects 10 * cols.
  std::int64_t max_iter = 0;
  std::uint64_t seed = 42;
};

/// lambda_max(A^T A) by power iteration on v -> A^T (A v) from a seeded
/// Gaussian start.
SpectralEstimate spectral_norm_sq(const SparseMatrix& a, const PowerIterationOptions& opts = {});

/// Norm used for the strong convexity of the primal objective.
enum class PrimalNorm { L1 = 1, L2 = 2 };

/// max_{||x||_p <= 1} ||Ax||_2^2: the largest squared column norm for p = 1,
/// lambda_max(A^T A) for p = 2.
double dual_lipschitz(const SparseMatrix& a, PrimalNorm p, const PowerIterationOptions& opts = {});
/// Integer overload; throws UsageError unless p is 1 or 2.
double dual_lipschitz(const SparseMatrix& a, int p, const PowerIterationOptions& opts = {});

bool all_finite(std::span<const double> v);

}  // namespace dualfgm
