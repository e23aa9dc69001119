#include "dualfgm/linops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "dualfgm/error.hpp"

namespace dualfgm {

namespace {

std::string pos(std::int64_t r, std::int64_t c) {
  return "(" + std::to_string(r) + ", " + std::to_string(c) + ")";
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw UsageError(std::string(what) + ": expected length " + std::to_string(want) + ", got " +
                     std::to_string(got));
  }
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(std::int64_t rows, std::int64_t cols,
                                         std::vector<Triplet> entries, Duplicates policy) {
  constexpr auto kMaxIndex = std::numeric_limits<kernels::Index>::max();
  if (rows < 0 || cols < 0 || rows > kMaxIndex || cols > kMaxIndex) {
    throw ValidationError("matrix dimensions out of range: " + pos(rows, cols));
  }
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw ValidationError("entry " + pos(t.row, t.col) + " outside " + pos(rows, cols) +
                            " matrix");
    }
    if (!std::isfinite(t.value)) {
      throw ValidationError("non-finite value at " + pos(t.row, t.col));
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  // Merge duplicates, then drop zeros.
  std::vector<Triplet> merged;
  merged.reserve(entries.size());
  for (const Triplet& t : entries) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      if (policy == Duplicates::Reject) {
        throw ValidationError("duplicate entry at " + pos(t.row, t.col));
      }
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });

  SparseMatrix m;
  m.rows_ = static_cast<std::size_t>(rows);
  m.cols_ = static_cast<std::size_t>(cols);
  const std::size_t nnz = merged.size();

  m.row_ptr_.assign(m.rows_ + 1, 0);
  m.row_col_.resize(nnz);
  m.row_val_.resize(nnz);
  m.col_ptr_.assign(m.cols_ + 1, 0);
  m.col_row_.resize(nnz);
  m.col_val_.resize(nnz);

  for (const Triplet& t : merged) {
    ++m.row_ptr_[t.row + 1];
    ++m.col_ptr_[t.col + 1];
  }
  for (std::size_t i = 0; i < m.rows_; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  for (std::size_t j = 0; j < m.cols_; ++j) m.col_ptr_[j + 1] += m.col_ptr_[j];

  // merged is row-major, so a single pass fills both views in sorted order.
  std::vector<std::size_t> col_fill(m.col_ptr_.begin(), m.col_ptr_.end() - 1);
  for (std::size_t p = 0; p < nnz; ++p) {
    const Triplet& t = merged[p];
    m.row_col_[p] = static_cast<kernels::Index>(t.col);
    m.row_val_[p] = t.value;
    const std::size_t q = col_fill[t.col]++;
    m.col_row_[q] = static_cast<kernels::Index>(t.row);
    m.col_val_[q] = t.value;
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(std::int64_t rows, std::int64_t cols,
                                      std::span<const double> row_major) {
  if (rows < 0 || cols < 0 || row_major.size() != static_cast<std::size_t>(rows * cols)) {
    throw UsageError("from_dense: buffer size does not match " + pos(rows, cols));
  }
  std::vector<Triplet> t;
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      const double v = row_major[static_cast<std::size_t>(i * cols + j)];
      if (v != 0.0) t.push_back({i, j, v});
    }
  }
  return from_triplets(rows, cols, std::move(t));
}

SparseMatrix SparseMatrix::identity(std::int64_t n) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      out.push_back({static_cast<std::int64_t>(i), row_col_[p], row_val_[p]});
    }
  }
  return out;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(rows_ * cols_, 0.0);
  for (const Triplet& t : triplets()) {
    d[static_cast<std::size_t>(t.row) * cols_ + static_cast<std::size_t>(t.col)] = t.value;
  }
  return d;
}

void matvec(const SparseMatrix& a, std::span<const double> x, std::span<double> out) {
  require_size(x.size(), a.cols(), "matvec input");
  require_size(out.size(), a.rows(), "matvec output");
  kernels::active().compressed_gather(a.row_ptr().data(), a.row_col().data(), a.row_val().data(),
                                      x.data(), out.data(), a.rows());
}

Vector matvec(const SparseMatrix& a, std::span<const double> x) {
  Vector out(a.rows());
  matvec(a, x, out);
  return out;
}

void rmatvec(const SparseMatrix& a, std::span<const double> y, std::span<double> out) {
  require_size(y.size(), a.rows(), "rmatvec input");
  require_size(out.size(), a.cols(), "rmatvec output");
  kernels::active().compressed_gather(a.col_ptr().data(), a.col_row().data(), a.col_val().data(),
                                      y.data(), out.data(), a.cols());
}

Vector rmatvec(const SparseMatrix& a, std::span<const double> y) {
  Vector out(a.cols());
  rmatvec(a, y, out);
  return out;
}

Vector column_norms_sq(const SparseMatrix& a) {
  Vector out(a.cols(), 0.0);
  const auto ptr = a.col_ptr();
  const auto val = a.col_val();
  for (std::size_t j = 0; j < a.cols(); ++j) {
    out[j] = kernels::nrm2sq(val.subspan(ptr[j], ptr[j + 1] - ptr[j]));
  }
  return out;
}

SpectralEstimate spectral_norm_sq(const SparseMatrix& a, const PowerIterationOptions& opts) {
  if (!(opts.tol > 0.0)) throw UsageError("spectral_norm_sq: tol must be positive");
  SpectralEstimate est;
  const std::size_t n = a.cols();
  if (n == 0 || a.nnz() == 0) {
    est.converged = true;
    return est;
  }
  const std::int64_t max_iter =
      opts.max_iter > 0 ? opts.max_iter : 10 * static_cast<std::int64_t>(n);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (double& e : v) e = normal(rng);
  Vector av(a.rows());
  Vector w(n);

  double lambda = 0.0;
  for (std::int64_t it = 1; it <= max_iter; ++it) {
    const double nv = kernels::nrm2(v);
    if (nv == 0.0) {
      // The start landed in the null space of A; the top eigenvalue is 0 only
      // if A is zero, which is excluded above, so restart along e_0.
      std::fill(v.begin(), v.end(), 0.0);
      v[0] = 1.0;
    } else {
      for (double& e : v) e /= nv;
    }
    matvec(a, v, av);
    rmatvec(a, av, w);
    const double next = kernels::nrm2sq(av);  // <v, A^T A v>
    est.iterations = it;
    if (it > 1 && std::abs(next - lambda) <= opts.tol * std::abs(next)) {
      est.value = next;
      est.converged = true;
      return est;
    }
    lambda = next;
    v.swap(w);
  }
  est.value = lambda;
  return est;
}

double dual_lipschitz(const SparseMatrix& a, PrimalNorm p, const PowerIterationOptions& opts) {
  switch (p) {
    case PrimalNorm::L1: {
      const Vector norms = column_norms_sq(a);
      return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
    }
    case PrimalNorm::L2:
      return spectral_norm_sq(a, opts).value;
  }
  throw UsageError("dual_lipschitz: unsupported norm");
}

double dual_lipschitz(const SparseMatrix& a, int p, const PowerIterationOptions& opts) {
  if (p != 1 && p != 2) {
    throw UsageError("dual_lipschitz: p must be 1 or 2, got " + std::to_string(p));
  }
  return dual_lipschitz(a, static_cast<PrimalNorm>(p), opts);
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

}  // namespace dualfgm
