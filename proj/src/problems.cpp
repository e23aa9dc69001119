#include "dualfgm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dualfgm/error.hpp"

namespace dualfgm {

void softmax(std::span<const double> v, std::span<double> out) {
  if (v.empty()) return;
  const double top = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - top);
    sum += out[i];
  }
  for (double& e : out) e /= sum;
}

Vector softmax(std::span<const double> v) {
  Vector out(v.size());
  softmax(v, out);
  return out;
}

double logsumexp(std::span<const double> v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double e : v) sum += std::exp(e - top);
  return top + std::log(sum);
}

// ---------------------------------------------------------------------------

namespace {

std::pair<SparseMatrix, double> with_l1_lipschitz(SparseMatrix a) {
  // An all-zero A still needs a positive step scale.
  const double l = std::max(dual_lipschitz(a, PrimalNorm::L1), std::numeric_limits<double>::min());
  return {std::move(a), l};
}

std::pair<SparseMatrix, SpectralEstimate> with_spectral_estimate(SparseMatrix a,
                                                                 const PowerIterationOptions& opts) {
  SpectralEstimate est = spectral_norm_sq(a, opts);
  est.value = std::max(est.value, std::numeric_limits<double>::min());
  return {std::move(a), est};
}

}  // namespace

ElpProblem::ElpProblem(SparseMatrix a, Vector b)
    : ElpProblem(with_l1_lipschitz(std::move(a)), std::move(b)) {}

ElpProblem::ElpProblem(std::pair<SparseMatrix, double> a_and_l, Vector b)
    : ConstrainedProblem(std::move(a_and_l.first), std::move(b), PrimalNorm::L1,
                         a_and_l.second) {
  if (matrix().cols() == 0) throw UsageError("ELP problem: A has no columns");
}

double ElpProblem::objective(std::span<const double> x) const {
  double s = 0.0;
  for (double e : x) {
    if (e < 0.0) return std::numeric_limits<double>::infinity();
    if (e > 0.0) s += e * std::log(e);
  }
  return s;
}

void ElpProblem::prox(std::span<const double> y, std::span<double> x) const {
  rmatvec(matrix(), y, x);
  for (double& e : x) e = -e;
  softmax(x, x);
}

double ElpProblem::dual_value(std::span<const double> y) const {
  Vector aty = rmatvec(matrix(), y);
  for (double& e : aty) e = -e;
  return kernels::dot(y, rhs()) + logsumexp(aty);
}

Vector elp_prox(const ElpProblem& problem, std::span<const double> y) {
  Vector x(problem.primal_dim());
  problem.prox(y, x);
  return x;
}

double elp_dual_value(const ElpProblem& problem, std::span<const double> y) {
  return problem.dual_value(y);
}

// ---------------------------------------------------------------------------

QuadraticProblem::QuadraticProblem(SparseMatrix a, Vector b, const PowerIterationOptions& opts)
    : QuadraticProblem(with_spectral_estimate(std::move(a), opts), std::move(b)) {}

QuadraticProblem::QuadraticProblem(std::pair<SparseMatrix, SpectralEstimate> a_and_l, Vector b)
    : ConstrainedProblem(std::move(a_and_l.first), std::move(b), PrimalNorm::L2,
                         a_and_l.second.value),
      lipschitz_converged_(a_and_l.second.converged) {}

QuadraticProblem::QuadraticProblem(SparseMatrix a, Vector b, double lipschitz)
    : ConstrainedProblem(std::move(a), std::move(b), PrimalNorm::L2, lipschitz) {}

double QuadraticProblem::objective(std::span<const double> x) const {
  return 0.5 * kernels::nrm2sq(x);
}

void QuadraticProblem::prox(std::span<const double> y, std::span<double> x) const {
  rmatvec(matrix(), y, x);
  for (double& e : x) e = -e;
}

double QuadraticProblem::dual_value(std::span<const double> y) const {
  const Vector aty = rmatvec(matrix(), y);
  return kernels::dot(rhs(), y) + 0.5 * kernels::nrm2sq(aty);
}

Vector quad_prox(const QuadraticProblem& problem, std::span<const double> w) {
  return rmatvec(problem.matrix(), w);
}

double quad_dual_value(const QuadraticProblem& problem, std::span<const double> w) {
  const Vector atw = rmatvec(problem.matrix(), w);
  return kernels::dot(problem.rhs(), w) - 0.5 * kernels::nrm2sq(atw);
}

// ---------------------------------------------------------------------------

SparseMatrix pagerank_matrix(const SparseMatrix& transition) {
  const std::size_t n = transition.rows();
  if (transition.cols() != n) {
    throw ValidationError("PageRank: transition matrix must be square, got " + std::to_string(n) +
                          " x " + std::to_string(transition.cols()));
  }
  const auto ptr = transition.row_ptr();
  const auto col = transition.row_col();
  const auto val = transition.row_val();
  std::vector<Triplet> t;
  t.reserve(transition.nnz() + 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t p = ptr[i]; p < ptr[i + 1]; ++p) {
      if (val[p] < 0.0) {
        throw ValidationError("PageRank: negative entry in row " + std::to_string(i));
      }
      row_sum += val[p];
      // P^T block: P(i, j) lands at (j, i).
      t.push_back({col[p], static_cast<std::int64_t>(i), val[p]});
    }
    if (std::abs(row_sum - 1.0) > 1e-8) {
      throw ValidationError("PageRank: row " + std::to_string(i) + " sums to " +
                            std::to_string(row_sum) + ", expected 1");
    }
    const auto ii = static_cast<std::int64_t>(i);
    t.push_back({ii, ii, -1.0});
    t.push_back({static_cast<std::int64_t>(n), ii, 1.0});
  }
  const auto nn = static_cast<std::int64_t>(n);
  return SparseMatrix::from_triplets(nn + 1, nn, std::move(t), Duplicates::Sum);
}

PageRankInstance build_pagerank(const SparseMatrix& transition,
                                const PowerIterationOptions& opts) {
  SparseMatrix a = pagerank_matrix(transition);
  Vector b(transition.rows() + 1, 0.0);
  b.back() = 1.0;
  return {transition, QuadraticProblem(std::move(a), std::move(b), opts)};
}

}  // namespace dualfgm
