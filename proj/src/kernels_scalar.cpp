#include "dualfgm/kernels.hpp"

namespace dualfgm::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double nrm2sq(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpby(double alpha, const double* x, double beta, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

void lincomb(double alpha, const double* x, double beta, const double* y, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void compressed_gather(const std::size_t* ptr, const Index* idx, const double* val,
                       const double* x, double* out, std::size_t n_out) {
  for (std::size_t i = 0; i < n_out; ++i) {
    double s = 0.0;
    for (std::size_t p = ptr[i]; p < ptr[i + 1]; ++p) s += val[p] * x[idx[p]];
    out[i] = s;
  }
}

constexpr Table kScalar{Backend::Scalar, "scalar", dot, nrm2sq, axpy, axpby, lincomb,
                        compressed_gather};

}  // namespace

const Table& scalar_table() { return kScalar; }

}  // namespace dualfgm::kernels
