#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Dense and compressed-sparse inner loops. Every kernel has a scalar
// reference implementation; an AVX2/FMA variant is picked at runtime when the
// CPU supports it. Set DUALFGM_KERNELS=scalar to force the reference path.

namespace dualfgm::kernels {

using Index = std::int32_t;

enum class Backend { Scalar, Avx2 };

struct Table {
  Backend backend;
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*nrm2sq)(const double* a, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = alpha * x + beta * y
  void (*axpby)(double alpha, const double* x, double beta, double* y, std::size_t n);
  // out = alpha * x + beta * y
  void (*lincomb)(double alpha, const double* x, double beta, const double* y, double* out,
                  std::size_t n);
  // out[i] = sum_{p in [ptr[i], ptr[i+1])} val[p] * x[idx[p]], i < n_out
  void (*compressed_gather)(const std::size_t* ptr, const Index* idx, const double* val,
                            const double* x, double* out, std::size_t n_out);
};

const Table& scalar_table();
/// nullptr when not compiled in or not supported by this CPU.
const Table* avx2_table();

/// The table used by the span wrappers below.
const Table& active();
/// Returns false (and leaves the selection unchanged) if `b` is unavailable.
bool select(Backend b);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double nrm2sq(std::span<const double> a) { return active().nrm2sq(a.data(), a.size()); }
double nrm2(std::span<const double> a);
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y) {
  active().axpby(alpha, x.data(), beta, y.data(), x.size());
}
inline void lincomb(double alpha, std::span<const double> x, double beta,
                    std::span<const double> y, std::span<double> out) {
  active().lincomb(alpha, x.data(), beta, y.data(), out.data(), x.size());
}

}  // namespace dualfgm::kernels
