#include "dualfgm/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string_view>

namespace dualfgm::kernels {

#if DUALFGM_HAVE_AVX2
namespace detail {
const Table& avx2_table_unchecked();
}
#endif

const Table* avx2_table() {
#if DUALFGM_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const Table* initial_table() {
  const char* env = std::getenv("DUALFGM_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
  if (const Table* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

}  // namespace

const Table& active() { return *current().load(std::memory_order_relaxed); }

bool select(Backend b) {
  const Table* t = b == Backend::Scalar ? &scalar_table() : avx2_table();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

double nrm2(std::span<const double> a) { return std::sqrt(nrm2sq(a)); }

}  // namespace dualfgm::kernels
