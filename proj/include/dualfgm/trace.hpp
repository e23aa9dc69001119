#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace dualfgm {

/// One checkpoint of a solver run.
struct TraceRecord {
  std::int64_t k = 0;      // iterations so far
  double dual_value = 0.0;  // F at the reported dual point
  double gap = 0.0;
  double residual = 0.0;
  double norm_y = 0.0;
  std::optional<std::int64_t> restart_block;
  std::optional<double> decay_bound;
  double wall_ms = 0.0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

}  // namespace dualfgm
