#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "dualfgm/fgm.hpp"

namespace dualfgm {

enum class Command { SolveElp, SolveQuadratic, PageRank, Bench };

struct RunConfig {
  Command command = Command::SolveElp;
  std::filesystem::path matrix_path;
  /// Unused by `pagerank`.
  std::filesystem::path rhs_path;
  double eps = 1e-6;
  double eps_feas = 1e-6;
  ScheduleKind schedule = ScheduleKind::Simplified;
  bool restart = false;
  /// With `restart`: regularize the dual and search over mu instead of
  /// taking --mu.
  bool regularize = false;
  std::optional<double> mu;
  double r0 = 1.0;
  /// 0 selects the solver default.
  std::int64_t max_iter = 0;
  std::int64_t check_every = 10;
  std::uint64_t seed = 42;
  /// Empty: trace lines go to `out`.
  std::filesystem::path trace_path;
  /// Empty: the result object is printed to `out` as one line.
  std::filesystem::path out_path;
  bool timing = false;
};

/// Throws UsageError for inconsistent settings.
void validate(const RunConfig& cfg);

/// Runs one command. Returns 0 on convergence, 2 when a solver stopped
/// without meeting its tolerances, 1 on any error (reported on `err`).
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Argument parsing front end for the `dualfgm` executable.
int cli_main(int argc, char** argv);

}  // namespace dualfgm
