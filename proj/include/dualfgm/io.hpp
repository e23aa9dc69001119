#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dualfgm/linops.hpp"
#include "dualfgm/trace.hpp"

namespace dualfgm {

/// Matrix Market "coordinate" reader for real, integer and pattern fields
/// with general symmetry. Indices are 1-based in the file; duplicate entries
/// are summed; "pattern" entries read as 1. Throws ParseError (with the line
/// number) on malformed input and ValidationError on out-of-range indices.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes "%%MatrixMarket matrix coordinate real general" with values printed
/// to round-trip exactly.
void write_matrix_market(const SparseMatrix& a, std::ostream& out);
void write_matrix_market(const SparseMatrix& a, const std::filesystem::path& path);

/// Right-hand side vector: either a one-column Matrix Market file (coordinate
/// or array) or plain text with one value per line. Detected from the header.
Vector read_vector(std::istream& in);
Vector read_vector(const std::filesystem::path& path);

/// One JSON object on a single line, without the trailing newline. wall_ms is
/// written only when `with_timing` is set so that runs stay byte-identical.
std::string trace_json(const TraceRecord& rec, bool with_timing);

}  // namespace dualfgm
