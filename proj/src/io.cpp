#include "dualfgm/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dualfgm/error.hpp"

namespace dualfgm {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream ss{std::string(line)};
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::int64_t parse_int(const std::string& tok, std::size_t line_no) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + tok + "'", line_no);
  }
  return v;
}

double parse_real(const std::string& tok, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a real number, got '" + tok + "'", line_no);
  }
  if (used != tok.size() || !std::isfinite(v)) {
    throw ParseError("expected a finite real number, got '" + tok + "'", line_no);
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

struct Header {
  std::string format;  // coordinate | array
  std::string field;   // real | integer | pattern
};

Header parse_header(const std::string& line, std::size_t line_no) {
  const auto tok = split(line);
  if (tok.size() != 5 || tok[0] != "%%MatrixMarket" || lower(tok[1]) != "matrix") {
    throw ParseError("malformed Matrix Market header", line_no);
  }
  Header h{lower(tok[2]), lower(tok[3])};
  if (h.format != "coordinate" && h.format != "array") {
    throw ParseError("unsupported format '" + tok[2] + "'", line_no);
  }
  if (h.field != "real" && h.field != "integer" && h.field != "pattern") {
    throw ParseError("unsupported field '" + tok[3] + "'", line_no);
  }
  if (h.format == "array" && h.field == "pattern") {
    throw ParseError("pattern field requires coordinate format", line_no);
  }
  if (lower(tok[4]) != "general") {
    throw ParseError("unsupported symmetry '" + tok[4] + "'", line_no);
  }
  return h;
}

// Reads the next non-comment, non-blank line. Returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    return true;
  }
  return false;
}

struct Dense {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<Triplet> entries;
};

Dense read_body(std::istream& in, const Header& h, std::size_t& line_no) {
  std::string line;
  if (!next_data_line(in, line, line_no)) throw ParseError("missing size line", line_no + 1);
  const auto size = split(line);
  Dense d;
  std::int64_t count = 0;
  if (h.format == "coordinate") {
    if (size.size() != 3) throw ParseError("size line must be 'rows cols nnz'", line_no);
    d.rows = parse_int(size[0], line_no);
    d.cols = parse_int(size[1], line_no);
    count = parse_int(size[2], line_no);
  } else {
    if (size.size() != 2) throw ParseError("size line must be 'rows cols'", line_no);
    d.rows = parse_int(size[0], line_no);
    d.cols = parse_int(size[1], line_no);
    count = d.rows * d.cols;
  }
  if (d.rows < 0 || d.cols < 0 || count < 0) throw ParseError("negative size", line_no);

  const std::size_t want = h.format == "coordinate" ? (h.field == "pattern" ? 2 : 3) : 1;
  d.entries.reserve(static_cast<std::size_t>(count));
  for (std::int64_t e = 0; e < count; ++e) {
    if (!next_data_line(in, line, line_no)) {
      throw ParseError("expected " + std::to_string(count) + " entries, found " +
                           std::to_string(e),
                       line_no + 1);
    }
    const auto tok = split(line);
    if (tok.size() != want) {
      throw ParseError("expected " + std::to_string(want) + " fields", line_no);
    }
    if (h.format == "coordinate") {
      const std::int64_t r = parse_int(tok[0], line_no);
      const std::int64_t c = parse_int(tok[1], line_no);
      if (r < 1 || r > d.rows || c < 1 || c > d.cols) {
        throw ValidationError("line " + std::to_string(line_no) + ": index (" + tok[0] + ", " +
                              tok[1] + ") outside " + std::to_string(d.rows) + " x " +
                              std::to_string(d.cols));
      }
      const double v = h.field == "pattern" ? 1.0 : parse_real(tok[2], line_no);
      d.entries.push_back({r - 1, c - 1, v});
    } else {
      // Column-major.
      d.entries.push_back({e % d.rows, e / d.rows, parse_real(tok[0], line_no)});
    }
  }
  if (next_data_line(in, line, line_no)) throw ParseError("unexpected trailing data", line_no);
  return d;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  ++line_no;
  const Header h = parse_header(line, line_no);
  if (h.format != "coordinate") throw ParseError("matrix must use coordinate format", line_no);
  Dense d = read_body(in, h, line_no);
  return SparseMatrix::from_triplets(d.rows, d.cols, std::move(d.entries), Duplicates::Sum);
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_matrix_market(const SparseMatrix& a, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (const Triplet& t : a.triplets()) {
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
  }
  out.precision(old);
}

void write_matrix_market(const SparseMatrix& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_matrix_market(a, out);
}

Vector read_vector(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (in.peek() == '%') {
    std::getline(in, line);
    ++line_no;
    const Header h = parse_header(line, line_no);
    Dense d = read_body(in, h, line_no);
    if (d.cols != 1) throw ParseError("right-hand side must have exactly one column", 0);
    Vector v(static_cast<std::size_t>(d.rows), 0.0);
    for (const Triplet& t : d.entries) v[static_cast<std::size_t>(t.row)] += t.value;
    return v;
  }
  Vector v;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '#') continue;
    const auto tok = split(line);
    if (tok.size() != 1) throw ParseError("expected one value per line", line_no);
    v.push_back(parse_real(tok[0], line_no));
  }
  return v;
}

Vector read_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_vector(in);
}

std::string trace_json(const TraceRecord& rec, bool with_timing) {
  nlohmann::ordered_json j;
  j["k"] = rec.k;
  j["F"] = rec.dual_value;
  j["gap"] = rec.gap;
  j["residual"] = rec.residual;
  j["norm_y"] = rec.norm_y;
  if (rec.restart_block) j["restart_block"] = *rec.restart_block;
  if (rec.decay_bound) j["decay_bound"] = *rec.decay_bound;
  if (with_timing) j["wall_ms"] = rec.wall_ms;
  return j.dump();
}

}  // namespace dualfgm
