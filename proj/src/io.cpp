#include "augblock/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "augblock/errors.hpp"

namespace augblock {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(std::move(t));
  return out;
}

double parse_double(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "invalid number '" + tok + "'");
  return v;
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "invalid integer '" + tok + "'");
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError(1, "empty file");
  ++line_no;
  const auto header = tokens(line);
  if (header.size() != 5 || header[0] != "%%MatrixMarket")
    throw ParseError(line_no, "missing %%MatrixMarket header");
  if (lower(header[1]) != "matrix") throw UnsupportedFormat("object '" + header[1] + "'");
  const std::string format = lower(header[2]);
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  if (format != "coordinate" && format != "array")
    throw ParseError(line_no, "unknown format '" + header[2] + "'");
  if (field != "real" && field != "integer" && field != "double")
    throw UnsupportedFormat("field '" + header[3] + "'");
  if (symmetry != "general") throw UnsupportedFormat("symmetry '" + header[4] + "'");

  // Size line, skipping comments.
  std::vector<std::string> size;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || line[0] == '%') continue;
    size = tokens(line);
    break;
  }
  const bool coordinate = format == "coordinate";
  if (size.size() != (coordinate ? 3u : 2u)) throw ParseError(line_no, "malformed size line");
  const std::size_t rows = parse_index(size[0], line_no);
  const std::size_t cols = parse_index(size[1], line_no);
  if (rows == 0 || cols == 0) throw ParseError(line_no, "dimensions must be positive");
  const std::size_t expected = coordinate ? parse_index(size[2], line_no) : rows * cols;

  std::vector<Triplet> entries;
  entries.reserve(expected);
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || line[0] == '%') continue;
    if (seen == expected) throw ParseError(line_no, "more entries than declared");
    const auto t = tokens(line);
    if (coordinate) {
      if (t.size() != 3) throw ParseError(line_no, "expected 'row col value'");
      const std::size_t i = parse_index(t[0], line_no);
      const std::size_t j = parse_index(t[1], line_no);
      if (i < 1 || i > rows || j < 1 || j > cols)
        throw ParseError(line_no, "index (" + t[0] + "," + t[1] + ") out of range");
      entries.push_back({i - 1, j - 1, parse_double(t[2], line_no)});
    } else {
      if (t.size() != 1) throw ParseError(line_no, "expected one value per line");
      // Array format is column-major.
      entries.push_back({seen % rows, seen / rows, parse_double(t[0], line_no)});
    }
    ++seen;
  }
  if (seen != expected)
    throw ParseError(line_no, "expected " + std::to_string(expected) + " entries, found " +
                                  std::to_string(seen));
  std::erase_if(entries, [](const Triplet& e) { return e.value == 0.0; });
  return SparseMatrix(rows, cols, std::move(entries));
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  const auto entries = m.triplets();
  const auto old = out.precision(17);
  out << "%%MatrixMarket matrix coordinate real general\n"
      << m.rows() << ' ' << m.cols() << ' ' << entries.size() << '\n';
  for (const auto& e : entries) out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  out.precision(old);
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m) {
  auto out = open_out(path);
  write_matrix_market(out, m);
}

Vector read_vector(std::istream& in) {
  Vector v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = tokens(line);
    if (t.empty() || t[0][0] == '%' || t[0][0] == '#') continue;
    if (t.size() != 1) throw ParseError(line_no, "expected one value per line");
    v.push_back(parse_double(t[0], line_no));
  }
  return v;
}

Vector read_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_vector(in);
}

void write_vector(std::ostream& out, std::span<const double> v) {
  const auto old = out.precision(17);
  for (double x : v) out << x << '\n';
  out.precision(old);
}

void write_vector(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_out(path);
  write_vector(out, v);
}

}  // namespace augblock
