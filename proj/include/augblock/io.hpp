#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "augblock/matrix.hpp"

namespace augblock {

/// Reads `%%MatrixMarket matrix coordinate|array real|integer general`.
/// Indices are 1-based in the file and 0-based in the result. Throws
/// ParseError (with line number) on malformed content and UnsupportedFormat
/// for complex, pattern, or symmetric files.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

/// Coordinate format with 17 significant digits, so a re-read is bit-exact.
void write_matrix_market(std::ostream& out, const SparseMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m);

/// One value per line; blank lines and lines starting with '%' or '#' are skipped.
Vector read_vector(std::istream& in);
Vector read_vector(const std::filesystem::path& path);

void write_vector(std::ostream& out, std::span<const double> v);
void write_vector(const std::filesystem::path& path, std::span<const double> v);

}  // namespace augblock
