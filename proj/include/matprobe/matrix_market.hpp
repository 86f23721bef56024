#pragma once

#include <iosfwd>
#include <string>

#include "matprobe/sparse_matrix.hpp"

namespace matprobe {

/// Reads a Matrix Market coordinate file (real/integer/complex,
/// general/symmetric/hermitian/skew-symmetric). Symmetric storage is expanded
/// to the full pattern, duplicates are summed and rows sorted.
/// Throws ParseError with the offending line number on malformed input.
SparseMatrix read_matrix_market(const std::string& path);
SparseMatrix read_matrix_market(std::istream& in);

/// Writes coordinate complex general format with 17 significant digits,
/// enough for doubles to round-trip bit-for-bit.
void write_matrix_market(const SparseMatrix& m, const std::string& path);
void write_matrix_market(const SparseMatrix& m, std::ostream& out);

}  // namespace matprobe
