#pragma once

#include <iosfwd>
#include <string>

#include "raldpc/gf2.hpp"

namespace raldpc::io {

// Reader for the alist sparse-matrix text format:
//
//   n m
//   max_col_degree max_row_degree
//   column degrees (n values)
//   row degrees (m values)
//   per column: 1-based row indices, zero-padded to max_col_degree
//   per row:    1-based column indices, zero-padded to max_row_degree
//
// Unpadded files (no trailing zeros) are accepted too. The row and column
// adjacency lists are cross-checked against each other; any inconsistency
// throws IoError.
gf2::BinaryMatrix read_alist(std::istream& in);
gf2::BinaryMatrix read_alist_file(const std::string& path);

// Writes the padded form with ascending indices and single-space separators.
// This layout is canonical: reading a written file and writing it again
// reproduces the bytes exactly.
void write_alist(std::ostream& out, const gf2::BinaryMatrix& m);
void write_alist_file(const std::string& path, const gf2::BinaryMatrix& m);

} // namespace raldpc::io
