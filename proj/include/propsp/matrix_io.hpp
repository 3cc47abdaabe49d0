#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "propsp/linalg.hpp"

namespace propsp {

/// Matrix text format:
///
///   rows cols
///   re,im re,im ...      (one line per row)
///
/// Values are written with 17 significant digits so a write/read cycle is
/// exact. NaN and Inf are rejected on read.
void write_matrix(std::ostream& os, const Matrix& m);
std::string format_matrix(const Matrix& m);
Matrix read_matrix(std::istream& is);
Matrix parse_matrix(std::string_view text);
Matrix load_matrix(const std::string& path);

/// "1", "-0.5", "2i", "1+2i", "1.5e-3-4i".
cplx parse_complex(std::string_view text);

/// Compact command-line grammar:
///   diag:a,b,...   diagonal matrix
///   scalar:c       c times the identity; needs `size`
///   file:PATH      matrix text format
Matrix parse_matrix_literal(std::string_view literal, std::optional<Index> size = std::nullopt);

}  // namespace propsp
