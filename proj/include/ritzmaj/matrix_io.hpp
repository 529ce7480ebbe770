#pragma once

// Plain-text matrix format:
//
//   # comment lines start with '#'
//   rows cols field          field is "real" or "complex"
//   <rows lines of cols entries>; complex entries are written "re im"
//
// Values are written in shortest round-trip form, so reading back a written
// file reproduces every entry bit for bit.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ritzmaj/numkern.hpp"

namespace ritzmaj {

enum class MatrixField { real, complex, automatic };

DenseMatrix read_matrix(std::istream& in, std::string_view source = "<stream>");
DenseMatrix read_matrix_file(const std::filesystem::path& path);

/// `automatic` picks `real` when every imaginary part is zero.
void write_matrix(std::ostream& out, const CMatrix& m, MatrixField field = MatrixField::automatic);
void write_matrix_file(const std::filesystem::path& path, const CMatrix& m,
                       MatrixField field = MatrixField::automatic);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace ritzmaj
