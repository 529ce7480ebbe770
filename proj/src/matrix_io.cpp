#include "ritzmaj/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "ritzmaj/errors.hpp"

namespace ritzmaj {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool is_skippable(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

double parse_double(std::string_view tok, std::string_view source, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(std::string(source), line, "invalid number '" + std::string(tok) + "'");
  return v;
}

long parse_count(std::string_view tok, std::string_view source, std::size_t line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1)
    throw ParseError(std::string(source), line, "expected a positive integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

DenseMatrix read_matrix(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!is_skippable(line)) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(std::string(source), lineno, "missing header 'rows cols field'");
  const auto header = split(line);
  if (header.size() != 3) throw ParseError(std::string(source), lineno, "header must be 'rows cols field'");
  const long rows = parse_count(header[0], source, lineno);
  const long cols = parse_count(header[1], source, lineno);
  bool complex_field = false;
  if (header[2] == "complex") {
    complex_field = true;
  } else if (header[2] != "real") {
    throw ParseError(std::string(source), lineno, "field must be 'real' or 'complex'");
  }

  const long per_row = complex_field ? 2 * cols : cols;
  CMatrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!next_line())
      throw ParseError(std::string(source), lineno, "expected " + std::to_string(rows) + " rows, found " +
                                                        std::to_string(i));
    const auto toks = split(line);
    if (static_cast<long>(toks.size()) != per_row)
      throw ParseError(std::string(source), lineno, "expected " + std::to_string(per_row) + " values, found " +
                                                        std::to_string(toks.size()));
    for (long j = 0; j < cols; ++j) {
      if (complex_field) {
        m(i, j) = Complex(parse_double(toks[static_cast<std::size_t>(2 * j)], source, lineno),
                          parse_double(toks[static_cast<std::size_t>(2 * j + 1)], source, lineno));
      } else {
        m(i, j) = parse_double(toks[static_cast<std::size_t>(j)], source, lineno);
      }
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        throw ParseError(std::string(source), lineno, "non-finite entry");
    }
  }
  if (next_line()) throw ParseError(std::string(source), lineno, "unexpected trailing data");
  return DenseMatrix(std::move(m));
}

DenseMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return read_matrix(in, path.string());
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& out, const CMatrix& m, MatrixField field) {
  if (field == MatrixField::automatic)
    field = (m.imag().array() == 0.0).all() ? MatrixField::real : MatrixField::complex;
  const bool cplx = field == MatrixField::complex;
  out << m.rows() << ' ' << m.cols() << ' ' << (cplx ? "complex" : "real") << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j).real());
      if (cplx) out << ' ' << format_double(m(i, j).imag());
    }
    out << '\n';
  }
}

void write_matrix_file(const std::filesystem::path& path, const CMatrix& m, MatrixField field) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_matrix(out, m, field);
}

}  // namespace ritzmaj
