// Copyright 2026 The ripforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ripforge/matrix.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ripforge/error.hpp"
#include "ripforge/parallel.hpp"

namespace ripforge {

std::string_view to_string(Field field) noexcept { return field == Field::kReal ? "real" : "complex"; }

Field parse_field(std::string_view text) {
  if (text == "real") return Field::kReal;
  if (text == "complex") return Field::kComplex;
  throw Error(ErrorCode::kInvalidParams, "unknown field '" + std::string(text) + "'");
}

Vector::Vector(Field field, std::vector<cplx> entries) : field_(field), entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorCode::kInvalidParams, "vector length must be >= 1");
  if (field_ == Field::kReal) {
    for (const cplx& v : entries_) {
      if (v.imag() != 0.0) throw Error(ErrorCode::kInvalidParams, "real vector with nonzero imaginary part");
    }
  }
}

Vector Vector::real(const std::vector<double>& entries) {
  return Vector(Field::kReal, std::vector<cplx>(entries.begin(), entries.end()));
}

Vector Vector::zeros(Field field, std::size_t n) { return Vector(field, std::vector<cplx>(n)); }

Vector Vector::basis(Field field, std::size_t n, std::size_t i) {
  std::vector<cplx> e(n);
  e.at(i) = 1.0;
  return Vector(field, std::move(e));
}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<cplx> entries, Meta meta)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)), meta_(std::move(meta)) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::kInvalidParams, "matrix dimensions must be positive");
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "entry count " + std::to_string(entries_.size()) +
                                                   " != rows*cols = " + std::to_string(rows_ * cols_));
  }
  if (field_ == Field::kReal) {
    for (const cplx& v : entries_) {
      if (v.imag() != 0.0) throw Error(ErrorCode::kInvalidParams, "real matrix with nonzero imaginary part");
    }
  }
  if (!meta_.is_object()) throw Error(ErrorCode::kInvalidParams, "matrix meta must be a JSON object");
}

Matrix Matrix::zeros(Field field, std::size_t rows, std::size_t cols) {
  return Matrix(field, rows, cols, std::vector<cplx>(rows * cols));
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return Matrix(Field::kReal, n, n, std::move(e), make_meta("identity", {{"n", n}}));
}

std::vector<cplx> Matrix::column(std::size_t k) const {
  std::vector<cplx> c(rows_);
  for (std::size_t j = 0; j < rows_; ++j) c[j] = (*this)(j, k);
  return c;
}

Matrix Matrix::with_meta(Meta meta) const& {
  Matrix copy = *this;
  return std::move(copy).with_meta(std::move(meta));
}

Matrix Matrix::with_meta(Meta meta) && {
  if (!meta.is_object()) throw Error(ErrorCode::kInvalidParams, "matrix meta must be a JSON object");
  meta_ = std::move(meta);
  return std::move(*this);
}

bool Matrix::same_entries(const Matrix& other) const noexcept {
  return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

Meta make_meta(std::string_view construction, Meta params) {
  Meta meta = Meta::object();
  meta["construction"] = construction;
  meta["params"] = std::move(params);
  return meta;
}

double norm(std::span<const cplx> v, double exponent) {
  if (!(exponent >= 1.0)) throw Error(ErrorCode::kInvalidParams, "norm exponent must be >= 1");
  if (exponent == 1.0) {
    double s = 0.0;
    for (const cplx& z : v) s += std::abs(z);
    return s;
  }
  if (exponent == 2.0) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
  }
  // Scale by the largest modulus so high exponents do not overflow.
  double scale = 0.0;
  for (const cplx& z : v) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const cplx& z : v) s += std::pow(std::abs(z) / scale, exponent);
  return scale * std::pow(s, 1.0 / exponent);
}

double norm(const Vector& v, double exponent) { return norm(v.entries(), exponent); }

void matvec_into(const Matrix& A, std::span<const cplx> x, std::span<cplx> out) {
  if (x.size() != A.cols() || out.size() != A.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "matvec: matrix is " + std::to_string(A.rows()) + "x" +
                                                   std::to_string(A.cols()) + ", vector has length " +
                                                   std::to_string(x.size()));
  }
  parallel_for(
      A.rows(),
      [&](std::size_t j) {
        cplx acc = 0.0;
        const auto row = A.row(j);
        for (std::size_t k = 0; k < row.size(); ++k) acc += row[k] * x[k];
        out[j] = acc;
      },
      64);
}

Vector matvec(const Matrix& A, const Vector& x) {
  std::vector<cplx> out(A.rows());
  matvec_into(A, x.entries(), out);
  return Vector(promote(A.field(), x.field()), std::move(out));
}

Vector adjoint_matvec(const Matrix& A, const Vector& y) {
  if (y.size() != A.rows()) throw Error(ErrorCode::kDimensionMismatch, "adjoint_matvec: length mismatch");
  std::vector<cplx> out(A.cols());
  parallel_for(
      A.cols(),
      [&](std::size_t k) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < A.rows(); ++j) acc += std::conj(A(j, k)) * y[j];
        out[k] = acc;
      },
      16);
  return Vector(promote(A.field(), y.field()), std::move(out));
}

Matrix matmul(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw Error(ErrorCode::kDimensionMismatch, "matmul: inner dimensions differ");
  const std::size_t m = A.rows();
  const std::size_t n = B.cols();
  std::vector<cplx> out(m * n);
  parallel_for(m, [&](std::size_t j) {
    for (std::size_t l = 0; l < A.cols(); ++l) {
      const cplx a = A(j, l);
      const auto brow = B.row(l);
      for (std::size_t k = 0; k < n; ++k) out[j * n + k] += a * brow[k];
    }
  });
  return Matrix(promote(A.field(), B.field()), m, n, std::move(out));
}

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || first == last) {
    parse_fail(line, "invalid number '" + std::string(token) + "'");
  }
  return v;
}

std::size_t parse_size(std::string_view token, std::size_t line) {
  std::size_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || token.empty()) {
    parse_fail(line, "invalid dimension '" + std::string(token) + "'");
  }
  return v;
}

// Returns the value after "<key> " on the given header line.
std::string_view header_value(std::string_view text, std::string_view key, std::size_t line) {
  if (text.size() <= key.size() || text.substr(0, key.size()) != key || text[key.size()] != ' ') {
    parse_fail(line, "expected '" + std::string(key) + " <value>'");
  }
  return text.substr(key.size() + 1);
}

}  // namespace

void write_cmx(const Matrix& A, std::ostream& out) {
  std::string text;
  text += "#cmx 1\nfield ";
  text += to_string(A.field());
  text += "\nrows " + std::to_string(A.rows()) + "\ncols " + std::to_string(A.cols()) + "\nmeta ";
  text += A.meta().dump();
  text += '\n';
  for (std::size_t j = 0; j < A.rows(); ++j) {
    const auto row = A.row(j);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) text += ' ';
      append_double(text, row[k].real());
      if (A.field() == Field::kComplex) {
        text += ':';
        append_double(text, row[k].imag());
      }
    }
    text += '\n';
  }
  out << text;
}

void write_cmx(const Matrix& A, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  write_cmx(A, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path.string() + "' failed");
}

std::string to_cmx_string(const Matrix& A) {
  std::ostringstream out;
  write_cmx(A, out);
  return out.str();
}

Matrix read_cmx(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  auto next_line = [&](const char* what) -> std::string_view {
    if (!std::getline(in, line)) parse_fail(line_no + 1, std::string("unexpected end of input, expected ") + what);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line("header") != "#cmx 1") parse_fail(line_no, "expected '#cmx 1'");
  const Field field = [&] {
    const auto v = header_value(next_line("field"), "field", line_no);
    if (v == "real") return Field::kReal;
    if (v == "complex") return Field::kComplex;
    parse_fail(line_no, "field must be 'real' or 'complex'");
  }();
  const std::size_t rows = parse_size(header_value(next_line("rows"), "rows", line_no), line_no);
  const std::size_t cols = parse_size(header_value(next_line("cols"), "cols", line_no), line_no);
  if (rows == 0 || cols == 0) parse_fail(line_no, "dimensions must be positive");
  Meta meta;
  {
    const auto v = header_value(next_line("meta"), "meta", line_no);
    meta = Meta::parse(v, nullptr, false);
    if (meta.is_discarded() || !meta.is_object()) parse_fail(line_no, "meta is not a JSON object");
  }

  std::vector<cplx> entries;
  entries.reserve(rows * cols);
  for (std::size_t j = 0; j < rows; ++j) {
    const std::string_view text = next_line("data line");
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find(' ', pos), text.size());
      const std::string_view token = text.substr(pos, end - pos);
      if (token.empty()) parse_fail(line_no, "entries must be separated by single spaces");
      const std::size_t colon = token.find(':');
      if (field == Field::kReal) {
        if (colon != std::string_view::npos) parse_fail(line_no, "complex entry in a real matrix");
        entries.emplace_back(parse_double(token, line_no), 0.0);
      } else {
        if (colon == std::string_view::npos) parse_fail(line_no, "complex entry must be 're:im'");
        entries.emplace_back(parse_double(token.substr(0, colon), line_no),
                             parse_double(token.substr(colon + 1), line_no));
      }
      ++count;
      pos = end + 1;
    }
    if (count != cols) {
      parse_fail(line_no, "expected " + std::to_string(cols) + " entries, found " + std::to_string(count));
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line != "\r") parse_fail(line_no, "more data lines than rows = " + std::to_string(rows));
  }
  return Matrix(field, rows, cols, std::move(entries), std::move(meta));
}

Matrix read_cmx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  return read_cmx(in);
}

Matrix parse_cmx(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_cmx(in);
}

}  // namespace ripforge
