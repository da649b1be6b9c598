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

#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ripforge {

using cplx = std::complex<double>;

/// Provenance record attached to matrices: {"construction": ..., "params": {...},
/// "seed": ...}. Arbitrary extra keys are preserved through CMX files.
using Meta = nlohmann::ordered_json;

enum class Field { kReal, kComplex };

std::string_view to_string(Field field) noexcept;
Field parse_field(std::string_view text);

/// Field of a product or combination of operands of fields a and b.
constexpr Field promote(Field a, Field b) noexcept {
  return (a == Field::kComplex || b == Field::kComplex) ? Field::kComplex : Field::kReal;
}

/// Dense vector over R or C. Real vectors hold complex entries whose imaginary
/// parts are exactly zero.
class Vector {
 public:
  Vector(Field field, std::vector<cplx> entries);
  static Vector real(const std::vector<double>& entries);
  static Vector zeros(Field field, std::size_t n);
  static Vector basis(Field field, std::size_t n, std::size_t i);

  Field field() const noexcept { return field_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }
  const cplx& operator[](std::size_t i) const { return entries_[i]; }
  cplx& operator[](std::size_t i) { return entries_[i]; }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  Field field_;
  std::vector<cplx> entries_;
};

/// Dense row-major m x N matrix with provenance metadata. Immutable once built.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<cplx> entries, Meta meta = Meta::object());

  static Matrix zeros(Field field, std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Meta& meta() const noexcept { return meta_; }

  const cplx& operator()(std::size_t j, std::size_t k) const { return entries_[j * cols_ + k]; }
  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<const cplx> row(std::size_t j) const { return {entries_.data() + j * cols_, cols_}; }
  std::vector<cplx> column(std::size_t k) const;

  Matrix with_meta(Meta meta) const&;
  Matrix with_meta(Meta meta) &&;

  /// Entrywise equality of field, shape and values (metadata ignored).
  bool same_entries(const Matrix& other) const noexcept;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> entries_;
  Meta meta_;
};

/// Provenance record with the standard keys.
Meta make_meta(std::string_view construction, Meta params = Meta::object());

/// (sum |v_i|^e)^(1/e) with |.| the complex modulus; e >= 1.
double norm(std::span<const cplx> v, double exponent);
double norm(const Vector& v, double exponent);

/// Dense product A x; kDimensionMismatch if x.size() != A.cols().
Vector matvec(const Matrix& A, const Vector& x);
void matvec_into(const Matrix& A, std::span<const cplx> x, std::span<cplx> out);

/// A^* y (conjugate transpose); kDimensionMismatch if y.size() != A.rows().
Vector adjoint_matvec(const Matrix& A, const Vector& y);

/// Dense product A B.
Matrix matmul(const Matrix& A, const Matrix& B);

// CMX v1 text format:
//   #cmx 1
//   field real|complex
//   rows <m>
//   cols <N>
//   meta <single-line JSON>
//   m data lines of N space-separated entries, `re` or `re:im`,
//   17 significant digits.

void write_cmx(const Matrix& A, std::ostream& out);
void write_cmx(const Matrix& A, const std::filesystem::path& path);
std::string to_cmx_string(const Matrix& A);

/// kParseError (message carries the line number) on malformed input.
Matrix read_cmx(std::istream& in);
Matrix read_cmx(const std::filesystem::path& path);
Matrix parse_cmx(std::string_view text);

}  // namespace ripforge
