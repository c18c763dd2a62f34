#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "persist/error.hpp"

namespace persist {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

bool is_prime(std::uint32_t p);

// Arithmetic in Z/p for a prime p below 2^31.
class Field {
 public:
  explicit Field(std::uint32_t p = 2);

  std::uint32_t p() const { return p_; }
  Scalar add(Scalar a, Scalar b) const { Scalar s = a + b; return s >= p_ ? s - p_ : s; }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, std::uint64_t e) const;
  Scalar from_int(long long v) const;
  // Representative in (-p/2, p/2], handy for printing signed coefficients.
  long long to_signed(Scalar a) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

class Matrix {
 public:
  Matrix() : Matrix(0, 0, Field(2)) {}
  Matrix(std::size_t rows, std::size_t cols, Field f);

  static Matrix identity(std::size_t n, Field f);
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, Field f,
                          std::size_t cols_if_empty = 0);
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows, Field f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const { return a_; }

  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);
  bool is_zero() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Scalar c) const;
  Matrix hstack(const Matrix& o) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  std::size_t rows_, cols_;
  Field field_;
  std::vector<Scalar> a_;
};

void require_same_field(const Field& a, const Field& b);

// Reduced row echelon form; pivots are chosen as the first nonzero entry
// scanning rows top-down within each column, columns left to right.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};
Echelon rref(const Matrix& m);

std::size_t rank(const Matrix& m);
bool in_span(const Vec& v, const Matrix& m);
Matrix kernel_basis(const Matrix& m);
// Basis of the column space in reduced column echelon form.
Matrix column_basis(const Matrix& m);
// Some x with m x = b (free variables set to zero), or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
// Coordinates of every column of b in the basis formed by the columns of m.
// The columns of m must be independent; throws when a column of b is outside.
Matrix solve_in_basis(const Matrix& m, const Matrix& b);
Matrix inverse(const Matrix& m);

}  // namespace persist
