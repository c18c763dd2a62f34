#include "persist/field.hpp"

#include <algorithm>
#include <string>

namespace persist {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p >= (1u << 31)) fail_input("field characteristic must be a prime below 2^31, got " + std::to_string(p));
}

Scalar Field::pow(Scalar a, std::uint64_t e) const {
  Scalar r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Scalar Field::inv(Scalar a) const {
  if (a % p_ == 0) fail_state("division by zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

Scalar Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Scalar>(r);
}

long long Field::to_signed(Scalar a) const {
  return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
}

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b))
    fail_input("mixed characteristics " + std::to_string(a.p()) + " and " + std::to_string(b.p()));
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Field f)
    : rows_(rows), cols_(cols), field_(f), a_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, Field f) {
  Matrix m(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, Field f,
                         std::size_t cols_if_empty) {
  std::size_t c = rows.empty() ? cols_if_empty : rows[0].size();
  Matrix m(rows.size(), c, f);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) fail_input("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows, Field f) {
  Matrix m(rows, cols.size(), f);
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  if (v.size() != rows_) fail_input("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i] % field_.p();
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Scalar x) { return x == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_field(field_, o.field_);
  if (cols_ != o.rows_) fail_input("matrix product shape mismatch");
  Matrix r(rows_, o.cols_, field_);
  const std::uint64_t p = field_.p();
  std::vector<std::uint64_t> acc(o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t x = (*this)(i, k);
      if (!x) continue;
      const Scalar* row = &o.a_[k * o.cols_];
      for (std::size_t j = 0; j < o.cols_; ++j) acc[j] = (acc[j] + x * row[j]) % p;
    }
    for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = static_cast<Scalar>(acc[j]);
  }
  return r;
}

Vec Matrix::operator*(const Vec& v) const {
  if (v.size() != cols_) fail_input("matrix-vector shape mismatch");
  Vec r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s = (s + static_cast<std::uint64_t>((*this)(i, j)) * v[j]) % field_.p();
    r[i] = static_cast<Scalar>(s);
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_field(field_, o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail_input("matrix sum shape mismatch");
  Matrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_field(field_, o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail_input("matrix difference shape mismatch");
  Matrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.sub(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::scaled(Scalar c) const {
  Matrix r(*this);
  for (auto& x : r.a_) x = field_.mul(x, c % field_.p());
  return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
  require_same_field(field_, o.field_);
  if (rows_ != o.rows_) fail_input("hstack row mismatch");
  Matrix r(rows_, cols_ + o.cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
  }
  return r;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix r(rows_, idx.size(), field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
  return r;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix r(idx.size(), cols_, field_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Echelon rref(const Matrix& m) {
  const Field& F = m.field();
  Matrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r.cols() && row < r.rows(); ++c) {
    std::size_t piv = row;
    while (piv < r.rows() && r(piv, c) == 0) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));
    Scalar s = F.inv(r(row, c));
    for (std::size_t j = c; j < r.cols(); ++j) r(row, j) = F.mul(r(row, j), s);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, c) == 0) continue;
      Scalar f = r(i, c);
      for (std::size_t j = c; j < r.cols(); ++j) r(i, j) = F.sub(r(i, j), F.mul(f, r(row, j)));
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  // Eliminate along the shorter side.
  return m.rows() < m.cols() ? rref(m.transpose()).pivot_cols.size() : rref(m).pivot_cols.size();
}

bool in_span(const Vec& v, const Matrix& m) {
  if (v.size() != m.rows()) fail_input("in_span: length mismatch");
  return solve(m, v).has_value();
}

Matrix kernel_basis(const Matrix& m) {
  const Field& F = m.field();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t fcol = 0; fcol < m.cols(); ++fcol) {
    if (is_pivot[fcol]) continue;
    Vec v(m.cols(), 0);
    v[fcol] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = F.neg(e.reduced(r, fcol));
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(basis, m.cols(), F);
}

Matrix column_basis(const Matrix& m) {
  Echelon e = rref(m.transpose());
  Matrix b(m.rows(), e.pivot_cols.size(), m.field());
  for (std::size_t j = 0; j < e.pivot_cols.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, j) = e.reduced(j, i);
  return b;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) fail_input("solve: length mismatch");
  Matrix aug(m.rows(), m.cols() + 1, m.field());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i] % m.field().p();
  }
  Echelon e = rref(aug);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = e.reduced(r, m.cols());
  return x;
}

Matrix solve_in_basis(const Matrix& m, const Matrix& b) {
  require_same_field(m.field(), b.field());
  if (m.rows() != b.rows()) fail_input("solve_in_basis: row mismatch");
  Echelon e = rref(m.hstack(b));
  if (e.pivot_cols.size() < m.cols() ||
      (e.pivot_cols.size() > m.cols()))
    fail_state("solve_in_basis: vectors outside the span or dependent basis");
  for (std::size_t r = 0; r < m.cols(); ++r)
    if (e.pivot_cols[r] != r) fail_state("solve_in_basis: basis columns are dependent");
  Matrix x(m.cols(), b.cols(), m.field());
  for (std::size_t r = 0; r < m.cols(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(r, j) = e.reduced(r, m.cols() + j);
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) fail_input("inverse of a non-square matrix");
  return solve_in_basis(m, Matrix::identity(m.rows(), m.field()));
}

}  // namespace persist
