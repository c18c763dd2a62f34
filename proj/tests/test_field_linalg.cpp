#include <doctest.h>

#include <random>

#include "persist/field.hpp"

using namespace persist;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Field f, std::mt19937_64& rng, int sparsity = 2) {
  Matrix m(r, c, f);
  std::uniform_int_distribution<Scalar> val(0, f.p() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() % sparsity == 0) m(i, j) = val(rng);
  return m;
}

}  // namespace

TEST_CASE("field arithmetic") {
  Field f(7);
  CHECK(f.add(5, 4) == 2);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.mul(f.inv(3), 3) == 1);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.to_signed(6) == -1);
  CHECK(f.pow(3, 6) == 1);
  CHECK_THROWS(Field(4));
  CHECK_THROWS(Field(1));
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("rank examples") {
  Field f2(2);
  CHECK(rank(Matrix::identity(3, f2)) == 3);
  CHECK(rank(Matrix(2, 2, f2)) == 0);
  CHECK(rank(Matrix::from_rows({{1, 1}, {1, 1}}, f2)) == 1);
  // singular only mod 2
  CHECK(rank(Matrix::from_rows({{1, 1}, {1, -1}}, f2)) == 1);
  CHECK(rank(Matrix::from_rows({{1, 1}, {1, -1}}, Field(3))) == 2);
}

TEST_CASE("in_span examples") {
  Field f(2);
  Matrix m = Matrix::from_rows({{0}, {1}}, f);
  CHECK(in_span(Vec{0, 0}, m));
  CHECK(in_span(Vec{1, 0}, Matrix::identity(2, f)));
  CHECK_FALSE(in_span(Vec{1, 0}, m));
  CHECK(in_span(Vec{0, 0}, Matrix(2, 0, f)));
}

TEST_CASE("kernel examples") {
  Field f(2);
  CHECK(kernel_basis(Matrix::identity(3, f)).cols() == 0);
  Matrix k = kernel_basis(Matrix(3, 3, f));
  CHECK(k.cols() == 3);
  CHECK(k == Matrix::identity(3, f));
  Matrix k1 = kernel_basis(Matrix::from_rows({{1, 1}}, f));
  REQUIRE(k1.cols() == 1);
  CHECK(k1.column(0) == Vec{1, 1});
}

TEST_CASE("solve, inverse and column bases") {
  Field f(5);
  Matrix m = Matrix::from_rows({{1, 2}, {3, 4}}, f);
  Matrix inv = inverse(m);
  CHECK(m * inv == Matrix::identity(2, f));
  auto x = solve(m, Vec{1, 0});
  REQUIRE(x);
  CHECK(m * *x == Vec{1, 0});
  CHECK_FALSE(solve(Matrix::from_rows({{1}, {1}}, f), Vec{1, 0}));
  Matrix basis = Matrix::from_rows({{1, 0}, {1, 1}, {0, 1}}, f);
  Matrix b = Matrix::from_rows({{2}, {3}, {1}}, f);
  CHECK(solve_in_basis(basis, b) == Matrix::from_rows({{2}, {1}}, f));
  CHECK_THROWS(solve_in_basis(basis, Matrix::from_rows({{1}, {0}, {0}}, f)));
  CHECK_THROWS(inverse(Matrix::from_rows({{1, 1}, {1, 1}}, f)));
  CHECK(column_basis(Matrix::from_rows({{1, 2, 3}, {2, 4, 2}}, f)).cols() == 2);
}

TEST_CASE("mixing characteristics is an error") {
  CHECK_THROWS(Matrix::identity(2, Field(2)) * Matrix::identity(2, Field(3)));
}

TEST_CASE("rank-nullity and kernel columns on random matrices") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    Field f(p);
    for (int t = 0; t < 60; ++t) {
      std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      Matrix m = random_matrix(r, c, f, rng);
      Matrix k = kernel_basis(m);
      CHECK(rank(m) + k.cols() == c);
      CHECK((m * k).is_zero());
      CHECK(rank(k) == k.cols());
      CHECK(rank(m) == rank(m.transpose()));
    }
  }
}

TEST_CASE("rank of a product is bounded by both factors") {
  std::mt19937_64 rng(12);
  for (std::uint32_t p : {2u, 5u}) {
    Field f(p);
    for (int t = 0; t < 60; ++t) {
      std::size_t a = 1 + rng() % 6, b = 1 + rng() % 6, c = 1 + rng() % 6;
      Matrix m = random_matrix(a, b, f, rng), n = random_matrix(b, c, f, rng);
      CHECK(rank(m * n) <= std::min(rank(m), rank(n)));
    }
  }
}

TEST_CASE("in_span agrees with rank growth") {
  std::mt19937_64 rng(13);
  Field f(3);
  for (int t = 0; t < 100; ++t) {
    Matrix m = random_matrix(5, 1 + rng() % 4, f, rng, 3);
    Matrix v = random_matrix(5, 1, f, rng, 2);
    CHECK(in_span(v.column(0), m) == (rank(m.hstack(v)) == rank(m)));
  }
}

TEST_CASE("rref is deterministic and reduced") {
  Field f(5);
  Matrix m = Matrix::from_rows({{0, 2, 4}, {1, 3, 0}, {1, 0, 1}}, f);
  Echelon e1 = rref(m), e2 = rref(m);
  CHECK(e1.reduced == e2.reduced);
  CHECK(e1.pivot_cols == e2.pivot_cols);
  for (std::size_t r = 0; r < e1.pivot_cols.size(); ++r) {
    std::size_t c = e1.pivot_cols[r];
    CHECK(e1.reduced(r, c) == 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r) CHECK(e1.reduced(i, c) == 0);
  }
}
