#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skewrank/linalg.hpp"

using namespace skewrank;

namespace {

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c,
                     std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-5, 5);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f->from_int(d(rng));
  return m;
}

}  // namespace

TEST_CASE("rank, det and inverse on a fixed matrix") {
  auto Q = Field::rationals();
  auto M = Matrix::from_rows(
      Q, {{Q->from_int(2), Q->from_int(1), Q->from_int(0)},
          {Q->from_int(1), Q->from_int(3), Q->from_int(1)},
          {Q->from_int(0), Q->from_int(1), Q->from_int(4)}});
  CHECK(M.rank() == 3);
  CHECK(M.det() == Q->from_int(18));
  CHECK(M * M.inverse() == Matrix::identity(Q, 3));
  CHECK(M.inverse() * M == Matrix::identity(Q, 3));

  auto S = Matrix::from_rows(
      Q, {{Q->from_int(1), Q->from_int(2), Q->from_int(3)},
          {Q->from_int(2), Q->from_int(4), Q->from_int(6)},
          {Q->from_int(0), Q->from_int(1), Q->from_int(1)}});
  CHECK(S.rank() == 2);
  CHECK(S.det().is_zero());
  CHECK_THROWS_AS(S.inverse(), InputError);
}

TEST_CASE("nullspace and solve") {
  auto Q = Field::rationals();
  auto A = Matrix::from_rows(
      Q, {{Q->from_int(1), Q->from_int(2), Q->from_int(1), Q->from_int(0)},
          {Q->from_int(0), Q->from_int(1), Q->from_int(1), Q->from_int(1)}});
  Matrix N = A.nullspace();
  CHECK(N.cols() == 2);
  CHECK((A * N).is_zero());

  Matrix b(Q, 2, 1);
  b.at(0, 0) = Q->from_int(3);
  b.at(1, 0) = Q->from_int(1);
  auto x = A.solve(b);
  REQUIRE(x.has_value());
  CHECK(A * *x == b);

  // inconsistent system
  auto B = Matrix::from_rows(Q, {{Q->from_int(1), Q->from_int(1)},
                                 {Q->from_int(2), Q->from_int(2)}});
  Matrix c(Q, 2, 1);
  c.at(0, 0) = Q->from_int(1);
  c.at(1, 0) = Q->from_int(3);
  CHECK_FALSE(B.solve(c).has_value());
}

TEST_CASE("rank properties on random matrices over three fields") {
  std::vector<FieldPtr> fields = {
      Field::rationals(),
      adjoin_sqrt(Field::rationals(), Field::rationals()->from_int(2)),
      Field::prime_field(101)};
  std::mt19937_64 rng(42);
  for (const auto& f : fields) {
    for (int t = 0; t < 40; ++t) {
      Matrix A = random_matrix(f, 4, 6, rng);
      CHECK(A.rank() == A.transpose().rank());
      std::vector<std::size_t> piv;
      A.rref(&piv);
      CHECK(A.rank() == piv.size());
      Matrix N = A.nullspace();
      CHECK(N.cols() == A.cols() - A.rank());
      CHECK((A * N).is_zero());
      CHECK(N.rank() == N.cols());
    }
    for (int t = 0; t < 25; ++t) {
      Matrix A = random_matrix(f, 4, 4, rng);
      if (A.det().is_zero()) {
        CHECK(A.rank() < 4);
        continue;
      }
      CHECK(A.rank() == 4);
      CHECK(A * A.inverse() == Matrix::identity(f, 4));
      // det is multiplicative
      Matrix B = random_matrix(f, 4, 4, rng);
      CHECK((A * B).det() == A.det() * B.det());
    }
  }
}

TEST_CASE("subspace lattice operations") {
  auto Q = Field::rationals();
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    Matrix gu = random_matrix(Q, 6, 3, rng);
    Matrix gw = random_matrix(Q, 6, 3, rng);
    Subspace U = Subspace::span_of_columns(gu);
    Subspace W = Subspace::span_of_columns(gw);
    Subspace S = U.sum(W);
    Subspace I = U.intersect(W);
    CHECK(S.dim() + I.dim() == U.dim() + W.dim());
    CHECK(S.contains(U));
    CHECK(S.contains(W));
    CHECK(U.contains(I));
    CHECK(W.contains(I));
    CHECK(U.sum(U).equals(U));
    CHECK(U.intersect(U).equals(U));
    for (std::size_t j = 0; j < 3; ++j) CHECK(U.contains(gu.col(j)));
  }
  Subspace Z = Subspace::zero(Q, 6);
  CHECK(Z.dim() == 0);
  Subspace U = Subspace::span_of_columns(random_matrix(Q, 6, 2, rng));
  CHECK(U.intersect(Z).dim() == 0);
  CHECK(U.sum(Z).equals(U));
}

TEST_CASE("skew test and stacking") {
  auto Q = Field::rationals();
  Matrix m(Q, 3, 3);
  m.at(0, 1) = Q->from_int(2);
  m.at(1, 0) = Q->from_int(-2);
  CHECK(m.is_skew());
  m.at(2, 2) = Q->one();
  CHECK_FALSE(m.is_skew());

  Matrix a = Matrix::identity(Q, 2);
  Matrix h = Matrix::hstack(a, a);
  CHECK(h.cols() == 4);
  CHECK(h.rank() == 2);
  Matrix v = Matrix::vstack(a, a);
  CHECK(v.rows() == 4);
  CHECK(v.rank() == 2);
}
