#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "skewrank/field.hpp"

namespace skewrank {

/// Dense matrix over an exact field. All elimination is exact; rank and
/// determinant use fraction-free (Bareiss) elimination, reduced forms use
/// ordinary division-based Gauss-Jordan.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldPtr& field, std::size_t n);
  static Matrix from_rows(const FieldPtr& field,
                          const std::vector<std::vector<Scalar>>& rows);
  static Matrix column(const std::vector<Scalar>& entries);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j);
  const Scalar& at(std::size_t i, std::size_t j) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& c) const;
  Matrix operator-() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_skew() const;

  Matrix row(std::size_t i) const;
  Matrix col(std::size_t j) const;
  std::vector<Scalar> col_vector(std::size_t j) const;

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

  /// Promotes every entry into a larger field.
  Matrix promote(const FieldPtr& target) const;

  std::size_t rank() const;
  Scalar det() const;

  /// Reduced row echelon form; pivot column indices are appended to
  /// `pivots` when given.
  Matrix rref(std::vector<std::size_t>* pivots = nullptr) const;

  /// Basis of the right kernel, returned as the columns of an n x k matrix
  /// (k = nullity; the matrix has zero columns only when k = 0).
  Matrix nullspace() const;

  /// One solution x of A x = b (b is a column), if the system is consistent.
  std::optional<Matrix> solve(const Matrix& b) const;

  Matrix inverse() const;

 private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

/// A linear subspace of F^n, stored with a canonical (RREF) basis so that
/// structural equality of subspaces is plain equality of representations.
class Subspace {
 public:
  /// Span of the columns of `generators` (an n x m matrix).
  static Subspace span_of_columns(const Matrix& generators);
  static Subspace zero(const FieldPtr& field, std::size_t ambient);

  std::size_t dim() const { return basis_rows_.rows(); }
  std::size_t ambient() const { return basis_rows_.cols(); }
  const FieldPtr& field() const { return basis_rows_.field(); }

  /// Basis vectors as the columns of an ambient x dim matrix.
  Matrix basis_columns() const { return basis_rows_.transpose(); }

  bool contains(const Matrix& column_vector) const;
  bool contains(const Subspace& other) const;
  bool equals(const Subspace& other) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

 private:
  explicit Subspace(Matrix basis_rows) : basis_rows_(std::move(basis_rows)) {}
  Matrix basis_rows_;  // dim x ambient, in RREF with zero rows dropped
};

}  // namespace skewrank
