#include "skewrank/linalg.hpp"

#include <algorithm>

namespace skewrank {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)),
      rows_(rows),
      cols_(cols),
      data_(rows * cols, field_->zero()) {}

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
  return m;
}

Matrix Matrix::from_rows(const FieldPtr& field,
                         const std::vector<std::vector<Scalar>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(field, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw SizeMismatch();
    for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::column(const std::vector<Scalar>& entries) {
  if (entries.empty()) throw SizeMismatch();
  Matrix m(entries[0].field(), entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, 0) = entries[i];
  return m;
}

Scalar& Matrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw SizeMismatch();
  return data_[i * cols_ + j];
}

const Scalar& Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw SizeMismatch();
  return data_[i * cols_ + j];
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeMismatch();
  Matrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.data_) x = -x;
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw SizeMismatch();
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

Matrix Matrix::operator*(const Scalar& c) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= c;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (data_[k] != o.data_[k]) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Scalar& x) { return x.is_zero(); });
}

bool Matrix::is_skew() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (at(i, j) != -at(j, i)) return false;
  return true;
}

Matrix Matrix::row(std::size_t i) const {
  Matrix r(field_, 1, cols_);
  for (std::size_t j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
  return r;
}

Matrix Matrix::col(std::size_t j) const {
  Matrix r(field_, rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
  return r;
}

std::vector<Scalar> Matrix::col_vector(std::size_t j) const {
  std::vector<Scalar> v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw SizeMismatch();
  Matrix r(a.field_, a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw SizeMismatch();
  Matrix r(a.field_, a.rows_ + b.rows_, a.cols_);
  for (std::size_t j = 0; j < a.cols_; ++j) {
    for (std::size_t i = 0; i < a.rows_; ++i) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i) r.at(a.rows_ + i, j) = b.at(i, j);
  }
  return r;
}

Matrix Matrix::promote(const FieldPtr& target) const {
  Matrix r(target, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k)
    r.data_[k] = data_[k].promote(target);
  return r;
}

// Fraction-free (Bareiss) elimination with row pivoting. Exact over any
// integral domain; every division below is known to be exact.
std::size_t Matrix::rank() const {
  Matrix a = *this;
  Scalar prev = field_->one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a.at(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j)
        std::swap(a.at(p, j), a.at(r, j));
    for (std::size_t i = r + 1; i < rows_; ++i) {
      for (std::size_t j = c + 1; j < cols_; ++j)
        a.at(i, j) = (a.at(r, c) * a.at(i, j) - a.at(i, c) * a.at(r, j)) / prev;
      a.at(i, c) = field_->zero();
    }
    prev = a.at(r, c);
    ++r;
  }
  return r;
}

Scalar Matrix::det() const {
  if (rows_ != cols_) throw SizeMismatch();
  if (rows_ == 0) return field_->one();
  Matrix a = *this;
  Scalar prev = field_->one();
  Scalar sign = field_->one();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::size_t p = r;
    while (p < rows_ && a.at(p, r).is_zero()) ++p;
    if (p == rows_) return field_->zero();
    if (p != r) {
      for (std::size_t j = 0; j < cols_; ++j)
        std::swap(a.at(p, j), a.at(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows_; ++i) {
      for (std::size_t j = r + 1; j < cols_; ++j)
        a.at(i, j) = (a.at(r, r) * a.at(i, j) - a.at(i, r) * a.at(r, j)) / prev;
      a.at(i, r) = field_->zero();
    }
    prev = a.at(r, r);
  }
  return sign * a.at(rows_ - 1, rows_ - 1);
}

Matrix Matrix::rref(std::vector<std::size_t>* pivots) const {
  Matrix a = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a.at(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j)
        std::swap(a.at(p, j), a.at(r, j));
    Scalar inv = a.at(r, c).inverse();
    for (std::size_t j = c; j < cols_; ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      Scalar m = a.at(i, c);
      for (std::size_t j = c; j < cols_; ++j)
        a.at(i, j) -= m * a.at(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return a;
}

Matrix Matrix::nullspace() const {
  std::vector<std::size_t> pivots;
  Matrix e = rref(&pivots);
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
      free_cols.push_back(c);
  Matrix basis(field_, cols_, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t fc = free_cols[k];
    basis.at(fc, k) = field_->one();
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis.at(pivots[r], k) = -e.at(r, fc);
  }
  return basis;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  if (b.rows_ != rows_ || b.cols_ != 1) throw SizeMismatch();
  std::vector<std::size_t> pivots;
  Matrix e = hstack(*this, b).rref(&pivots);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  Matrix x(field_, cols_, 1);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x.at(pivots[r], 0) = e.at(r, cols_);
  return x;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw SizeMismatch();
  std::vector<std::size_t> pivots;
  Matrix e = hstack(*this, identity(field_, rows_)).rref(&pivots);
  if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() != rows_ - 1))
    throw InputError("matrix is singular");
  Matrix r(field_, rows_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rows_; ++j) r.at(i, j) = e.at(i, cols_ + j);
  return r;
}

Subspace Subspace::span_of_columns(const Matrix& generators) {
  std::vector<std::size_t> pivots;
  Matrix e = generators.transpose().rref(&pivots);
  Matrix basis(generators.field(), pivots.size(), generators.rows());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < generators.rows(); ++j)
      basis.at(r, j) = e.at(r, j);
  return Subspace(std::move(basis));
}

Subspace Subspace::zero(const FieldPtr& field, std::size_t ambient) {
  return Subspace(Matrix(field, 0, ambient));
}

bool Subspace::contains(const Matrix& column_vector) const {
  if (column_vector.rows() != ambient() || column_vector.cols() != 1)
    throw SizeMismatch();
  Matrix stacked = Matrix::vstack(basis_rows_, column_vector.transpose());
  return stacked.rank() == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient() != ambient()) throw SizeMismatch();
  Matrix stacked = Matrix::vstack(basis_rows_, other.basis_rows_);
  return stacked.rank() == dim();
}

bool Subspace::equals(const Subspace& other) const {
  return dim() == other.dim() && basis_rows_ == other.basis_rows_;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient() != ambient()) throw SizeMismatch();
  Matrix stacked = Matrix::vstack(basis_rows_, other.basis_rows_);
  return span_of_columns(stacked.transpose());
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient() != ambient()) throw SizeMismatch();
  // x in both spans: A^T u = B^T v, solve [A^T | -B^T] kernel.
  Matrix a = basis_rows_.transpose();
  Matrix b = other.basis_rows_.transpose();
  if (dim() == 0 || other.dim() == 0) return zero(field(), ambient());
  Matrix ker = Matrix::hstack(a, -b).nullspace();
  Matrix gens(field(), ambient(), ker.cols());
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    for (std::size_t i = 0; i < ambient(); ++i) {
      Scalar s = field()->zero();
      for (std::size_t u = 0; u < dim(); ++u)
        s += a.at(i, u) * ker.at(u, k);
      gens.at(i, k) = s;
    }
  }
  return span_of_columns(gens);
}

}  // namespace skewrank
