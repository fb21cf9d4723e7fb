#include "skewrank/span.hpp"

namespace skewrank {

MatrixSubspace::MatrixSubspace(std::size_t dim, std::vector<SkewTensor> generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (generators_.empty() || generators_.size() > 4)
    throw BadDimension("a subspace takes 1 to 4 generators");
  for (const auto& g : generators_)
    if (g.dim() != dim_) throw DimensionMismatch();
  if (coordinate_matrix().rank() != generators_.size())
    throw DependentGenerators();
}

Matrix MatrixSubspace::coordinate_matrix() const {
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(generators_.size());
  for (const auto& g : generators_) rows.push_back(g.coords());
  return Matrix::from_rows(field(), rows);
}

SkewTensor MatrixSubspace::combine(const std::vector<Scalar>& coeffs) const {
  if (coeffs.size() != generators_.size()) throw SizeMismatch();
  SkewTensor t(field(), dim_);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    t = t + generators_[i] * coeffs[i];
  return t;
}

bool MatrixSubspace::contains(const SkewTensor& t) const {
  if (t.dim() != dim_) throw DimensionMismatch();
  Matrix stacked = Matrix::vstack(
      coordinate_matrix(), Matrix::from_rows(field(), {t.coords()}));
  return stacked.rank() == k();
}

bool MatrixSubspace::same_span(const MatrixSubspace& other) const {
  if (other.dim_ != dim_ || other.k() != k()) return false;
  Matrix stacked =
      Matrix::vstack(coordinate_matrix(), other.coordinate_matrix());
  return stacked.rank() == k();
}

MatrixSubspace MatrixSubspace::transform(const Matrix& t) const {
  std::vector<SkewTensor> gens;
  gens.reserve(generators_.size());
  for (const auto& g : generators_) gens.push_back(g.transform(t));
  return MatrixSubspace(dim_, std::move(gens));
}

MatrixSubspace MatrixSubspace::promote(const FieldPtr& target) const {
  std::vector<SkewTensor> gens;
  gens.reserve(generators_.size());
  for (const auto& g : generators_) gens.push_back(g.promote(target));
  return MatrixSubspace(dim_, std::move(gens));
}

}  // namespace skewrank
