#pragma once

#include <vector>

#include "skewrank/tensor.hpp"

namespace skewrank {

/// A linear subspace of skew tensors given by an independent generator list
/// (1 to 4 generators, ambient dimension 5 or 6).
class MatrixSubspace {
 public:
  MatrixSubspace(std::size_t dim, std::vector<SkewTensor> generators);

  std::size_t dim() const { return dim_; }
  std::size_t k() const { return generators_.size(); }
  const FieldPtr& field() const { return generators_[0].field(); }
  const std::vector<SkewTensor>& generators() const { return generators_; }
  const SkewTensor& generator(std::size_t i) const { return generators_.at(i); }

  /// k x C(dim,2) matrix whose rows are the generators' coordinates.
  Matrix coordinate_matrix() const;

  /// The tensor sum_i coeffs[i] * generator_i.
  SkewTensor combine(const std::vector<Scalar>& coeffs) const;

  bool contains(const SkewTensor& t) const;
  bool same_span(const MatrixSubspace& other) const;

  /// Image of the span under the basis change T (each generator maps to
  /// T M T^t). Spans transform covariantly; generators stay independent.
  MatrixSubspace transform(const Matrix& t) const;

  MatrixSubspace promote(const FieldPtr& target) const;

 private:
  std::size_t dim_;
  std::vector<SkewTensor> generators_;
};

}  // namespace skewrank
