#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "skewrank/linalg.hpp"

namespace skewrank {

class FourTensor;

/// Ordered list of index pairs i < j of {0..dim-1}, lexicographic. The k-th
/// pair names the basis 2-form e_i ^ e_j carried in coordinate slot k.
const std::vector<std::pair<std::size_t, std::size_t>>& pair_basis(std::size_t dim);

/// Ordered list of 4-element index subsets, lexicographic.
const std::vector<std::array<std::size_t, 4>>& quad_basis(std::size_t dim);

/// An alternating 2-tensor on C^dim (dim 5 or 6), i.e. a skew-symmetric
/// matrix viewed as an element of the second exterior power.
class SkewTensor {
 public:
  SkewTensor(FieldPtr field, std::size_t dim);

  /// e_i ^ e_j scaled by c (i != j, any order).
  static SkewTensor basis_form(const FieldPtr& field, std::size_t dim,
                               std::size_t i, std::size_t j);
  static SkewTensor from_matrix(const Matrix& m);

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return dim_; }

  /// Coefficient of e_i ^ e_j, with the sign flip for i > j.
  Scalar coord(std::size_t i, std::size_t j) const;
  /// Adds c * e_i ^ e_j.
  void add_term(std::size_t i, std::size_t j, const Scalar& c);

  /// Coordinates in the lexicographic pair basis.
  const std::vector<Scalar>& coords() const { return coords_; }
  std::vector<Scalar>& coords() { return coords_; }

  Matrix matrix() const;

  SkewTensor operator+(const SkewTensor& o) const;
  SkewTensor operator-(const SkewTensor& o) const;
  SkewTensor operator*(const Scalar& c) const;
  SkewTensor operator-() const;
  bool operator==(const SkewTensor& o) const;
  bool operator!=(const SkewTensor& o) const { return !(*this == o); }
  bool is_zero() const;

  /// The derivation action of X in gl(V): matrix X M + M X^T.
  SkewTensor act(const Matrix& x) const;

  /// Pushforward along an invertible T: coordinates of T . omega where the
  /// basis vectors map by e_j -> T e_j, i.e. matrix T M T^T.
  SkewTensor transform(const Matrix& t) const;

  SkewTensor promote(const FieldPtr& target) const;

  /// Pfaffian (dim 6 only; full 6x6 Pfaffian, cubic in the entries).
  Scalar pfaffian() const;

 private:
  FieldPtr field_;
  std::size_t dim_;
  std::vector<Scalar> coords_;
};

/// An alternating 4-tensor, used for Gauss images omega ^ omega.
class FourTensor {
 public:
  FourTensor(FieldPtr field, std::size_t dim);

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Scalar>& coords() const { return coords_; }
  std::vector<Scalar>& coords() { return coords_; }

  FourTensor operator+(const FourTensor& o) const;
  FourTensor operator*(const Scalar& c) const;
  bool operator==(const FourTensor& o) const;
  bool is_zero() const;

  /// For dim 5: the linear form whose kernel hyperplane this 4-vector spans
  /// under the isomorphism with the dual space (1 x 5 row).
  Matrix dual_covector() const;

 private:
  FieldPtr field_;
  std::size_t dim_;
  std::vector<Scalar> coords_;
};

FourTensor wedge(const SkewTensor& a, const SkewTensor& b);

/// The Gauss map gamma(omega) = omega ^ omega.
FourTensor gauss_map(const SkewTensor& omega);

/// Coefficient of the volume form e_0 ^ ... ^ e_5 in q ^ omega (dim 6).
Scalar top_coefficient(const FourTensor& q, const SkewTensor& omega);

/// Coefficient of the volume form in a ^ b ^ c (dim 6). Symmetric trilinear;
/// triple_pfaffian(w, w, w) = 6 Pf(w).
Scalar triple_pfaffian(const SkewTensor& a, const SkewTensor& b,
                       const SkewTensor& c);

}  // namespace skewrank
