#pragma once

#include <map>
#include <vector>

#include "skewrank/span.hpp"

namespace skewrank {

using Monomial = std::vector<unsigned>;

/// All exponent vectors of the given total degree, lexicographic.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

/// A homogeneous polynomial with exact coefficients. The zero polynomial
/// keeps its declared degree and an empty term map.
class HomogPoly {
 public:
  HomogPoly(FieldPtr field, std::size_t nvars, unsigned degree);

  const FieldPtr& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree_ == 0 || terms_.empty(); }

  HomogPoly operator+(const HomogPoly& o) const;
  HomogPoly operator-(const HomogPoly& o) const;
  HomogPoly operator*(const HomogPoly& o) const;
  HomogPoly operator*(const Scalar& c) const;
  HomogPoly operator-() const;
  bool operator==(const HomogPoly& o) const;
  bool operator!=(const HomogPoly& o) const { return !(*this == o); }

  Scalar evaluate(const std::vector<Scalar>& point) const;
  HomogPoly derivative(std::size_t var) const;

  /// Degree in a single variable.
  unsigned degree_in(std::size_t var) const;

  /// Scales so the lex-leading coefficient is 1 (no-op on zero).
  HomogPoly monic() const;

  HomogPoly promote(const FieldPtr& target) const;

 private:
  FieldPtr field_;
  std::size_t nvars_;
  unsigned degree_;
  std::map<Monomial, Scalar> terms_;  // nonzero coefficients only
};

/// Exact quotient a / b; throws InternalError when b does not divide a.
HomogPoly exact_div(const HomogPoly& a, const HomogPoly& b);

/// Monic gcd via primitive pseudo-remainder sequences.
HomogPoly poly_gcd(const HomogPoly& a, const HomogPoly& b);

/// Product of the distinct irreducible factors (characteristic 0 fields).
HomogPoly squarefree_part(const HomogPoly& p);

/// Determinant of a square grid of polynomials of equal degree.
HomogPoly poly_det(const std::vector<std::vector<HomogPoly>>& m);

/// Outcome of the Macaulay-matrix emptiness test for a quadric system.
struct MacaulayCertificate {
  unsigned saturation_degree = 0;
  std::size_t achieved_rank = 0;
  std::size_t target_rank = 0;
  bool empty = false;
};

/// The cubic Pf(sum x_i w_i) in the span coordinates (dim V = 6 only).
HomogPoly pfaffian_cubic(const MatrixSubspace& space);

/// The coordinates of gamma(sum x_i w_i) as quadrics; their common
/// projective zeros are the rank <= 2 points of the span.
std::vector<HomogPoly> gauss_quadrics(const MatrixSubspace& space);

/// Decides whether the quadrics have no common projective zero, by the rank
/// of the degree-(nvars+1) Macaulay multiplication matrix.
MacaulayCertificate projective_empty(const std::vector<HomogPoly>& quadrics,
                                     std::size_t nvars);

}  // namespace skewrank
