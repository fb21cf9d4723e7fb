#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewrank/errors.hpp"

namespace skewrank {

class Field;
class Scalar;
using FieldPtr = std::shared_ptr<const Field>;

enum class FieldKind { Rationals, QuadraticTower, PrimeField };

/// A computable coefficient field: Q, a tower of quadratic extensions of Q,
/// or F_p for a prime p > 5. Towers are built one square root at a time; the
/// radicand of each level lives in the level below, so nested radicals are
/// representable even though the classification only ever needs one.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr rationals();
  static FieldPtr prime_field(unsigned long p);

  /// Extends `base` by sqrt(radicand). Callers should go through
  /// `adjoin_sqrt`, which first checks whether the radicand is already a
  /// square (and is therefore idempotent).
  static FieldPtr extend(FieldPtr base, const Scalar& radicand);

  FieldKind kind() const { return kind_; }
  unsigned long modulus() const { return modulus_; }
  const FieldPtr& base() const { return base_; }
  const Scalar& radicand() const;
  /// Number of adjoined square roots (0 for Q and F_p).
  int levels() const { return levels_; }

  /// Structural equality: same kind, same modulus, same radicand chain.
  bool same(const Field& other) const;

  /// All radicands from the bottom of the tower up, as elements of their
  /// respective base fields.
  std::vector<Scalar> radicand_chain() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long n) const;
  Scalar from_mpq(const mpq_class& q) const;
  /// The generator sqrt(radicand) of the top tower level.
  Scalar root() const;

  Scalar parse(const std::string& text) const;

 private:
  Field() = default;
  FieldKind kind_ = FieldKind::Rationals;
  unsigned long modulus_ = 0;
  FieldPtr base_;
  std::shared_ptr<Scalar> radicand_;
  int levels_ = 0;
};

/// An exact field element. Representation depends on the field:
/// a reduced fraction over Q, a residue in [0,p) over F_p, and a pair
/// (lo, hi) meaning lo + hi*sqrt(d) over a tower level with radicand d.
class Scalar {
 public:
  Scalar() = default;

  const FieldPtr& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the element lies in the prime field / bottom of the tower,
  /// i.e. all tower components above level 0 vanish.
  bool is_rational() const;
  /// The rational value; requires is_rational() on a Q-based field.
  mpq_class rational_value() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Embeds this element into `target`, which must contain this scalar's
  /// field as a lower tower level (or be structurally equal).
  Scalar promote(const FieldPtr& target) const;

  /// Reduction mod p for rational-based scalars whose denominators are
  /// coprime to p. Only defined for elements of Q (tower level 0 values).
  Scalar reduce_mod(const FieldPtr& fp) const;

  std::string str() const;

  /// Total order usable for canonical tie-breaking (not a field order).
  int cmp(const Scalar& o) const;

  friend class Field;
  friend std::optional<Scalar> try_sqrt(const Scalar& x);

  static Scalar make_rational(FieldPtr f, mpq_class q);
  static Scalar make_residue(FieldPtr f, unsigned long r);
  static Scalar make_pair(FieldPtr f, Scalar lo, Scalar hi);

 private:
  void check_same_field(const Scalar& o) const;
  const Scalar& lo() const { return parts_[0]; }
  const Scalar& hi() const { return parts_[1]; }

  FieldPtr field_;
  mpq_class rat_;
  unsigned long res_ = 0;
  std::vector<Scalar> parts_;  // size 2 for tower scalars
};

/// Returns a field in which x has a square root: the field itself when
/// try_sqrt succeeds, otherwise the tower extended by sqrt(x).
FieldPtr adjoin_sqrt(const FieldPtr& desc, const Scalar& x);

/// The canonical square root of x in its own field, if one exists. The
/// representative has nonnegative leading canonical coefficient (for F_p:
/// the residue <= p/2).
std::optional<Scalar> try_sqrt(const Scalar& x);

}  // namespace skewrank
