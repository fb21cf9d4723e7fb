#include "skewrank/field.hpp"

#include <cctype>
#include <functional>
#include <utility>

namespace skewrank {

namespace {

unsigned long mulmod(unsigned long a, unsigned long b, unsigned long p) {
  return static_cast<unsigned long>(
      static_cast<unsigned __int128>(a) * b % p);
}

unsigned long powmod(unsigned long a, unsigned long e, unsigned long p) {
  unsigned long r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

unsigned long invmod(unsigned long a, unsigned long p) {
  if (a == 0) throw DivisionByZero();
  long long t = 0, newt = 1;
  long long r = static_cast<long long>(p), newr = static_cast<long long>(a);
  while (newr != 0) {
    long long q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<unsigned long>(t);
}

bool is_prime(unsigned long n) {
  mpz_class z(n);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

// Tonelli-Shanks. p odd prime.
std::optional<unsigned long> sqrt_mod(unsigned long a, unsigned long p) {
  a %= p;
  if (a == 0) return 0ul;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  unsigned long q = p - 1, s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  unsigned long z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  unsigned long m = s;
  unsigned long c = powmod(z, q, p);
  unsigned long t = powmod(a, q, p);
  unsigned long r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    unsigned long i = 0, tt = t;
    while (tt != 1) tt = mulmod(tt, tt, p), ++i;
    unsigned long b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

}  // namespace

FieldPtr Field::rationals() {
  static FieldPtr q = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::Rationals;
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr Field::prime_field(unsigned long p) {
  if (p <= 5 || !is_prime(p))
    throw BadField("prime-field modulus must be a prime > 5");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::PrimeField;
  f->modulus_ = p;
  return f;
}

FieldPtr Field::extend(FieldPtr base, const Scalar& radicand) {
  if (!base || base->kind() == FieldKind::PrimeField)
    throw BadField("square roots can only be adjoined over Q or a tower");
  if (radicand.is_zero()) throw ZeroRadicand();
  if (!base->same(*radicand.field())) throw MixedFields();
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::QuadraticTower;
  f->base_ = std::move(base);
  f->radicand_ = std::make_shared<Scalar>(radicand);
  f->levels_ = f->base_->levels_ + 1;
  return f;
}

const Scalar& Field::radicand() const {
  if (kind_ != FieldKind::QuadraticTower)
    throw BadField("field has no radicand");
  return *radicand_;
}

bool Field::same(const Field& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case FieldKind::Rationals:
      return true;
    case FieldKind::PrimeField:
      return modulus_ == other.modulus_;
    case FieldKind::QuadraticTower:
      return base_->same(*other.base_) && *radicand_ == *other.radicand_;
  }
  return false;
}

std::vector<Scalar> Field::radicand_chain() const {
  if (kind_ != FieldKind::QuadraticTower) return {};
  auto chain = base_->radicand_chain();
  chain.push_back(*radicand_);
  return chain;
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long n) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals:
      return Scalar::make_rational(self, mpq_class(n));
    case FieldKind::PrimeField: {
      long r = n % static_cast<long>(modulus_);
      if (r < 0) r += static_cast<long>(modulus_);
      return Scalar::make_residue(self, static_cast<unsigned long>(r));
    }
    case FieldKind::QuadraticTower:
      return Scalar::make_pair(self, base_->from_int(n), base_->from_int(0));
  }
  throw InternalError("bad field kind");
}

Scalar Field::from_mpq(const mpq_class& q) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals:
      return Scalar::make_rational(self, q);
    case FieldKind::PrimeField: {
      mpz_class num = q.get_num(), den = q.get_den();
      mpz_class pz(static_cast<unsigned long>(modulus_));
      if (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t()))
        throw BadField("denominator not invertible mod p");
      mpz_class nr = num % pz;
      if (nr < 0) nr += pz;
      mpz_class dr = den % pz;
      unsigned long n = nr.get_ui(), d = dr.get_ui();
      return Scalar::make_residue(self, mulmod(n, invmod(d, modulus_), modulus_));
    }
    case FieldKind::QuadraticTower:
      return Scalar::make_pair(self, base_->from_mpq(q), base_->from_int(0));
  }
  throw InternalError("bad field kind");
}

Scalar Field::root() const {
  if (kind_ != FieldKind::QuadraticTower)
    throw BadField("field has no adjoined root");
  return Scalar::make_pair(shared_from_this(), base_->from_int(0), base_->from_int(1));
}

Scalar Scalar::make_rational(FieldPtr f, mpq_class q) {
  if (q.get_den() == 0) throw DivisionByZero();
  q.canonicalize();  // GMP rational ops assume canonical form
  Scalar s;
  s.field_ = std::move(f);
  s.rat_ = std::move(q);
  return s;
}

Scalar Scalar::make_residue(FieldPtr f, unsigned long r) {
  Scalar s;
  s.field_ = std::move(f);
  s.res_ = r;
  return s;
}

Scalar Scalar::make_pair(FieldPtr f, Scalar lo, Scalar hi) {
  Scalar s;
  s.field_ = std::move(f);
  s.parts_.reserve(2);
  s.parts_.push_back(std::move(lo));
  s.parts_.push_back(std::move(hi));
  return s;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!field_ || !o.field_) throw MixedFields();
  if (field_ != o.field_ && !field_->same(*o.field_)) throw MixedFields();
}

bool Scalar::is_zero() const {
  if (!field_) throw InternalError("uninitialized scalar");
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_ == 0;
    case FieldKind::PrimeField:
      return res_ == 0;
    case FieldKind::QuadraticTower:
      return lo().is_zero() && hi().is_zero();
  }
  return false;
}

bool Scalar::is_one() const {
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_ == 1;
    case FieldKind::PrimeField:
      return res_ == 1;
    case FieldKind::QuadraticTower:
      return lo().is_one() && hi().is_zero();
  }
  return false;
}

bool Scalar::is_rational() const {
  switch (field_->kind()) {
    case FieldKind::Rationals:
    case FieldKind::PrimeField:
      return true;
    case FieldKind::QuadraticTower:
      return hi().is_zero() && lo().is_rational();
  }
  return false;
}

mpq_class Scalar::rational_value() const {
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_;
    case FieldKind::QuadraticTower:
      if (!hi().is_zero()) throw BadField("scalar is not rational");
      return lo().rational_value();
    case FieldKind::PrimeField:
      throw BadField("prime-field scalar has no rational value");
  }
  throw InternalError("bad field kind");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return make_rational(field_, rat_ + o.rat_);
    case FieldKind::PrimeField: {
      unsigned long p = field_->modulus();
      unsigned long r = res_ + o.res_;
      if (r >= p) r -= p;
      return make_residue(field_, r);
    }
    case FieldKind::QuadraticTower:
      return make_pair(field_, lo() + o.lo(), hi() + o.hi());
  }
  throw InternalError("bad field kind");
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return make_rational(field_, -rat_);
    case FieldKind::PrimeField:
      return make_residue(field_, res_ == 0 ? 0 : field_->modulus() - res_);
    case FieldKind::QuadraticTower:
      return make_pair(field_, -lo(), -hi());
  }
  throw InternalError("bad field kind");
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return make_rational(field_, rat_ * o.rat_);
    case FieldKind::PrimeField:
      return make_residue(field_, mulmod(res_, o.res_, field_->modulus()));
    case FieldKind::QuadraticTower: {
      // (a + b r)(c + d r) = (ac + bd*rad) + (ad + bc) r
      const Scalar& rad = field_->radicand();
      return make_pair(field_, lo() * o.lo() + hi() * o.hi() * rad,
                       lo() * o.hi() + hi() * o.lo());
    }
  }
  throw InternalError("bad field kind");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return make_rational(field_, 1 / rat_);
    case FieldKind::PrimeField:
      return make_residue(field_, invmod(res_, field_->modulus()));
    case FieldKind::QuadraticTower: {
      // 1/(a + b r) = (a - b r) / (a^2 - b^2 rad)
      const Scalar& rad = field_->radicand();
      Scalar n = lo() * lo() - hi() * hi() * rad;
      Scalar ninv = n.inverse();
      return make_pair(field_, lo() * ninv, -(hi() * ninv));
    }
  }
  throw InternalError("bad field kind");
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  check_same_field(o);
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_ == o.rat_;
    case FieldKind::PrimeField:
      return res_ == o.res_;
    case FieldKind::QuadraticTower:
      return lo() == o.lo() && hi() == o.hi();
  }
  return false;
}

int Scalar::cmp(const Scalar& o) const {
  check_same_field(o);
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return ::cmp(rat_, o.rat_);
    case FieldKind::PrimeField:
      return res_ < o.res_ ? -1 : res_ > o.res_ ? 1 : 0;
    case FieldKind::QuadraticTower: {
      int c = lo().cmp(o.lo());
      return c != 0 ? c : hi().cmp(o.hi());
    }
  }
  return 0;
}

Scalar Scalar::promote(const FieldPtr& target) const {
  if (field_->same(*target)) {
    Scalar s = *this;
    s.field_ = target;
    if (!s.parts_.empty()) {
      s.parts_[0] = s.parts_[0].promote(target->base());
      s.parts_[1] = s.parts_[1].promote(target->base());
    }
    return s;
  }
  if (target->kind() == FieldKind::QuadraticTower)
    return make_pair(target, promote(target->base()), target->base()->zero());
  throw MixedFields();
}

Scalar Scalar::reduce_mod(const FieldPtr& fp) const {
  if (fp->kind() != FieldKind::PrimeField)
    throw BadField("reduce_mod target must be a prime field");
  return fp->from_mpq(rational_value());
}

std::string Scalar::str() const {
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_.get_str();
    case FieldKind::PrimeField:
      return std::to_string(res_);
    case FieldKind::QuadraticTower: {
      std::string rad = "sqrt(" + field_->radicand().str() + ")";
      if (hi().is_zero()) return lo().str();
      std::string h = hi().is_one() ? rad : "(" + hi().str() + ")*" + rad;
      if (lo().is_zero()) return h;
      return lo().str() + " + " + h;
    }
  }
  throw InternalError("bad field kind");
}

FieldPtr adjoin_sqrt(const FieldPtr& desc, const Scalar& x) {
  if (x.is_zero()) throw ZeroRadicand();
  if (!desc->same(*x.field())) throw MixedFields();
  if (desc->kind() == FieldKind::PrimeField)
    throw BadField("adjoin_sqrt is only defined over Q and towers");
  if (try_sqrt(x)) return desc;
  return Field::extend(desc, x);
}

std::optional<Scalar> try_sqrt(const Scalar& x) {
  const FieldPtr& f = x.field();
  switch (f->kind()) {
    case FieldKind::Rationals: {
      mpq_class q = x.rational_value();
      if (q < 0) return std::nullopt;
      mpz_class num = q.get_num(), den = q.get_den();
      if (!mpz_perfect_square_p(num.get_mpz_t()) ||
          !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
      mpz_class sn, sd;
      mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
      return f->from_mpq(mpq_class(sn, sd));
    }
    case FieldKind::PrimeField: {
      // canonical residue: the one <= p/2
      unsigned long p = f->modulus();
      auto s = sqrt_mod(x.res_, p);
      if (!s) return std::nullopt;
      unsigned long v = *s;
      if (v > p - v) v = p - v;
      return Scalar::make_residue(f, v);
    }
    case FieldKind::QuadraticTower:
      break;
  }
  // Tower: x = u + v r with r = sqrt(d), u, v, d in the base field.
  const FieldPtr& base = f->base();
  const Scalar& d = f->radicand();
  // decompose x into (u, v): u = (x + conj(x))/2, v-part via subtraction.
  // conj is not public either; but Scalar friends this function, so reach in.
  const Scalar& u = x.parts_[0];
  const Scalar& v = x.parts_[1];
  auto embed = [&](const Scalar& a, const Scalar& b) {
    return Scalar::make_pair(f, a, b);
  };
  // sign of the coefficient of the highest nonvanishing radical component,
  // used to pick the canonical one of the two square roots
  std::function<int(const Scalar&)> lead = [&](const Scalar& s) -> int {
    if (s.field_->kind() != FieldKind::QuadraticTower)
      return sgn(s.rational_value());
    return s.hi().is_zero() ? lead(s.lo()) : lead(s.hi());
  };
  auto canonical = [&](Scalar s) -> Scalar {
    if (lead(s) < 0) s = -s;
    return s;
  };
  if (v.is_zero()) {
    if (auto su = try_sqrt(u)) return canonical(embed(*su, base->zero()));
    // maybe sqrt(x) = b*r with b^2 d = u
    if (auto sb = try_sqrt(u / d)) return canonical(embed(base->zero(), *sb));
    return std::nullopt;
  }
  // s = a + b r with a^2 + b^2 d = u and 2ab = v; a^2 solves
  // t^2 - u t + d v^2 / 4 = 0.
  Scalar disc = u * u - d * v * v;
  auto w = try_sqrt(disc);
  if (!w) return std::nullopt;
  Scalar two = base->from_int(2);
  for (int pick = 0; pick < 2; ++pick) {
    Scalar a2 = (pick == 0 ? u + *w : u - *w) / two;
    auto a = try_sqrt(a2);
    if (!a || a->is_zero()) continue;
    Scalar b = v / (two * *a);
    Scalar cand = embed(*a, b);
    if (cand * cand == x) return canonical(cand);
  }
  return std::nullopt;
}

namespace {

// --- tiny scalar expression parser ------------------------------------
// grammar: expr := term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := rational | 'sqrt' '(' expr ')' | '(' expr ')' | '-' factor
struct Parser {
  const std::string& s;
  size_t i = 0;
  const Field& f;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v = term();
    for (;;) {
      skip();
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  Scalar term() {
    Scalar v = factor();
    while (eat('*')) v = v * factor();
    return v;
  }
  Scalar factor() {
    skip();
    if (eat('-')) return -factor();
    if (i + 4 <= s.size() && s.compare(i, 4, "sqrt") == 0) {
      i += 4;
      if (!eat('(')) throw ParseError("expected '(' after sqrt");
      Scalar rad = expr();
      if (!eat(')')) throw ParseError("expected ')'");
      auto r = try_sqrt(rad);
      if (r) return *r;
      // must match an adjoined radical of the tower
      for (FieldPtr lvl = f.shared_from_this(); lvl->kind() == FieldKind::QuadraticTower;
           lvl = lvl->base()) {
        Scalar radl = lvl->radicand().promote(f.shared_from_this());
        if (radl == rad) return lvl->root().promote(f.shared_from_this());
      }
      throw ParseError("sqrt(" + rad.str() + ") does not lie in the field");
    }
    if (eat('(')) {
      Scalar v = expr();
      if (!eat(')')) throw ParseError("expected ')'");
      return v;
    }
    size_t start = i;
    while (i < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
      ++i;
    if (start == i) throw ParseError("malformed scalar: '" + s + "'");
    std::string tok = s.substr(start, i - start);
    try {
      mpq_class q(tok);
      if (q.get_den() == 0) throw ParseError("zero denominator: '" + tok + "'");
      q.canonicalize();
      return f.from_mpq(q);
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed rational: '" + tok + "'");
    }
  }
};

}  // namespace

Scalar Field::parse(const std::string& text) const {
  Parser p{text, 0, *this};
  Scalar v = p.expr();
  p.skip();
  if (p.i != text.size()) throw ParseError("trailing garbage in scalar: '" + text + "'");
  return v;
}

}  // namespace skewrank
