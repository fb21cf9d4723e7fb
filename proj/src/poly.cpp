#include "skewrank/poly.hpp"

#include <algorithm>
#include <functional>

namespace skewrank {

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial cur(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
    if (v + 1 == nvars) {
      cur[v] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[v] = e;
      rec(v + 1, left - e);
    }
    cur[v] = 0;
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

HomogPoly::HomogPoly(FieldPtr field, std::size_t nvars, unsigned degree)
    : field_(std::move(field)), nvars_(nvars), degree_(degree) {}

Scalar HomogPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? field_->zero() : it->second;
}

void HomogPoly::add_term(const Monomial& m, const Scalar& c) {
  if (m.size() != nvars_) throw SizeMismatch();
  unsigned total = 0;
  for (unsigned e : m) total += e;
  if (total != degree_)
    throw InternalError("term degree does not match the polynomial degree");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

HomogPoly HomogPoly::operator+(const HomogPoly& o) const {
  if (nvars_ != o.nvars_ || (degree_ != o.degree_ && !is_zero() && !o.is_zero()))
    throw SizeMismatch();
  HomogPoly r = is_zero() ? HomogPoly(field_, nvars_, o.degree_) : *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

HomogPoly HomogPoly::operator-(const HomogPoly& o) const { return *this + (-o); }

HomogPoly HomogPoly::operator-() const {
  HomogPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

HomogPoly HomogPoly::operator*(const HomogPoly& o) const {
  if (nvars_ != o.nvars_) throw SizeMismatch();
  HomogPoly r(field_, nvars_, degree_ + o.degree_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(nvars_);
      for (std::size_t v = 0; v < nvars_; ++v) m[v] = ma[v] + mb[v];
      r.add_term(m, ca * cb);
    }
  return r;
}

HomogPoly HomogPoly::operator*(const Scalar& c) const {
  HomogPoly r(field_, nvars_, degree_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.add_term(m, x * c);
  return r;
}

bool HomogPoly::operator==(const HomogPoly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_ &&
         (degree_ == o.degree_ || is_zero());
}

Scalar HomogPoly::evaluate(const std::vector<Scalar>& point) const {
  if (point.size() != nvars_) throw SizeMismatch();
  Scalar sum = field_->zero();
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (std::size_t v = 0; v < nvars_; ++v)
      for (unsigned e = 0; e < m[v]; ++e) t *= point[v];
    sum += t;
  }
  return sum;
}

HomogPoly HomogPoly::derivative(std::size_t var) const {
  if (var >= nvars_) throw SizeMismatch();
  HomogPoly r(field_, nvars_, degree_ == 0 ? 0 : degree_ - 1);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    --d[var];
    r.add_term(d, c * field_->from_int(static_cast<long>(m[var])));
  }
  return r;
}

unsigned HomogPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

HomogPoly HomogPoly::monic() const {
  if (is_zero()) return *this;
  return *this * terms_.begin()->second.inverse();
}

HomogPoly HomogPoly::promote(const FieldPtr& target) const {
  HomogPoly r(target, nvars_, degree_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.promote(target));
  return r;
}

HomogPoly exact_div(const HomogPoly& a, const HomogPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return HomogPoly(a.field(), a.nvars(), 0);
  if (a.degree() < b.degree())
    throw InternalError("inexact polynomial division");
  HomogPoly rem = a;
  HomogPoly quot(a.field(), a.nvars(), a.degree() - b.degree());
  const auto& [lead_m, lead_c] = *b.terms().begin();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = *rem.terms().begin();
    Monomial q(a.nvars());
    for (std::size_t v = 0; v < a.nvars(); ++v) {
      if (rm[v] < lead_m[v]) throw InternalError("inexact polynomial division");
      q[v] = rm[v] - lead_m[v];
    }
    Scalar qc = rc / lead_c;
    quot.add_term(q, qc);
    HomogPoly qpoly(a.field(), a.nvars(), quot.degree());
    qpoly.add_term(q, qc);
    rem = rem - qpoly * b;
  }
  return quot;
}

namespace {

/// Coefficient of x_var^k, as a polynomial with var-exponent zero.
HomogPoly coeff_in(const HomogPoly& p, std::size_t var, unsigned k) {
  HomogPoly r(p.field(), p.nvars(), p.degree() >= k ? p.degree() - k : 0);
  for (const auto& [m, c] : p.terms()) {
    if (m[var] != k) continue;
    Monomial q = m;
    q[var] = 0;
    r.add_term(q, c);
  }
  return r;
}

HomogPoly shift_in(const HomogPoly& p, std::size_t var, unsigned k) {
  HomogPoly r(p.field(), p.nvars(), p.degree() + k);
  for (const auto& [m, c] : p.terms()) {
    Monomial q = m;
    q[var] += k;
    r.add_term(q, c);
  }
  return r;
}

HomogPoly content_in(const HomogPoly& p, std::size_t var) {
  HomogPoly g(p.field(), p.nvars(), 0);
  for (unsigned k = 0; k <= p.degree_in(var); ++k) {
    HomogPoly c = coeff_in(p, var, k);
    if (!c.is_zero()) g = g.is_zero() ? c.monic() : poly_gcd(g, c);
  }
  return g;
}

/// Pseudo-remainder of a by b with respect to var.
HomogPoly prem(HomogPoly a, const HomogPoly& b, std::size_t var) {
  unsigned db = b.degree_in(var);
  HomogPoly lc = coeff_in(b, var, db);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    unsigned da = a.degree_in(var);
    HomogPoly la = coeff_in(a, var, da);
    // lc * a - la * x^(da-db) * b kills the degree-da part
    a = a * lc - shift_in(la, var, da - db) * b;
  }
  return a;
}

}  // namespace

HomogPoly poly_gcd(const HomogPoly& a, const HomogPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  HomogPoly one(a.field(), a.nvars(), 0);
  one.add_term(Monomial(a.nvars(), 0), a.field()->one());
  if (a.degree() == 0 || b.degree() == 0) return one;
  // main variable: the first appearing in a
  std::size_t var = 0;
  while (a.degree_in(var) == 0) ++var;
  if (b.degree_in(var) == 0) return poly_gcd(content_in(a, var), b);
  HomogPoly ca = content_in(a, var);
  HomogPoly cb = content_in(b, var);
  HomogPoly pa = exact_div(a, ca);
  HomogPoly pb = exact_div(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  HomogPoly part = one;
  for (;;) {
    HomogPoly r = prem(pa, pb, var);
    if (r.is_zero()) {
      part = exact_div(pb, content_in(pb, var));
      break;
    }
    if (r.degree_in(var) == 0) break;  // coprime primitive parts
    pa = pb;
    pb = exact_div(r, content_in(r, var));
  }
  return (poly_gcd(ca, cb) * part).monic();
}

HomogPoly squarefree_part(const HomogPoly& p) {
  if (p.is_zero() || p.degree() == 0) return p.monic();
  HomogPoly g(p.field(), p.nvars(), 0);
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    HomogPoly d = p.derivative(v);
    if (d.is_zero()) continue;
    g = g.is_zero() ? poly_gcd(p, d) : poly_gcd(g, d);
  }
  if (g.is_zero()) return p.monic();
  return exact_div(p, g).monic();
}

HomogPoly poly_det(const std::vector<std::vector<HomogPoly>>& m) {
  std::size_t n = m.size();
  if (n == 0) throw SizeMismatch();
  const FieldPtr& f = m[0][0].field();
  std::size_t nvars = m[0][0].nvars();
  unsigned entry_deg = m[0][0].degree();
  for (const auto& row : m) {
    if (row.size() != n) throw SizeMismatch();
    for (const auto& e : row)
      if (e.degree() != entry_deg && !e.is_zero()) throw SizeMismatch();
  }
  // column-by-column expansion: state = subset of used rows
  std::vector<HomogPoly> dp(std::size_t(1) << n,
                            HomogPoly(f, nvars, 0));
  dp[0].add_term(Monomial(nvars, 0), f->one());
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<HomogPoly> next(std::size_t(1) << n,
                                HomogPoly(f, nvars, entry_deg * (col + 1)));
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != col) continue;
      if (dp[mask].is_zero()) continue;
      int seen = 0;
      for (std::size_t row = 0; row < n; ++row) {
        if (mask & (std::size_t(1) << row)) continue;
        if (!m[row][col].is_zero()) {
          HomogPoly term = dp[mask] * m[row][col];
          if (seen % 2) term = -term;
          next[mask | (std::size_t(1) << row)] =
              next[mask | (std::size_t(1) << row)] + term;
        }
        ++seen;
      }
    }
    dp = std::move(next);
  }
  return dp[dp.size() - 1];
}

HomogPoly pfaffian_cubic(const MatrixSubspace& space) {
  if (space.dim() != 6)
    throw DimensionMismatch("the Pfaffian cubic requires dim V = 6");
  std::size_t k = space.k();
  const FieldPtr& f = space.field();
  HomogPoly cubic(f, k, 3);
  Scalar half = f->from_mpq(mpq_class(1, 2));
  Scalar sixth = f->from_mpq(mpq_class(1, 6));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j)
      for (std::size_t l = j; l < k; ++l) {
        Scalar t = triple_pfaffian(space.generator(i), space.generator(j),
                                   space.generator(l));
        if (i == j && j == l)
          t *= sixth;
        else if (i == j || j == l)
          t *= half;
        if (t.is_zero()) continue;
        Monomial m(k, 0);
        ++m[i];
        ++m[j];
        ++m[l];
        cubic.add_term(m, t);
      }
  return cubic;
}

std::vector<HomogPoly> gauss_quadrics(const MatrixSubspace& space) {
  std::size_t k = space.k();
  const FieldPtr& f = space.field();
  std::size_t ncoords = quad_basis(space.dim()).size();
  std::vector<HomogPoly> out(ncoords, HomogPoly(f, k, 2));
  Scalar two = f->from_int(2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      FourTensor w = wedge(space.generator(i), space.generator(j));
      Scalar mult = (i == j) ? f->one() : two;
      Monomial m(k, 0);
      ++m[i];
      ++m[j];
      for (std::size_t c = 0; c < ncoords; ++c) {
        Scalar coef = w.coords()[c] * mult;
        if (!coef.is_zero()) out[c].add_term(m, coef);
      }
    }
  return out;
}

MacaulayCertificate projective_empty(const std::vector<HomogPoly>& quadrics,
                                     std::size_t nvars) {
  if (nvars > 4) throw TooManyVariables();
  if (nvars < 2) throw BadDimension("at least two variables are required");
  for (const auto& q : quadrics) {
    if (q.nvars() != nvars || (q.degree() != 2 && !q.is_zero()))
      throw NotQuadric();
  }
  MacaulayCertificate cert;
  cert.saturation_degree = static_cast<unsigned>(nvars) + 1;
  auto cols = monomials_of_degree(nvars, cert.saturation_degree);
  auto mults = monomials_of_degree(nvars, cert.saturation_degree - 2);
  cert.target_rank = cols.size();
  const FieldPtr& f = quadrics.empty() ? Field::rationals() : quadrics[0].field();
  Matrix mac(f, mults.size() * quadrics.size(), cols.size());
  std::size_t r = 0;
  for (const auto& q : quadrics)
    for (const auto& m : mults) {
      for (const auto& [qm, qc] : q.terms()) {
        Monomial prod(nvars);
        for (std::size_t v = 0; v < nvars; ++v) prod[v] = qm[v] + m[v];
        auto it = std::lower_bound(cols.begin(), cols.end(), prod);
        mac.at(r, static_cast<std::size_t>(it - cols.begin())) += qc;
      }
      ++r;
    }
  cert.achieved_rank = mac.rank();
  cert.empty = cert.achieved_rank == cert.target_rank;
  return cert;
}

}  // namespace skewrank
