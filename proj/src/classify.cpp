#include "skewrank/classify.hpp"

#include <algorithm>
#include <array>
#include <iostream>
#include <random>
#include <utility>

#include "skewrank/normal_forms.hpp"

namespace skewrank {

namespace {

// ---------------------------------------------------------------------------
// small linear-algebra helpers
// ---------------------------------------------------------------------------

/// Extends the columns of `cols` to a basis of the ambient space by greedily
/// appending standard basis vectors in index order.
Matrix complete_basis(const Matrix& cols) {
  const FieldPtr& f = cols.field();
  std::size_t n = cols.rows();
  Matrix cur = cols;
  for (std::size_t j = 0; j < n && cur.cols() < n; ++j) {
    Matrix cand(f, n, 1);
    cand.at(j, 0) = f->one();
    Matrix trial = Matrix::hstack(cur, cand);
    if (trial.rank() == cur.cols() + 1) cur = trial;
  }
  if (cur.cols() != n) throw InternalError("basis completion failed");
  return cur;
}

/// True when every coordinate of t outside `allowed` vanishes.
bool supported_on(const SkewTensor& t,
                  const std::vector<std::pair<std::size_t, std::size_t>>& allowed) {
  for (const auto& [i, j] : pair_basis(t.dim())) {
    bool ok = false;
    for (const auto& [a, b] : allowed)
      if (a == i && b == j) ok = true;
    if (!ok && !t.coord(i, j).is_zero()) return false;
  }
  return true;
}

std::vector<Scalar> cross(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Matrix column_of(const FieldPtr& f, const std::vector<Scalar>& v) {
  Matrix m(f, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
  return m;
}

// ---------------------------------------------------------------------------
// dual grid sampling
// ---------------------------------------------------------------------------

struct GeneralLine {
  std::vector<Scalar> lambda;
  std::vector<Scalar> c0, c1;  // plane coefficients of two spanning points
  Subspace pivot;
};

std::vector<std::vector<Scalar>> dual_points(const FieldPtr& f, long radius) {
  std::vector<std::vector<Scalar>> out;
  for (long i = -radius; i <= radius; ++i)
    for (long j = -radius; j <= radius; ++j)
      out.push_back({f->one(), f->from_int(i), f->from_int(j)});
  for (long j = -radius; j <= radius; ++j)
    out.push_back({f->zero(), f->one(), f->from_int(j)});
  out.push_back({f->zero(), f->zero(), f->one()});
  return out;
}

/// Plane coefficients of two points spanning the line with dual covector
/// lambda.
std::pair<std::vector<Scalar>, std::vector<Scalar>> line_coefficients(
    const FieldPtr& f, const std::vector<Scalar>& lambda) {
  Matrix row(f, 1, 3);
  for (std::size_t i = 0; i < 3; ++i) row.at(0, i) = lambda[i];
  Matrix ker = row.nullspace();
  if (ker.cols() != 2) throw InternalError("dual covector with a bad kernel");
  return {ker.col_vector(0), ker.col_vector(1)};
}

MatrixSubspace line_of(const MatrixSubspace& plane, const std::vector<Scalar>& c0,
                       const std::vector<Scalar>& c1) {
  return MatrixSubspace(plane.dim(), {plane.combine(c0), plane.combine(c1)});
}

std::vector<GeneralLine> collect_general_lines(const MatrixSubspace& plane,
                                               long radius) {
  const FieldPtr& f = plane.field();
  std::vector<GeneralLine> out;
  for (const auto& lambda : dual_points(f, radius)) {
    auto [c0, c1] = line_coefficients(f, lambda);
    LineReport rep = classify_line(line_of(plane, c0, c1));
    if (rep.kind == LineKind::General)
      out.push_back({lambda, c0, c1, *rep.pivot});
  }
  return out;
}

// ---------------------------------------------------------------------------
// special-line locus
// ---------------------------------------------------------------------------

using PolyGrid = std::vector<std::vector<HomogPoly>>;

/// The three coordinates of lambda x e_i as linear forms in lambda.
std::array<HomogPoly, 3> cross_generator(const FieldPtr& f, std::size_t i) {
  auto var = [&](std::size_t v, long sign) {
    HomogPoly p(f, 3, 1);
    Monomial m(3, 0);
    m[v] = 1;
    p.add_term(m, f->from_int(sign));
    return p;
  };
  HomogPoly zero(f, 3, 1);
  switch (i) {
    case 0:
      return {zero, var(2, 1), var(1, -1)};
    case 1:
      return {var(2, -1), zero, var(0, 1)};
    default:
      return {var(1, 1), var(0, -1), zero};
  }
}

/// 6x6 grid of linear forms: the matrix of sum_m u_m(lambda) w_m.
PolyGrid poly_tensor(const MatrixSubspace& plane, const std::array<HomogPoly, 3>& u) {
  const FieldPtr& f = plane.field();
  PolyGrid out(6, std::vector<HomogPoly>(6, HomogPoly(f, 3, 1)));
  for (std::size_t m = 0; m < 3; ++m) {
    Matrix gm = plane.generator(m).matrix();
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        out[i][j] = out[i][j] + u[m] * gm.at(i, j);
  }
  return out;
}

/// Pfaffian of the 4x4 skew submatrix of `a` on the given indices.
HomogPoly pfaffian4(const PolyGrid& a, const std::array<std::size_t, 4>& idx) {
  auto [p, q, r, s] = idx;
  return a[p][q] * a[r][s] - a[p][r] * a[q][s] + a[p][s] * a[q][r];
}

/// Pfaffian adjugate of a skew 6x6 grid: complementary 4x4 Pfaffians with
/// alternating signs. For a rank-4 specialization its columns span the
/// kernel.
PolyGrid pfaffian_adjugate(const PolyGrid& a) {
  const FieldPtr& f = a[0][0].field();
  unsigned d = 2 * a[0][0].degree();
  PolyGrid out(6, std::vector<HomogPoly>(6, HomogPoly(f, 3, d)));
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t k = j + 1; k < 6; ++k) {
      std::array<std::size_t, 4> comp{};
      std::size_t c = 0;
      for (std::size_t x = 0; x < 6; ++x)
        if (x != j && x != k) comp[c++] = x;
      HomogPoly pf = pfaffian4(a, comp);
      if ((j + k) % 2 == 1) pf = -pf;
      out[j][k] = pf;
      out[k][j] = -pf;
    }
  return out;
}

PolyGrid poly_mul(const PolyGrid& a, const PolyGrid& b) {
  const FieldPtr& f = a[0][0].field();
  unsigned d = a[0][0].degree() + b[0][0].degree();
  PolyGrid out(6, std::vector<HomogPoly>(6, HomogPoly(f, 3, d)));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k)
        out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

bool poly_divides(const HomogPoly& d, const HomogPoly& p) {
  try {
    exact_div(p, d);
    return true;
  } catch (const InternalError&) {
    return false;
  }
}

/// gcd of the 2x2 minors of T_v(lambda) * adj(T_u(lambda)); vanishes exactly
/// on the special lines plus the coordinate line where u and v coincide.
HomogPoly pairing_gcd(const MatrixSubspace& plane, std::size_t iu, std::size_t iv) {
  const FieldPtr& f = plane.field();
  PolyGrid tu = poly_tensor(plane, cross_generator(f, iu));
  PolyGrid tv = poly_tensor(plane, cross_generator(f, iv));
  PolyGrid m = poly_mul(tv, pfaffian_adjugate(tu));

  HomogPoly g(f, 3, 0);  // zero marker until the first nonzero minor
  bool have = false;
  for (std::size_t r1 = 0; r1 < 6; ++r1)
    for (std::size_t r2 = r1 + 1; r2 < 6; ++r2)
      for (std::size_t c1 = 0; c1 < 6; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < 6; ++c2) {
          HomogPoly minor = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
          if (minor.is_zero()) continue;
          if (!have) {
            g = minor.monic();
            have = true;
            continue;
          }
          if (g.degree() == 0) return g;
          if (!poly_divides(g, minor)) g = poly_gcd(g, minor);
        }
  if (!have) return HomogPoly(f, 3, 0);  // identically rank-deficient
  return g;
}

}  // namespace

SpecialLocus special_locus(const MatrixSubspace& plane) {
  if (plane.dim() != 6 || plane.k() != 3)
    throw BadDimension("the special-line locus needs a plane in dimension 6");
  if (!constant_rank_four(plane).holds) throw NotConstantRank();
  const FieldPtr& f = plane.field();

  Matrix stacked = plane.generator(0).matrix();
  for (std::size_t i = 1; i < 3; ++i)
    stacked = Matrix::vstack(stacked, plane.generator(i).matrix());
  if (stacked.nullspace().cols() > 0) return {LocusKind::All, std::nullopt};

  HomogPoly g1 = pairing_gcd(plane, 0, 1);
  HomogPoly g2 = pairing_gcd(plane, 0, 2);
  if (g1.is_zero() || g2.is_zero())
    throw UnexpectedLocus("degenerate pairing without a common kernel");
  HomogPoly g = squarefree_part(poly_gcd(g1, g2));

  if (g.degree() == 0) return {LocusKind::Empty, std::nullopt};
  if (g.degree() == 1) return {LocusKind::PencilLine, g.monic()};
  if (g.degree() == 2) {
    Matrix s(f, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        Monomial m(3, 0);
        m[i] += 1;
        m[j] += 1;
        Scalar c = g.coefficient(m);
        s.at(i, j) = (i == j) ? c + c : c;  // 2 * quadratic form matrix
      }
    if (s.rank() == 3) return {LocusKind::Conic, g.monic()};
    throw UnexpectedLocus("degenerate quadratic locus");
  }
  throw UnexpectedLocus("locus of unexpected degree");
}

namespace {

// ---------------------------------------------------------------------------
// PlaneG reduction
// ---------------------------------------------------------------------------

MatrixSubspace m_g_model(const FieldPtr& f) {
  using normal_forms::term;
  return MatrixSubspace(
      6, {term(f, 6, 0, 2, 1, 3), term(f, 6, 0, 4, 1, 5), term(f, 6, 2, 5, 3, 4)});
}

MatrixSubspace m_p_model(const FieldPtr& f) {
  using normal_forms::term;
  return MatrixSubspace(
      6, {term(f, 6, 0, 2, 1, 3), term(f, 6, 0, 4, 1, 5), term(f, 6, 0, 1, 3, 5)});
}

struct GSetup {
  Matrix frame;  // columns p0 p1 e2 e3 e4 e5
  Scalar x, y, z;
};

/// The intersection point of two sampled lines, as a plane element.
SkewTensor meeting_point(const MatrixSubspace& plane, const GeneralLine& a,
                         const GeneralLine& b) {
  SkewTensor t = plane.combine(cross(a.lambda, b.lambda));
  if (t.is_zero()) throw InternalError("coincident sampled lines");
  return t;
}

/// Writes the intersection point of two lines with disjoint pivots as a
/// perfect pairing between the pivots, returning the image basis (q-side).
std::pair<Matrix, Matrix> pairing_basis(const SkewTensor& tau, const Subspace& d1,
                                        const Subspace& d2) {
  Matrix pq = Matrix::hstack(d1.basis_columns(), d2.basis_columns());
  Matrix fr = complete_basis(pq);
  SkewTensor th = tau.transform(fr.inverse());
  if (!supported_on(th, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}))
    throw InternalError("meeting point does not pair the two pivots");
  Matrix q0 = d2.basis_columns().col(0);
  Matrix q1 = d2.basis_columns().col(1);
  Matrix ea = q0 * th.coord(0, 2) + q1 * th.coord(0, 3);
  Matrix eb = q0 * th.coord(1, 2) + q1 * th.coord(1, 3);
  return {ea, eb};
}

GSetup g_setup(const MatrixSubspace& plane, const GeneralLine& l1,
               const GeneralLine& l2, const GeneralLine& l3) {
  SkewTensor tau3 = meeting_point(plane, l1, l2);
  SkewTensor tau2 = meeting_point(plane, l1, l3);
  SkewTensor tau1 = meeting_point(plane, l2, l3);

  auto [e2, e3] = pairing_basis(tau3, l1.pivot, l2.pivot);
  auto [e4, e5] = pairing_basis(tau2, l1.pivot, l3.pivot);
  Matrix frame = Matrix::hstack(
      Matrix::hstack(l1.pivot.basis_columns(), Matrix::hstack(e2, e3)),
      Matrix::hstack(e4, e5));
  if (frame.rank() != 6) throw InternalError("pivot triple does not span");

  SkewTensor th = tau1.transform(frame.inverse());
  if (!supported_on(th, {{2, 4}, {2, 5}, {3, 4}, {3, 5}}))
    throw InternalError("third meeting point escapes the pivot pairing");
  Scalar x = th.coord(2, 4), y = th.coord(2, 5), t = th.coord(3, 4),
         z = th.coord(3, 5);
  if (t != y) throw InternalError("asymmetric pairing on a constant-rank plane");
  if ((x * z - y * y).is_zero())
    throw InternalError("singular pairing form on a constant-rank plane");
  return {frame, x, y, z};
}

struct GReduction {
  Matrix t;
  std::vector<Scalar> radicands;
  FieldPtr field;
};

GReduction g_finish(const MatrixSubspace& plane, const GSetup& setup) {
  const FieldPtr& f = plane.field();
  Scalar x = setup.x, y = setup.y, z = setup.z;
  Scalar disc = y * y - x * z;
  Matrix frame = setup.frame;
  FieldPtr wf = f;
  std::vector<Scalar> rads;
  std::optional<Scalar> root = try_sqrt(disc);
  if (!root) {
    wf = adjoin_sqrt(f, disc);
    rads.push_back(disc);
    frame = frame.promote(wf);
    x = x.promote(wf);
    y = y.promote(wf);
    z = z.promote(wf);
    root = try_sqrt(disc.promote(wf));
    if (!root) throw InternalError("adjoined square root is unavailable");
  }
  Scalar s = *root;

  // hyperbolic basis p, q of the 2x2 symmetric pairing [[x,y],[y,z]]
  Matrix c(wf, 2, 2);
  if (!x.is_zero()) {
    Scalar scale = (wf->from_int(-2) * x * (y * y - x * z)).inverse();
    c.at(0, 0) = -y + s;
    c.at(1, 0) = x;
    c.at(0, 1) = (-y - s) * scale;
    c.at(1, 1) = x * scale;
  } else {
    c.at(0, 0) = wf->one();
    c.at(1, 0) = wf->zero();
    Scalar inv2y2 = (wf->from_int(2) * y * y).inverse();
    c.at(0, 1) = -z * inv2y2;
    c.at(1, 1) = y.inverse();
  }
  Matrix sym(wf, 2, 2);
  sym.at(0, 0) = x;
  sym.at(0, 1) = y;
  sym.at(1, 0) = y;
  sym.at(1, 1) = z;
  Matrix hyp(wf, 2, 2);
  hyp.at(0, 1) = wf->one();
  hyp.at(1, 0) = wf->one();
  if (c.transpose() * sym * c != hyp)
    throw InternalError("hyperbolic normalization failed");

  Matrix cit = c.inverse().transpose();
  Matrix b01 = Matrix::hstack(frame.col(0), frame.col(1)) * c;
  Matrix b23 = Matrix::hstack(frame.col(2), frame.col(3)) * cit;
  Matrix b45 = Matrix::hstack(frame.col(4), frame.col(5)) * cit;
  Matrix t = Matrix::hstack(Matrix::hstack(b01, b23), b45);

  if (!m_g_model(wf).transform(t).same_span(plane.promote(wf)))
    throw WitnessVerificationFailed();
  return {t, rads, wf};
}

bool triple_spans(const GeneralLine& a, const GeneralLine& b, const GeneralLine& c) {
  if (a.pivot.intersect(b.pivot).dim() != 0) return false;
  if (a.pivot.intersect(c.pivot).dim() != 0) return false;
  if (b.pivot.intersect(c.pivot).dim() != 0) return false;
  return a.pivot.sum(b.pivot).sum(c.pivot).dim() == 6;
}

/// Full PlaneG reduction: deterministic triple selection preferring a
/// square discriminant, then the hyperbolic normalization.
std::optional<GReduction> reduce_plane_g(const MatrixSubspace& plane,
                                         const std::vector<GeneralLine>& lines) {
  constexpr std::size_t kTripleBudget = 60;
  std::optional<GSetup> fallback;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < lines.size() && seen < kTripleBudget; ++i)
    for (std::size_t j = i + 1; j < lines.size() && seen < kTripleBudget; ++j)
      for (std::size_t k = j + 1; k < lines.size() && seen < kTripleBudget; ++k) {
        if (!triple_spans(lines[i], lines[j], lines[k])) continue;
        ++seen;
        GSetup setup = g_setup(plane, lines[i], lines[j], lines[k]);
        if (try_sqrt(setup.y * setup.y - setup.x * setup.z))
          return g_finish(plane, setup);
        if (!fallback) fallback = setup;
      }
  if (fallback) return g_finish(plane, *fallback);
  return std::nullopt;
}

GReduction compute_g_reference(const FieldPtr& f) {
  auto plane = normal_forms::pi_g(f);
  auto lines = collect_general_lines(plane, 2);
  auto red = reduce_plane_g(plane, lines);
  if (!red) throw InternalError("reference reduction found no spanning triple");
  if (!red->radicands.empty())
    throw InternalError("reference reduction needed a field extension");
  return *red;
}

/// Reference frame reducing the canonical general-type plane; cached over
/// the rationals, recomputed for other ground fields.
GReduction g_reference(const FieldPtr& f) {
  if (f->kind() == FieldKind::Rationals) {
    static const GReduction ref = compute_g_reference(Field::rationals());
    return ref;
  }
  return compute_g_reference(f);
}

// ---------------------------------------------------------------------------
// PlaneT reduction
// ---------------------------------------------------------------------------

Matrix lift4(const FieldPtr& f, const Matrix& v, const Matrix& head) {
  // head is a 6x1 multiple of e0/e1 terms already accounted by the caller
  Matrix out(f, 6, 1);
  for (std::size_t i = 0; i < 4; ++i) out.at(2 + i, 0) = v.at(i, 0);
  return out + head;
}

Matrix reduce_plane_t(const MatrixSubspace& plane, const Subspace& pivot) {
  const FieldPtr& f = plane.field();
  Matrix frame0 = complete_basis(pivot.basis_columns());
  Matrix q = frame0.inverse();

  std::vector<Scalar> xs;
  Matrix f4(f, 4, 3), g4(f, 4, 3);
  std::vector<std::pair<std::size_t, std::size_t>> allowed;
  for (std::size_t j = 1; j < 6; ++j) allowed.push_back({0, j});
  for (std::size_t j = 2; j < 6; ++j) allowed.push_back({1, j});
  for (std::size_t i = 0; i < 3; ++i) {
    SkewTensor w = plane.generator(i).transform(q);
    if (!supported_on(w, allowed))
      throw InternalError("generator escapes the constant pivot");
    xs.push_back(w.coord(0, 1));
    for (std::size_t j = 0; j < 4; ++j) {
      f4.at(j, i) = w.coord(0, 2 + j);
      g4.at(j, i) = w.coord(1, 2 + j);
    }
  }
  Subspace fs = Subspace::span_of_columns(f4);
  Subspace gs = Subspace::span_of_columns(g4);
  if (fs.dim() != 3 || gs.dim() != 3)
    throw InternalError("degenerate row spaces in the constant-pivot reduction");
  Subspace inter = fs.intersect(gs);
  if (inter.dim() != 2)
    throw InternalError("row spaces meet in the wrong dimension");

  // v in inter with u(v) in inter, u the shift map f_i -> g_i
  Matrix normals = inter.basis_columns().transpose().nullspace().transpose();
  Matrix sys = Matrix::vstack(normals * f4, normals * g4);
  Matrix ker = sys.nullspace();
  if (ker.cols() != 1) throw InternalError("shift map has a bad fixed flag");
  Matrix e3b = f4 * ker;
  Matrix e4b = g4 * ker;
  if (Matrix::hstack(e3b, e4b).rank() != 2)
    throw InternalError("degenerate flag vectors");

  auto c2 = g4.solve(e3b);
  if (!c2) throw InternalError("shift map preimage missing");
  Matrix e2b = f4 * *c2;
  auto c3 = f4.solve(e4b);
  if (!c3) throw InternalError("shift map image escapes the row space");
  Matrix e5b = g4 * *c3;

  Matrix tail = Matrix::hstack(Matrix::hstack(e2b, e3b), Matrix::hstack(e4b, e5b));
  if (tail.rank() != 4) throw InternalError("flag completion is singular");

  auto xof = [&](const Matrix& c) {
    Scalar s = f->zero();
    for (std::size_t i = 0; i < 3; ++i) s = s + c.at(i, 0) * xs[i];
    return s;
  };
  Scalar xa = xof(*c2), xb = xof(ker), xc = xof(*c3);

  Matrix e0(f, 6, 1), e1(f, 6, 1);
  e0.at(0, 0) = f->one();
  e1.at(1, 0) = f->one();
  Matrix t1 = Matrix::hstack(
      Matrix::hstack(Matrix::hstack(e0, e1), Matrix::hstack(lift4(f, e2b, e0 * f->zero()),
                                                            lift4(f, e3b, -(e0 * xa)))),
      Matrix::hstack(lift4(f, e4b, -(e0 * xb)), lift4(f, e5b, -(e0 * xc))));
  Matrix t = frame0 * t1;
  if (!normal_forms::pi_t(f).transform(t).same_span(plane))
    throw WitnessVerificationFailed();
  return t;
}

// ---------------------------------------------------------------------------
// PlaneP reduction
// ---------------------------------------------------------------------------

SkewTensor shape(const FieldPtr& f, std::size_t dim,
                 std::initializer_list<std::tuple<std::size_t, std::size_t, long>>
                     terms) {
  SkewTensor t(f, dim);
  for (const auto& [i, j, c] : terms) t.add_term(i, j, f->from_int(c));
  return t;
}

std::vector<Scalar> axpy(const std::vector<Scalar>& a, const Scalar& s,
                         const std::vector<Scalar>& b) {
  std::vector<Scalar> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + s * b[i];
  return out;
}

std::vector<Scalar> scaled(const std::vector<Scalar>& a, const Scalar& s) {
  std::vector<Scalar> out = a;
  for (auto& e : out) e = e * s;
  return out;
}

/// One attempt at the pencil-type reduction, for a fixed pair of auxiliary
/// lines through the two normalized points of the main line. Returns the
/// frame on success, nothing when a genericity choice fails.
std::optional<Matrix> p_attempt(const MatrixSubspace& plane, const Matrix& t0,
                                std::vector<Scalar> c1, std::vector<Scalar> c2,
                                const std::vector<Scalar>& crho,
                                const std::pair<long, long>& cand1,
                                const std::pair<long, long>& cand2) {
  const FieldPtr& f = plane.field();
  Matrix t = t0;
  Matrix tinv = t.inverse();
  auto cur = [&](const std::vector<Scalar>& c) {
    return plane.combine(c).transform(tinv);
  };
  auto apply = [&](const Matrix& e) {
    t = t * e;
    tinv = t.inverse();
  };
  auto elementary = [&] { return Matrix::identity(f, 6); };

  // auxiliary line through a point of the main line: classify, demand a
  // general line whose pivot adds the expected flag direction
  auto aux_pivot = [&](const std::vector<Scalar>& base,
                       const std::vector<Scalar>& tau,
                       std::size_t flag) -> std::optional<std::pair<Scalar, Scalar>> {
    LineReport rep = classify_line(line_of(plane, base, tau));
    if (rep.kind != LineKind::General) return std::nullopt;
    if (!rep.pivot->contains(t.col(0))) return std::nullopt;
    Matrix bc = tinv * rep.pivot->basis_columns();
    // direction of the pivot transverse to the common point e0
    Matrix w = bc.col(0) * bc.at(0, 1) - bc.col(1) * bc.at(0, 0);
    if (w.is_zero()) return std::nullopt;
    for (std::size_t r = 1; r < 6; ++r)
      if (r != 1 && r != flag && !w.at(r, 0).is_zero()) return std::nullopt;
    if (w.at(flag, 0).is_zero()) return std::nullopt;
    return std::make_pair(w.at(1, 0), w.at(flag, 0));
  };

  std::vector<Scalar> tau1 = axpy(scaled(c2, f->from_int(cand1.first)),
                                  f->from_int(cand1.second), crho);
  auto ab1 = aux_pivot(c1, tau1, 3);
  if (!ab1) return std::nullopt;
  std::vector<Scalar> tau2 = axpy(scaled(c1, f->from_int(cand2.first)),
                                  f->from_int(cand2.second), crho);
  auto ab2 = aux_pivot(c2, tau2, 5);
  if (!ab2) return std::nullopt;

  {  // send the first auxiliary pivot to <e0, e3>
    auto [alpha, beta] = *ab1;
    Matrix e = elementary();
    e.at(1, 3) = alpha;
    e.at(3, 3) = beta;
    e.at(2, 2) = beta;
    apply(e);
    c1 = scaled(c1, beta);
    if (cur(c1) != shape(f, 6, {{0, 2, 1}, {1, 3, 1}})) return std::nullopt;
  }
  {  // and the second one to <e0, e5>
    auto [alpha, beta] = *ab2;
    Matrix e = elementary();
    e.at(1, 5) = alpha;
    e.at(5, 5) = beta;
    e.at(4, 4) = beta;
    apply(e);
    c2 = scaled(c2, beta);
    if (cur(c2) != shape(f, 6, {{0, 4, 1}, {1, 5, 1}})) return std::nullopt;
  }

  // meeting point of the two auxiliary lines
  Subspace s1 = Subspace::span_of_columns(
      Matrix::hstack(column_of(f, c1), column_of(f, tau1)));
  Subspace s2 = Subspace::span_of_columns(
      Matrix::hstack(column_of(f, c2), column_of(f, tau2)));
  Subspace meet = s1.intersect(s2);
  if (meet.dim() != 1) return std::nullopt;
  std::vector<Scalar> c3 = meet.basis_columns().col_vector(0);

  SkewTensor w3 = cur(c3);
  if (!supported_on(w3, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {3, 5}}))
    return std::nullopt;
  Scalar c35 = w3.coord(3, 5);
  if (c35.is_zero()) return std::nullopt;
  c3 = scaled(c3, c35.inverse());
  w3 = cur(c3);
  c3 = axpy(axpy(c3, -w3.coord(0, 2), c1), -w3.coord(0, 4), c2);
  w3 = cur(c3);
  if (!supported_on(w3, {{0, 1}, {0, 3}, {0, 5}, {1, 3}, {1, 5}, {3, 5}}))
    return std::nullopt;
  Scalar h1 = w3.coord(0, 1);
  if (h1.is_zero()) return std::nullopt;

  {  // absorb the e0-pairing direction into a new e1
    Matrix e = elementary();
    e.at(1, 1) = h1;
    e.at(3, 1) = w3.coord(0, 3);
    e.at(5, 1) = w3.coord(0, 5);
    apply(e);
  }
  w3 = cur(c3);
  if (!supported_on(w3, {{0, 1}, {1, 3}, {1, 5}, {3, 5}})) return std::nullopt;
  if (w3.coord(0, 1) != f->one()) return std::nullopt;

  // decompose the residual 2-form on <e1, e3, e5>
  Matrix a3(f, 3, 3);
  a3.at(0, 1) = w3.coord(1, 3);
  a3.at(0, 2) = w3.coord(1, 5);
  a3.at(1, 2) = w3.coord(3, 5);
  a3.at(1, 0) = -a3.at(0, 1);
  a3.at(2, 0) = -a3.at(0, 2);
  a3.at(2, 1) = -a3.at(1, 2);
  Matrix k3 = a3.nullspace();
  if (k3.cols() != 1) return std::nullopt;
  if (k3.at(0, 0).is_zero()) return std::nullopt;  // e1 sits on the support plane
  Matrix w1(f, 3, 1), w2(f, 3, 1);
  bool got1 = false, got2 = false;
  for (std::size_t j = 0; j < 3 && !got2; ++j) {
    Matrix col = a3.col(j);
    if (col.is_zero()) continue;
    if (!got1) {
      w1 = col;
      got1 = true;
    } else if (Matrix::hstack(w1, col).rank() == 2) {
      w2 = col;
      got2 = true;
    }
  }
  if (!got2) return std::nullopt;
  Scalar mu = f->zero();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Scalar det = w1.at(i, 0) * w2.at(j, 0) - w1.at(j, 0) * w2.at(i, 0);
      if (!det.is_zero()) {
        mu = a3.at(i, j) / det;
        i = 3;
        break;
      }
    }
  Matrix u3 = w1 * mu;
  {
    Matrix e = elementary();
    std::size_t rows[3] = {1, 3, 5};
    for (std::size_t i = 0; i < 3; ++i) {
      e.at(rows[i], 3) = u3.at(i, 0);
      e.at(rows[i], 5) = w2.at(i, 0);
    }
    if (e.det().is_zero()) return std::nullopt;
    apply(e);
  }
  if (cur(c3) != shape(f, 6, {{0, 1, 1}, {3, 5, 1}})) return std::nullopt;

  // strip the e3^e5 components off the first two generators
  SkewTensor wa = cur(c1), wb = cur(c2);
  if (!supported_on(wa, {{0, 2}, {1, 3}, {1, 5}, {3, 5}})) return std::nullopt;
  if (!supported_on(wb, {{0, 4}, {1, 3}, {1, 5}, {3, 5}})) return std::nullopt;
  {
    Scalar m1 = wa.coord(3, 5), m2 = wb.coord(3, 5);
    c1 = axpy(c1, -m1, c3);
    c2 = axpy(c2, -m2, c3);
    Matrix e = elementary();
    e.at(1, 2) = -m1;
    e.at(1, 4) = -m2;
    apply(e);
  }
  wa = cur(c1);
  wb = cur(c2);
  Scalar ka = wa.coord(1, 3), kb = wa.coord(1, 5);
  Scalar kc = wb.coord(1, 3), kd = wb.coord(1, 5);
  Scalar det = ka * kd - kb * kc;
  if (det.is_zero()) return std::nullopt;
  {
    Matrix e = elementary();
    e.at(3, 3) = ka;
    e.at(5, 3) = kb;
    e.at(3, 5) = kc;
    e.at(5, 5) = kd;
    apply(e);
  }
  {
    Matrix e = elementary();
    e.at(1, 1) = det;
    e.at(2, 2) = det;
    e.at(4, 4) = det;
    apply(e);
    c1 = scaled(c1, det);
    c2 = scaled(c2, det);
    c3 = scaled(c3, det);
  }

  if (cur(c1) != shape(f, 6, {{0, 2, 1}, {1, 3, 1}})) return std::nullopt;
  if (cur(c2) != shape(f, 6, {{0, 4, 1}, {1, 5, 1}})) return std::nullopt;
  if (cur(c3) != shape(f, 6, {{0, 1, 1}, {3, 5, 1}})) return std::nullopt;
  Matrix coeffs = Matrix::hstack(Matrix::hstack(column_of(f, c1), column_of(f, c2)),
                                 column_of(f, c3));
  if (coeffs.rank() != 3) return std::nullopt;
  return t;
}

Matrix reduce_plane_p(const MatrixSubspace& plane,
                      const std::vector<GeneralLine>& lines, const Matrix& point) {
  const FieldPtr& f = plane.field();
  const GeneralLine& main = lines[0];

  // frame from the common point, the rest of the main pivot, and the
  // two normalized spanning tensors of the main line
  Matrix e1(f, 6, 1);
  bool have_e1 = false;
  for (std::size_t j = 0; j < 2 && !have_e1; ++j) {
    Matrix cand = main.pivot.basis_columns().col(j);
    if (Matrix::hstack(point, cand).rank() == 2) {
      e1 = cand;
      have_e1 = true;
    }
  }
  if (!have_e1) throw InternalError("main pivot misses the common point");
  Matrix base = complete_basis(Matrix::hstack(point, e1));
  Matrix binv = base.inverse();

  std::vector<std::pair<std::size_t, std::size_t>> dwedge;
  for (std::size_t j = 1; j < 6; ++j) dwedge.push_back({0, j});
  for (std::size_t j = 2; j < 6; ++j) dwedge.push_back({1, j});
  SkewTensor wa = plane.combine(main.c0).transform(binv);
  SkewTensor wb = plane.combine(main.c1).transform(binv);
  if (!supported_on(wa, dwedge) || !supported_on(wb, dwedge))
    throw InternalError("main line escapes its pivot wedge");

  Matrix fva(f, 6, 1), gva(f, 6, 1), fvb(f, 6, 1), gvb(f, 6, 1);
  for (std::size_t j = 2; j < 6; ++j) {
    fva.at(j, 0) = wa.coord(0, j);
    gva.at(j, 0) = wa.coord(1, j);
    fvb.at(j, 0) = wb.coord(0, j);
    gvb.at(j, 0) = wb.coord(1, j);
  }
  fva.at(1, 0) = wa.coord(0, 1);
  fvb.at(1, 0) = wb.coord(0, 1);
  Matrix tail = Matrix::hstack(Matrix::hstack(fva, gva), Matrix::hstack(fvb, gvb));
  if (tail.rank() != 4)
    throw InternalError("main line spans a degenerate image frame");

  Matrix e0(f, 6, 1), e1u(f, 6, 1);
  e0.at(0, 0) = f->one();
  e1u.at(1, 0) = f->one();
  Matrix t1 = Matrix::hstack(Matrix::hstack(Matrix::hstack(e0, e1u), tail.col(0)),
                             Matrix::hstack(Matrix::hstack(tail.col(1), tail.col(2)),
                                            tail.col(3)));
  Matrix t0 = base * t1;

  // third coefficient direction completing the main line
  Matrix cw = column_of(f, main.c0);
  Matrix cwp = column_of(f, main.c1);
  std::vector<Scalar> crho;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<Scalar> unit(3, f->zero());
    unit[i] = f->one();
    if (Matrix::hstack(Matrix::hstack(cw, cwp), column_of(f, unit)).rank() == 3) {
      crho = unit;
      break;
    }
  }
  if (crho.empty()) throw InternalError("no third direction in the plane");

  const std::vector<std::pair<long, long>> candidates = {
      {1, 1}, {1, -1}, {1, 2}, {2, 1},  {1, -2}, {-1, 2},
      {1, 3}, {3, 1},  {0, 1}, {1, 4},  {4, 1},  {2, 3}};
  for (const auto& cand1 : candidates)
    for (const auto& cand2 : candidates)
      if (auto t = p_attempt(plane, t0, main.c0, main.c1, crho, cand1, cand2))
        return *t;
  throw InternalError("pencil-type reduction exhausted its line candidates");
}

Matrix compute_p_reference(const FieldPtr& f) {
  auto plane = normal_forms::pi_p(f);
  auto lines = collect_general_lines(plane, 2);
  if (lines.empty()) throw InternalError("no general lines on the reference");
  Subspace common = lines[0].pivot;
  for (const auto& l : lines) common = common.intersect(l.pivot);
  if (common.dim() != 1)
    throw InternalError("reference pivots miss a common point");
  return reduce_plane_p(plane, lines, common.basis_columns());
}

Matrix p_reference(const FieldPtr& f) {
  if (f->kind() == FieldKind::Rationals) {
    static const Matrix ref = compute_p_reference(Field::rationals());
    return ref;
  }
  return compute_p_reference(f);
}

// ---------------------------------------------------------------------------
// Plane5 restriction
// ---------------------------------------------------------------------------

OrbitReport classify_degenerate(const MatrixSubspace& plane, const Matrix& kernel) {
  const FieldPtr& f = plane.field();
  if (kernel.cols() != 1)
    throw InternalError("constant kernel of unexpected dimension");
  Subspace h = kernel_image(plane.generator(0)).second;
  for (std::size_t i = 1; i < 3; ++i)
    h = h.sum(kernel_image(plane.generator(i)).second);
  if (h.dim() != 5) throw InternalError("image span of unexpected dimension");

  Matrix t6 = complete_basis(h.basis_columns());
  Matrix t6i = t6.inverse();
  std::vector<SkewTensor> restricted;
  for (const auto& g : plane.generators()) {
    SkewTensor w = g.transform(t6i);
    SkewTensor r(f, 5);
    for (const auto& [i, j] : pair_basis(6)) {
      if (j == 5) {
        if (!w.coord(i, j).is_zero())
          throw InternalError("restricted tensor escapes the hyperplane");
        continue;
      }
      r.add_term(i, j, w.coord(i, j));
    }
    restricted.push_back(r);
  }
  OrbitReport rep;
  rep.label = PlaneLabel::Plane5;
  rep.hyperplane_witness = h;
  rep.field = f;
  rep.restricted = classify_plane_order5(MatrixSubspace(5, restricted));
  return rep;
}

}  // namespace

std::string label_name(PlaneLabel label) {
  switch (label) {
    case PlaneLabel::PlaneG:
      return "PlaneG";
    case PlaneLabel::PlaneT:
      return "PlaneT";
    case PlaneLabel::PlaneP:
      return "PlaneP";
    default:
      return "Plane5";
  }
}

MatrixSubspace canonical_form(PlaneLabel label, const FieldPtr& f) {
  switch (label) {
    case PlaneLabel::PlaneG:
      return normal_forms::pi_g(f);
    case PlaneLabel::PlaneT:
      return normal_forms::pi_t(f);
    case PlaneLabel::PlaneP:
      return normal_forms::pi_p(f);
    default:
      return normal_forms::pi_5_in_6(f);
  }
}

OrbitReport classify_plane(const MatrixSubspace& plane) {
  if (plane.dim() != 6 || plane.k() != 3)
    throw BadDimension("classification needs a plane in dimension 6");
  if (!constant_rank_four(plane).holds) throw NotConstantRank();
  const FieldPtr& f = plane.field();

  Matrix stacked = plane.generator(0).matrix();
  for (std::size_t i = 1; i < 3; ++i)
    stacked = Matrix::vstack(stacked, plane.generator(i).matrix());
  Matrix kernel = stacked.nullspace();
  if (kernel.cols() > 0) return classify_degenerate(plane, kernel);

  for (long radius = 2; radius <= 3; ++radius) {
    if (radius > 2)
      std::cerr << "note: extending the dual sampling grid to radius " << radius
                << "\n";
    auto lines = collect_general_lines(plane, radius);
    if (lines.size() < 3) continue;

    if (auto red = reduce_plane_g(plane, lines)) {
      GReduction ref = g_reference(f);
      Matrix witness = red->t * ref.t.promote(red->field).inverse();
      OrbitReport rep;
      rep.label = PlaneLabel::PlaneG;
      rep.witness = witness;
      rep.extension_radicands = red->radicands;
      rep.field = red->field;
      if (!verify_witness(rep, plane)) throw WitnessVerificationFailed();
      return rep;
    }

    bool constant_pivot = true;
    for (const auto& l : lines)
      if (!l.pivot.equals(lines[0].pivot)) constant_pivot = false;
    if (constant_pivot) {
      OrbitReport rep;
      rep.label = PlaneLabel::PlaneT;
      rep.witness = reduce_plane_t(plane, lines[0].pivot);
      rep.field = f;
      if (!verify_witness(rep, plane)) throw WitnessVerificationFailed();
      return rep;
    }

    Subspace common = lines[0].pivot;
    for (const auto& l : lines) common = common.intersect(l.pivot);
    if (common.dim() == 1) {
      Matrix t = reduce_plane_p(plane, lines, common.basis_columns());
      Matrix witness = t * p_reference(f).inverse();
      OrbitReport rep;
      rep.label = PlaneLabel::PlaneP;
      rep.witness = witness;
      rep.field = f;
      if (!verify_witness(rep, plane)) throw WitnessVerificationFailed();
      return rep;
    }
    // pivots in unclear position: widen the grid and retry
  }
  throw InternalError("sampled pivots fit no branch of the classification");
}

bool verify_witness(const OrbitReport& report, const MatrixSubspace& plane) {
  if (report.label == PlaneLabel::Plane5) {
    if (!report.hyperplane_witness) throw MissingWitness();
    const Subspace& h = *report.hyperplane_witness;
    if (h.dim() != 5) return false;
    Matrix normal = h.basis_columns().transpose().nullspace();
    if (normal.cols() != 1) return false;
    for (const auto& g : plane.generators())
      if (!(g.matrix() * normal).is_zero()) return false;
    return true;
  }
  if (!report.witness) throw MissingWitness();
  MatrixSubspace canon = canonical_form(report.label, report.field);
  MatrixSubspace target =
      plane.field()->same(*report.field) ? plane : plane.promote(report.field);
  return canon.transform(*report.witness).same_span(target);
}

MatrixSubspace random_plane(PlaneLabel label, std::uint64_t seed) {
  FieldPtr f = Field::rationals();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-3, 3);
  for (;;) {
    Matrix g(f, 6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) g.at(i, j) = f->from_int(d(rng));
    if (g.det().is_zero()) continue;
    return canonical_form(label, f).transform(g);
  }
}

bool no_constant_rank_3space(const MatrixSubspace& space) {
  if (space.dim() != 6 || space.k() != 4)
    throw BadDimension("the nonexistence check takes four generators");
  return constant_rank_four(space).holds;
}

}  // namespace skewrank
