#include <array>
#include <optional>

#include "skewrank/classify.hpp"

namespace skewrank {

namespace {

/// Extends the columns of `cols` to a basis by appending standard vectors.
Matrix complete_basis5(const Matrix& cols) {
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

bool supported_on5(const SkewTensor& t,
                   const std::vector<std::pair<std::size_t, std::size_t>>& allowed) {
  for (const auto& [i, j] : pair_basis(t.dim())) {
    bool ok = false;
    for (const auto& [a, b] : allowed)
      if (a == i && b == j) ok = true;
    if (!ok && !t.coord(i, j).is_zero()) return false;
  }
  return true;
}

SkewTensor shape5(const FieldPtr& f,
                  std::initializer_list<std::tuple<std::size_t, std::size_t, long>>
                      terms) {
  SkewTensor t(f, 5);
  for (const auto& [i, j, c] : terms) t.add_term(i, j, f->from_int(c));
  return t;
}

std::vector<Scalar> axpy5(const std::vector<Scalar>& a, const Scalar& s,
                          const std::vector<Scalar>& b) {
  std::vector<Scalar> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + s * b[i];
  return out;
}

std::vector<Scalar> scaled5(const std::vector<Scalar>& a, const Scalar& s) {
  std::vector<Scalar> out = a;
  for (auto& e : out) e = e * s;
  return out;
}

/// The distinguished 2-plane contained in every Gauss hyperplane of the
/// family: intersection of the hyperplanes of enough sampled elements.
Matrix gauss_axis(const MatrixSubspace& plane) {
  const FieldPtr& f = plane.field();
  const std::vector<std::array<long, 3>> combos = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1},
      {0, 1, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {1, 1, 1}};
  std::optional<Matrix> stacked;
  for (const auto& c : combos) {
    std::vector<Scalar> coeffs = {f->from_int(c[0]), f->from_int(c[1]),
                                  f->from_int(c[2])};
    SkewTensor w = plane.combine(coeffs);
    if (w.is_zero()) continue;
    FourTensor g = gauss_map(w);
    if (g.is_zero()) continue;
    stacked = stacked ? Matrix::vstack(*stacked, g.dual_covector())
                      : g.dual_covector();
    if (stacked->rank() == 3) break;
  }
  if (!stacked || stacked->rank() != 3)
    throw InternalError("Gauss hyperplanes do not cut out a plane");
  Matrix axis = stacked->nullspace();
  if (axis.cols() != 2)
    throw InternalError("Gauss axis of unexpected dimension");
  return axis;
}

/// One deterministic pass of the normal-form reduction, for a fixed choice
/// of distinguished generator and of the complement generator that becomes
/// the free direction. Returns nothing when a genericity choice fails or
/// when the resulting parameters miss the constant-rank constraints.
std::optional<Order5Report> reduce_attempt(const MatrixSubspace& plane,
                                           const Matrix& t0,
                                           std::vector<Scalar> ca,
                                           std::vector<Scalar> cb,
                                           std::vector<Scalar> cc) {
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
  auto elementary = [&] { return Matrix::identity(f, 5); };

  // decomposable part of the distinguished generator, transverse to the axis
  SkewTensor wa = cur(ca);
  Matrix psi(f, 3, 3);
  psi.at(0, 1) = wa.coord(2, 3);
  psi.at(0, 2) = wa.coord(2, 4);
  psi.at(1, 2) = wa.coord(3, 4);
  psi.at(1, 0) = -psi.at(0, 1);
  psi.at(2, 0) = -psi.at(0, 2);
  psi.at(2, 1) = -psi.at(1, 2);
  if (psi.is_zero()) return std::nullopt;
  Subspace w = Subspace::span_of_columns(psi);
  if (w.dim() != 2) return std::nullopt;

  auto part0 = [&](const SkewTensor& x) {
    Matrix v(f, 3, 1);
    for (std::size_t j = 0; j < 3; ++j) v.at(j, 0) = x.coord(0, 2 + j);
    return v;
  };
  Matrix sb = part0(cur(cb));
  Matrix sc = part0(cur(cc));
  Matrix smat = Matrix::hstack(sb, sc);
  Subspace s = Subspace::span_of_columns(smat);
  if (s.dim() != 2) return std::nullopt;

  Subspace meet = s.intersect(w);
  if (meet.dim() != 1) return std::nullopt;
  Matrix p3 = meet.basis_columns();

  // p4 with p3 ^ p4 equal to the transverse part
  Matrix sys(f, 3, 3);
  Matrix rhs(f, 3, 1);
  std::size_t row = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j, ++row) {
      sys.at(row, j) = p3.at(i, 0);
      sys.at(row, i) = -p3.at(j, 0);
      rhs.at(row, 0) = psi.at(i, j);
    }
  auto p4 = sys.solve(rhs);
  if (!p4) return std::nullopt;

  auto ab = smat.solve(p3);
  if (!ab) return std::nullopt;
  std::vector<Scalar> cbt = axpy5(scaled5(cb, ab->at(0, 0)), ab->at(1, 0), cc);
  if (Matrix::hstack(p3, sc).rank() != 2) return std::nullopt;
  std::vector<Scalar> cct = cc;
  Matrix p5 = sc;

  Matrix pbasis = Matrix::hstack(Matrix::hstack(p3, *p4), p5);
  if (pbasis.det().is_zero()) return std::nullopt;
  {
    Matrix e = elementary();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) e.at(2 + i, 2 + j) = pbasis.at(i, j);
    apply(e);
  }

  Scalar f5 = cur(cbt).coord(1, 4);
  if (f5.is_zero()) return std::nullopt;

  {  // remove the free-direction pairing from the second complement generator
    Scalar sh = cur(cct).coord(1, 4) / f5;
    cct = axpy5(cct, -sh, cbt);
    Matrix e = elementary();
    e.at(2, 4) = -sh;
    apply(e);
  }
  if (cur(cct).coord(0, 4).is_zero() || !cur(cct).coord(0, 2).is_zero() ||
      !cur(cct).coord(0, 3).is_zero())
    return std::nullopt;
  cct = scaled5(cct, cur(cct).coord(0, 4).inverse());

  {  // normalize the distinguished generator to axis form plus e2^e3
    SkewTensor x = cur(ca);
    Scalar q = -x.coord(0, 4);
    Scalar p = -(x.coord(1, 4) + q * cur(cct).coord(1, 4)) / f5;
    ca = axpy5(axpy5(ca, p, cbt), q, cct);
    x = cur(ca);
    if (!x.coord(0, 4).is_zero() || !x.coord(1, 4).is_zero())
      return std::nullopt;
    Matrix e = elementary();
    e.at(0, 2) = x.coord(0, 3);
    e.at(1, 2) = x.coord(1, 3);
    e.at(0, 3) = -x.coord(0, 2);
    e.at(1, 3) = -x.coord(1, 2);
    apply(e);
    x = cur(ca);
    if (!supported_on5(x, {{0, 1}, {2, 3}})) return std::nullopt;
    Scalar c01 = x.coord(0, 1);
    if (c01.is_zero()) return std::nullopt;
    Matrix d = elementary();
    d.at(3, 3) = c01.inverse();
    apply(d);
    ca = scaled5(ca, c01.inverse());
  }
  if (cur(ca) != shape5(f, {{0, 1, 1}, {2, 3, 1}})) return std::nullopt;

  {  // kill the residual axis pairings of the complement generators
    Scalar kb = cur(cbt).coord(0, 1);
    Scalar kc = cur(cct).coord(0, 1);
    Matrix e = elementary();
    e.at(0, 4) = -kb / f5;
    e.at(1, 4) = kc;
    apply(e);
  }
  if (!cur(cbt).coord(0, 1).is_zero() || !cur(cct).coord(0, 1).is_zero())
    return std::nullopt;

  // branch on the surviving direction of the last generator
  SkewTensor wct = cur(cct);
  Scalar g3 = wct.coord(1, 2);
  Scalar g4 = wct.coord(1, 3);
  Order5Branch branch;
  if (!g4.is_zero()) {
    branch = Order5Branch::GIsE4;
    Matrix e = elementary();
    e.at(2, 3) = g3 / g4;
    apply(e);
    Matrix d = elementary();
    d.at(4, 4) = g4.inverse();
    apply(d);
    cct = scaled5(cct, g4.inverse());
  } else {
    if (g3.is_zero()) return std::nullopt;
    branch = Order5Branch::GIsE3;
    Matrix d = elementary();
    d.at(4, 4) = g3.inverse();
    apply(d);
    cct = scaled5(cct, g3.inverse());
  }

  SkewTensor ra = cur(ca), rb = cur(cbt), rc = cur(cct);
  if (ra != shape5(f, {{0, 1, 1}, {2, 3, 1}})) return std::nullopt;
  if (!supported_on5(rb, {{0, 2}, {1, 2}, {1, 3}, {1, 4}}) ||
      rb.coord(0, 2) != f->one())
    return std::nullopt;
  SkewTensor want_c = branch == Order5Branch::GIsE4
                          ? shape5(f, {{0, 4, 1}, {1, 3, 1}})
                          : shape5(f, {{0, 4, 1}, {1, 2, 1}});
  if (rc != want_c) return std::nullopt;

  std::vector<Scalar> fp = {rb.coord(1, 2), rb.coord(1, 3), rb.coord(1, 4)};
  if (fp[1].is_zero() || fp[2].is_zero()) return std::nullopt;
  if (branch == Order5Branch::GIsE4 && fp[0].is_zero()) return std::nullopt;

  Order5Report rep{{ra, rb, rc}, branch, fp, t};
  if (!MatrixSubspace(5, rep.reduced_generators).transform(t).same_span(plane))
    throw WitnessVerificationFailed();
  return rep;
}

}  // namespace

Order5Report classify_plane_order5(const MatrixSubspace& plane) {
  if (plane.dim() != 5 || plane.k() != 3)
    throw BadDimension("the order-5 reduction takes a plane in dimension 5");
  if (!constant_rank_four(plane).holds) throw ChowIntersection();
  const FieldPtr& f = plane.field();

  Matrix t0 = complete_basis5(gauss_axis(plane));
  Matrix t0inv = t0.inverse();

  // functional splitting the plane: the transverse 2-form components of all
  // generators are proportional, vanishing exactly on the axis-wedge part
  Matrix m(f, 3, 3);
  for (std::size_t g = 0; g < 3; ++g) {
    std::vector<Scalar> unit(3, f->zero());
    unit[g] = f->one();
    SkewTensor w = plane.generator(g).transform(t0inv);
    m.at(0, g) = w.coord(2, 3);
    m.at(1, g) = w.coord(2, 4);
    m.at(2, g) = w.coord(3, 4);
  }
  if (m.rank() != 1)
    throw InternalError("transverse components are not proportional");
  Matrix vrow(f, 1, 3);
  for (std::size_t r = 0; r < 3 && vrow.is_zero(); ++r)
    for (std::size_t g = 0; g < 3; ++g) vrow.at(0, g) = m.at(r, g);
  Matrix ckern = vrow.nullspace();
  if (ckern.cols() != 2)
    throw InternalError("axis-wedge part of the plane is not a line");
  std::vector<Scalar> cb = ckern.col_vector(0);
  std::vector<Scalar> cc = ckern.col_vector(1);

  std::vector<std::pair<std::size_t, std::size_t>> axis_wedge;
  for (std::size_t j = 1; j < 5; ++j) axis_wedge.push_back({0, j});
  for (std::size_t j = 2; j < 5; ++j) axis_wedge.push_back({1, j});
  for (const auto& c : {cb, cc})
    if (!supported_on5(plane.combine(c).transform(t0inv), axis_wedge))
      throw InternalError("complement generator escapes the axis wedge");

  const std::vector<std::array<long, 3>> combos = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1},  {0, 1, 1},
      {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {1, 1, 1}, {1, 2, 0}, {1, 0, 2},
      {2, 1, 1}, {1, 2, 1},  {1, 1, 2},  {1, -1, 1}, {1, 1, -1}, {1, 2, 3}};
  // the two axis directions play different roles in the family, so the
  // search must also vary the axis basis
  const std::vector<std::array<long, 4>> axis_frames = {
      {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1},
      {1, -1, 0, 1}, {1, 0, -1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0},
      {1, 2, 0, 1}, {1, 0, 2, 1}, {1, 1, 1, -1}, {2, 1, 1, 1}};
  for (const auto& af : axis_frames) {
    Matrix e = Matrix::identity(f, 5);
    e.at(0, 0) = f->from_int(af[0]);
    e.at(1, 0) = f->from_int(af[1]);
    e.at(0, 1) = f->from_int(af[2]);
    e.at(1, 1) = f->from_int(af[3]);
    Matrix tg = t0 * e;
    for (const auto& c : combos) {
      std::vector<Scalar> ca = {f->from_int(c[0]), f->from_int(c[1]),
                                f->from_int(c[2])};
      Scalar val = f->zero();
      for (std::size_t g = 0; g < 3; ++g) val = val + vrow.at(0, g) * ca[g];
      if (val.is_zero()) continue;
      if (auto rep = reduce_attempt(plane, tg, ca, cb, cc)) return *rep;
      if (auto rep = reduce_attempt(plane, tg, ca, cc, cb)) return *rep;
    }
  }
  throw InternalError("order-5 reduction exhausted its candidate choices");
}

}  // namespace skewrank
