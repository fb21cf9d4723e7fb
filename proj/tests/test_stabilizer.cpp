#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skewrank/normal_forms.hpp"
#include "skewrank/stabilizer.hpp"

using namespace skewrank;
using namespace skewrank::normal_forms;

namespace {

Matrix random_gl(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-3, 3);
  for (;;) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = f->from_int(d(rng));
    if (!m.det().is_zero()) return m;
  }
}

Matrix vectorize(const std::vector<Matrix>& ms) {
  const FieldPtr& f = ms[0].field();
  std::size_t n = ms[0].rows();
  Matrix out(f, ms.size(), n * n);
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.at(k, i * n + j) = ms[k].at(i, j);
  return out;
}

bool same_matrix_span(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  Matrix va = vectorize(a), vb = vectorize(b);
  std::size_t ra = va.rank(), rb = vb.rank();
  return ra == rb && Matrix::vstack(va, vb).rank() == ra;
}

// stabilizer family of the conic-type plane, 10 parameters
Matrix conic_family(const FieldPtr& f, const std::vector<long>& p) {
  // p = (x, y, z, u, v, pp, q, r, s, t)
  auto c = [&](std::size_t i) { return f->from_int(p[i]); };
  Matrix m(f, 6, 6);
  std::vector<std::vector<long>> zero;
  // row 0: x+u, z, pp, q, r, s
  m.at(0, 0) = c(0) + c(3);
  m.at(0, 1) = c(2);
  m.at(0, 2) = c(5);
  m.at(0, 3) = c(6);
  m.at(0, 4) = c(7);
  m.at(0, 5) = c(8);
  // row 1: y, v+u, q, r, s, t
  m.at(1, 0) = c(1);
  m.at(1, 1) = c(4) + c(3);
  m.at(1, 2) = c(6);
  m.at(1, 3) = c(7);
  m.at(1, 4) = c(8);
  m.at(1, 5) = c(9);
  // row 2: 0 0 3v -y 0 0
  m.at(2, 2) = f->from_int(3) * c(4);
  m.at(2, 3) = -c(1);
  // row 3: 0 0 -3z x+2v -2y 0
  m.at(3, 2) = f->from_int(-3) * c(2);
  m.at(3, 3) = c(0) + f->from_int(2) * c(4);
  m.at(3, 4) = f->from_int(-2) * c(1);
  // row 4: 0 0 0 -2z 2x+v -3y
  m.at(4, 3) = f->from_int(-2) * c(2);
  m.at(4, 4) = f->from_int(2) * c(0) + c(4);
  m.at(4, 5) = f->from_int(-3) * c(1);
  // row 5: 0 0 0 0 -z 3x
  m.at(5, 4) = -c(2);
  m.at(5, 5) = f->from_int(3) * c(0);
  return m;
}

// stabilizer family of the pencil-type plane; free parameters are
// u00,u10,u20,u30,u40,u50,u11,u21,u12,u22 and the diagonal tail is
// determined by the three dependence relations
Matrix pencil_family(const FieldPtr& f, const std::vector<long>& p) {
  auto v = [&](std::size_t i) { return f->from_int(p[i]); };
  Scalar u00 = v(0), u10 = v(1), u20 = v(2), u30 = v(3), u40 = v(4),
         u50 = v(5), u11 = v(6), u21 = v(7), u12 = v(8), u22 = v(9);
  Matrix m(f, 6, 6);
  m.at(0, 0) = u00;
  m.at(0, 1) = u10;
  m.at(0, 2) = u20;
  m.at(0, 3) = u30;
  m.at(0, 4) = u40;
  m.at(0, 5) = u50;
  m.at(1, 1) = u11;
  m.at(1, 2) = u21;
  m.at(1, 3) = u20;
  m.at(1, 5) = u30;
  m.at(2, 1) = u12;
  m.at(2, 2) = u22;
  m.at(2, 3) = -u10;
  m.at(2, 4) = u30;
  m.at(3, 3) = -u00 + u11 + u22;
  m.at(3, 4) = f->from_int(-2) * u20;
  m.at(3, 5) = f->from_int(-2) * u10;
  m.at(4, 4) = f->from_int(-2) * u00 + u11 + f->from_int(2) * u22;
  m.at(4, 5) = u12;
  m.at(5, 4) = u21;
  m.at(5, 5) = f->from_int(-2) * u00 + f->from_int(2) * u11 + u22;
  return m;
}

// sl2-triple family stabilizing the order-5 plane, after the diagonal basis
// rescaling diag(-2,1,3,-1,2)
Matrix order5_family(const FieldPtr& f, long x, long y, long z) {
  Matrix c(f, 5, 5);
  c.at(0, 0) = f->from_int(2 * x);
  c.at(0, 1) = f->from_int(-2 * z);
  c.at(1, 0) = f->from_int(-y);
  c.at(1, 1) = f->from_int(x);
  c.at(1, 2) = f->from_int(z);
  c.at(2, 1) = f->from_int(3 * y);
  c.at(2, 3) = f->from_int(3 * z);
  c.at(3, 2) = f->from_int(y);
  c.at(3, 3) = f->from_int(-x);
  c.at(3, 4) = f->from_int(z);
  c.at(4, 3) = f->from_int(2 * y);
  c.at(4, 4) = f->from_int(-2 * x);
  Matrix d(f, 5, 5);
  long diag[5] = {-2, 1, 3, -1, 2};
  for (std::size_t i = 0; i < 5; ++i) d.at(i, i) = f->from_int(diag[i]);
  return d.inverse() * c * d;
}

}  // namespace

TEST_CASE("stabilizer dimensions match the orbit counts") {
  auto Q = Field::rationals();
  CHECK(stabilizer_algebra(pi_g(Q)).dim() == 10);
  CHECK(stabilizer_algebra(pi_t(Q)).dim() == 10);
  CHECK(stabilizer_algebra(pi_p(Q)).dim() == 10);
  CHECK(stabilizer_algebra(pi_5_in_6(Q)).dim() == 10);
  CHECK(stabilizer_algebra(pi_5(Q)).dim() == 4);

  CHECK(orbit_dimension(pi_g(Q)) == 26);
  CHECK(orbit_dimension(pi_t(Q)) == 26);
  CHECK(orbit_dimension(pi_p(Q)) == 26);
  CHECK(orbit_dimension(pi_5_in_6(Q)) == 26);

  CHECK(stabilizer_algebra(ell_g(Q)).dim() == 14);
  CHECK(orbit_dimension(ell_g(Q)) == 22);
  CHECK(stabilizer_algebra(ell_s(Q)).dim() == 15);
  CHECK(orbit_dimension(ell_s(Q)) == 21);
}

TEST_CASE("membership checks") {
  auto Q = Field::rationals();
  auto pt = pi_t(Q);
  CHECK(check_algebra_membership(pt, Matrix::identity(Q, 6)));
  std::vector<long> e(10, 0);
  e[0] = 1;  // x = 1
  CHECK(check_algebra_membership(pt, conic_family(Q, e)));

  auto pp = pi_p(Q);
  std::vector<long> u = {1, 2, -1, 3, 0, 1, 2, -2, 1, 1};
  Matrix good = pencil_family(Q, u);
  CHECK(check_algebra_membership(pp, good));
  Matrix bad = good;
  bad.at(3, 3) += Q->one();  // violate u33 = -u00 + u11 + u22
  CHECK_FALSE(check_algebra_membership(pp, bad));

  CHECK_THROWS_AS(check_algebra_membership(pp, Matrix::identity(Q, 5)),
                  SizeMismatch);
}

TEST_CASE("computed stabilizers match the displayed families exactly") {
  auto Q = Field::rationals();
  // conic type: both inclusions via span equality on a parameter basis
  std::vector<Matrix> fam_t;
  for (std::size_t i = 0; i < 10; ++i) {
    std::vector<long> e(10, 0);
    e[i] = 1;
    fam_t.push_back(conic_family(Q, e));
  }
  CHECK(same_matrix_span(stabilizer_algebra(pi_t(Q)).basis, fam_t));

  std::vector<Matrix> fam_p;
  for (std::size_t i = 0; i < 10; ++i) {
    std::vector<long> e(10, 0);
    e[i] = 1;
    fam_p.push_back(pencil_family(Q, e));
  }
  CHECK(same_matrix_span(stabilizer_algebra(pi_p(Q)).basis, fam_p));

  // order-5: the traceless part of the computed algebra is the sl2 family
  std::vector<Matrix> fam_5 = {order5_family(Q, 1, 0, 0),
                               order5_family(Q, 0, 1, 0),
                               order5_family(Q, 0, 0, 1)};
  std::vector<Matrix> full = fam_5;
  full.push_back(Matrix::identity(Q, 5));  // scalars stabilize everything
  auto stab5 = stabilizer_algebra(pi_5(Q));
  CHECK(same_matrix_span(stab5.basis, full));
  for (const auto& m : fam_5) CHECK(check_algebra_membership(pi_5(Q), m));
}

TEST_CASE("stabilizers are Lie subalgebras and conjugation-invariant") {
  auto Q = Field::rationals();
  std::mt19937_64 rng(47);
  for (const auto& space : {pi_t(Q), pi_p(Q), pi_g(Q)}) {
    auto stab = stabilizer_algebra(space);
    std::uniform_int_distribution<std::size_t> pick(0, stab.dim() - 1);
    for (int t = 0; t < 10; ++t) {
      const Matrix& x = stab.basis[pick(rng)];
      const Matrix& y = stab.basis[pick(rng)];
      CHECK(check_algebra_membership(space, x * y - y * x));
    }
    for (int t = 0; t < 5; ++t) {
      Matrix g = random_gl(Q, 6, rng);
      CHECK(stabilizer_algebra(space.transform(g)).dim() == stab.dim());
    }
  }
}
