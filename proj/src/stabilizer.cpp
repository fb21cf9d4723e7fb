#include "skewrank/stabilizer.hpp"

#include <algorithm>

namespace skewrank {

StabilizerBasis stabilizer_algebra(const MatrixSubspace& space) {
  const FieldPtr& f = space.field();
  std::size_t n = space.dim();
  std::size_t ncoords = space.generator(0).coords().size();

  // projection along W onto the non-pivot coordinates of its echelon basis
  std::vector<std::size_t> pivots;
  Matrix red = space.coordinate_matrix().rref(&pivots);
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < ncoords; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
      rest.push_back(c);

  auto residual = [&](const std::vector<Scalar>& v) {
    // v minus its W-component, sampled at the non-pivot coordinates
    std::vector<Scalar> out;
    out.reserve(rest.size());
    for (std::size_t c : rest) {
      Scalar s = v[c];
      for (std::size_t r = 0; r < pivots.size(); ++r)
        s -= v[pivots[r]] * red.at(r, c);
      out.push_back(s);
    }
    return out;
  };

  // unknowns: the n^2 entries of X, row-major
  Matrix sys(f, space.k() * rest.size(), n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Matrix e(f, n, n);
      e.at(a, b) = f->one();
      std::size_t row = 0;
      for (const auto& g : space.generators()) {
        auto res = residual(g.act(e).coords());
        for (const Scalar& s : res) sys.at(row++, a * n + b) = s;
      }
    }

  Matrix ker = sys.nullspace();
  StabilizerBasis out;
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    Matrix x(f, n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) x.at(a, b) = ker.at(a * n + b, k);
    out.basis.push_back(std::move(x));
  }
  return out;
}

std::size_t orbit_dimension(const MatrixSubspace& space) {
  std::size_t n = space.dim();
  return n * n - stabilizer_algebra(space).dim();
}

bool check_algebra_membership(const MatrixSubspace& space, const Matrix& x) {
  if (x.rows() != space.dim() || x.cols() != space.dim()) throw SizeMismatch();
  for (const auto& g : space.generators())
    if (!space.contains(g.act(x))) return false;
  return true;
}

}  // namespace skewrank
