#include "skewrank/bundle.hpp"

namespace skewrank {

namespace {

/// Dimension of homogeneous degree-d polynomial kernel sections of the
/// pencil s A + t B, via the block-convolution nullspace.
std::size_t pencil_solutions(const Matrix& a, const Matrix& b, std::size_t d) {
  const FieldPtr& f = a.field();
  std::size_t n = a.rows();
  // unknowns: d+1 coefficient vectors; equations: d+2 output degrees
  Matrix sys(f, n * (d + 2), n * (d + 1));
  for (std::size_t blk = 0; blk <= d; ++blk)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // s * (coefficient of s^blk) feeds output block blk+1,
        // t * (same coefficient) feeds output block blk
        sys.at(n * (blk + 1) + i, n * blk + j) += a.at(i, j);
        sys.at(n * blk + i, n * blk + j) += b.at(i, j);
      }
  return sys.nullspace().cols();
}

}  // namespace

std::pair<std::size_t, std::size_t> minimal_indices_line(const MatrixSubspace& line) {
  if (line.k() != 2) throw BadDimension("minimal indices need a 2-generator span");
  if (!constant_rank_four(line).holds) throw NotConstantRank();
  Matrix a = line.generator(0).matrix();
  Matrix b = line.generator(1).matrix();
  std::size_t n0 = pencil_solutions(a, b, 0);
  if (n0 > 1)
    throw InternalError("constant-rank-4 pencil with a 2-dimensional constant kernel");
  std::size_t d1 = (n0 == 1) ? 0 : 1;
  std::size_t d2 = 2 - d1;
  // consistency: the degree-d solution counts must match sum_i (d - e_i + 1)
  std::size_t n1 = pencil_solutions(a, b, 1);
  std::size_t n2 = pencil_solutions(a, b, 2);
  auto expect = [&](std::size_t d) {
    std::size_t s = 0;
    if (d >= d1) s += d - d1 + 1;
    if (d >= d2) s += d - d2 + 1;
    return s;
  };
  if (n1 != expect(1) || n2 != expect(2))
    throw InternalError("pencil kernel dimensions do not match minimal indices");
  return {d1, d2};
}

BundleFingerprint plane_kernel_fingerprint(const MatrixSubspace& plane) {
  if (!constant_rank_four(plane).holds) throw NotConstantRank();
  const FieldPtr& f = plane.field();
  std::size_t n = plane.dim();
  std::size_t k = plane.k();

  BundleFingerprint fp;
  Matrix stacked = plane.generator(0).matrix();
  for (std::size_t i = 1; i < k; ++i)
    stacked = Matrix::vstack(stacked, plane.generator(i).matrix());
  fp.degree0_kernel_dim = stacked.nullspace().cols();

  // linear sections v(x) = sum_j v_j x_j with M(x) v(x) = 0: one n-row
  // block of equations per monomial x_i x_j
  std::vector<std::pair<std::size_t, std::size_t>> mons;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) mons.emplace_back(i, j);
  Matrix sys(f, n * mons.size(), n * k);
  for (std::size_t m = 0; m < mons.size(); ++m) {
    auto [i, j] = mons[m];
    Matrix mi = plane.generator(i).matrix();
    Matrix mj = plane.generator(j).matrix();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        sys.at(n * m + r, n * j + c) += mi.at(r, c);
        if (i != j) sys.at(n * m + r, n * i + c) += mj.at(r, c);
      }
  }
  std::size_t total = sys.nullspace().cols();
  // discard products of constant kernel vectors with the k linear forms
  fp.degree1_kernel_dim = total - k * fp.degree0_kernel_dim;
  return fp;
}

Subspace image_fiber_check(const MatrixSubspace& plane,
                           const std::vector<Scalar>& coeffs) {
  bool all_zero = true;
  for (const auto& c : coeffs)
    if (!c.is_zero()) all_zero = false;
  if (all_zero) throw ZeroCoefficients();
  return kernel_image(plane.combine(coeffs)).second;
}

}  // namespace skewrank
