#pragma once

#include "skewrank/rank.hpp"

namespace skewrank {

/// Discrete invariants of the kernel bundle of a constant-rank-4 space:
/// the constant kernel dimension and the dimension of genuinely-linear
/// polynomial kernel sections. Together these separate the four plane
/// orbits.
struct BundleFingerprint {
  std::size_t degree0_kernel_dim = 0;
  std::size_t degree1_kernel_dim = 0;
};

/// Kronecker minimal indices (d1 <= d2, d1 + d2 = 2) of the kernel of the
/// skew pencil spanned by a constant-rank-4 line.
std::pair<std::size_t, std::size_t> minimal_indices_line(const MatrixSubspace& line);

BundleFingerprint plane_kernel_fingerprint(const MatrixSubspace& plane);

/// The 4-dimensional image fiber at the given coefficients.
Subspace image_fiber_check(const MatrixSubspace& plane,
                           const std::vector<Scalar>& coeffs);

}  // namespace skewrank
