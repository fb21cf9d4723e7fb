#pragma once

#include "skewrank/span.hpp"

namespace skewrank {

/// Basis of the Lie algebra {X in gl(V) : X.W <= W} for the derivation
/// action X.(u^v) = Xu^v + u^Xv.
struct StabilizerBasis {
  std::vector<Matrix> basis;
  std::size_t dim() const { return basis.size(); }
};

StabilizerBasis stabilizer_algebra(const MatrixSubspace& space);

/// dim V^2 minus the stabilizer dimension: the GL(V)-orbit dimension of the
/// subspace in its Grassmannian.
std::size_t orbit_dimension(const MatrixSubspace& space);

bool check_algebra_membership(const MatrixSubspace& space, const Matrix& x);

}  // namespace skewrank
