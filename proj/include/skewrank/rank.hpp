#pragma once

#include <optional>

#include "skewrank/poly.hpp"

namespace skewrank {

/// Certificate accompanying the constant-rank-4 decision: the restricted
/// Pfaffian cubic (dim 6) and the emptiness certificate for the rank <= 2
/// locus, or a textual reason for structurally-false cases.
struct RankCertificate {
  bool holds = false;
  std::string reason;
  std::optional<HomogPoly> cubic;
  std::optional<MacaulayCertificate> macaulay;
};

enum class LineKind { General, Special };

/// Classification of a constant-rank-4 line: a general line carries its
/// 2-dimensional pivot, a special line the 5-dimensional span of a copy of
/// G(1,4) containing it.
struct LineReport {
  LineKind kind = LineKind::General;
  std::optional<Subspace> pivot;
  std::optional<Subspace> hyperplane;
};

/// Exact rank of sum_i coeffs[i] * generator_i (always even).
std::size_t rank_at(const MatrixSubspace& space, const std::vector<Scalar>& coeffs);

/// Exact kernel and image of a nonzero skew tensor.
std::pair<Subspace, Subspace> kernel_image(const SkewTensor& w);

RankCertificate constant_rank_four(const MatrixSubspace& space);

LineReport classify_line(const MatrixSubspace& line);

}  // namespace skewrank
