#pragma once

#include "skewrank/span.hpp"

namespace skewrank {
namespace normal_forms {

/// Canonical representatives of the constant-rank-4 orbits, 0-indexed.

SkewTensor term(const FieldPtr& f, std::size_t dim, std::size_t i,
                std::size_t j, std::size_t k, std::size_t l, long sign = 1);

/// General line: e0^e2 + e1^e3, e0^e4 + e1^e5.
MatrixSubspace ell_g(const FieldPtr& f);
/// Special line: e0^e2 + e1^e3, e0^e4 + e1^e2.
MatrixSubspace ell_s(const FieldPtr& f);

/// Plane with only general lines.
MatrixSubspace pi_g(const FieldPtr& f);
/// Plane with a conic of special lines (constant pivot <e0,e1>).
MatrixSubspace pi_t(const FieldPtr& f);
/// Plane with a pencil of special lines.
MatrixSubspace pi_p(const FieldPtr& f);
/// Order-5 plane in so(5).
MatrixSubspace pi_5(const FieldPtr& f);
/// The order-5 plane embedded in so(6) via the hyperplane <e0..e4>.
MatrixSubspace pi_5_in_6(const FieldPtr& f);

}  // namespace normal_forms
}  // namespace skewrank
