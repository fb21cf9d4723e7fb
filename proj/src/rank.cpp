#include "skewrank/rank.hpp"

namespace skewrank {

std::size_t rank_at(const MatrixSubspace& space, const std::vector<Scalar>& coeffs) {
  if (coeffs.size() != space.k()) throw SizeMismatch();
  bool all_zero = true;
  for (const auto& c : coeffs)
    if (!c.is_zero()) all_zero = false;
  if (all_zero) throw ZeroCoefficients();
  return space.combine(coeffs).matrix().rank();
}

std::pair<Subspace, Subspace> kernel_image(const SkewTensor& w) {
  if (w.is_zero()) throw ZeroTensor();
  Matrix m = w.matrix();
  Subspace kernel = Subspace::span_of_columns(m.nullspace());
  Subspace image = Subspace::span_of_columns(m);
  return {kernel, image};
}

RankCertificate constant_rank_four(const MatrixSubspace& space) {
  RankCertificate cert;
  std::size_t k = space.k();
  if (k < 2)
    throw BadDimension("constant-rank decisions need at least 2 generators");
  if (space.dim() == 5) {
    if (k == 4) {
      // a P^3 inside P(so(5)) = P^9 always meets the rank <= 2 locus: the
      // Grassmannian G(1,4) has codimension 3 there.
      cert.holds = false;
      cert.reason = "a 4-generator span of order-5 matrices always contains rank <= 2 points";
      return cert;
    }
    cert.macaulay = projective_empty(gauss_quadrics(space), k);
    cert.holds = cert.macaulay->empty;
    if (!cert.holds) cert.reason = "the span contains a rank <= 2 point";
    return cert;
  }
  cert.cubic = pfaffian_cubic(space);
  if (!cert.cubic->is_zero()) {
    cert.holds = false;
    cert.reason = "the span contains full-rank points (nonzero Pfaffian cubic)";
    return cert;
  }
  cert.macaulay = projective_empty(gauss_quadrics(space), k);
  cert.holds = cert.macaulay->empty;
  if (!cert.holds) cert.reason = "the span contains a rank <= 2 point";
  return cert;
}

LineReport classify_line(const MatrixSubspace& line) {
  if (line.k() != 2) throw BadDimension("a line takes exactly 2 generators");
  if (!constant_rank_four(line).holds) throw NotConstantRank();
  const FieldPtr& f = line.field();
  Matrix m0 = line.generator(0).matrix();
  Matrix m1 = line.generator(1).matrix();
  auto [k0, im0] = kernel_image(line.generator(0));
  auto [k1, im1] = kernel_image(line.generator(1));

  LineReport report;
  Matrix common = Matrix::vstack(m0, m1).nullspace();
  if (common.cols() > 0) {
    report.kind = LineKind::Special;
    Subspace h = im0.sum(im1);
    if (h.dim() != 5)
      throw InternalError("special line images span an unexpected dimension");
    report.hyperplane = h;
    return report;
  }
  report.kind = LineKind::General;
  Subspace pivot = im0.intersect(im1);
  if (pivot.dim() != 2)
    throw InternalError("general line images meet in an unexpected dimension");
  // the pivot is the intersection of the images over the whole line;
  // cross-check at a third point
  SkewTensor third = line.generator(0) + line.generator(1);
  Subspace im2 = kernel_image(third).second;
  if (!pivot.equals(pivot.intersect(im2)))
    throw InternalError("pivot is not stable across the line");
  report.pivot = pivot;
  return report;
}

}  // namespace skewrank
