#include "skewrank/normal_forms.hpp"

namespace skewrank {
namespace normal_forms {

SkewTensor term(const FieldPtr& f, std::size_t dim, std::size_t i,
                std::size_t j, std::size_t k, std::size_t l, long sign) {
  SkewTensor t(f, dim);
  t.add_term(i, j, f->one());
  t.add_term(k, l, f->from_int(sign));
  return t;
}

MatrixSubspace ell_g(const FieldPtr& f) {
  return MatrixSubspace(6, {term(f, 6, 0, 2, 1, 3), term(f, 6, 0, 4, 1, 5)});
}

MatrixSubspace ell_s(const FieldPtr& f) {
  return MatrixSubspace(6, {term(f, 6, 0, 2, 1, 3), term(f, 6, 0, 4, 1, 2)});
}

MatrixSubspace pi_g(const FieldPtr& f) {
  return MatrixSubspace(6, {term(f, 6, 0, 4, 1, 3, -1), term(f, 6, 0, 5, 2, 3, -1),
                            term(f, 6, 1, 5, 2, 4, -1)});
}

MatrixSubspace pi_t(const FieldPtr& f) {
  return MatrixSubspace(6, {term(f, 6, 0, 2, 1, 3), term(f, 6, 0, 3, 1, 4),
                            term(f, 6, 0, 4, 1, 5)});
}

MatrixSubspace pi_p(const FieldPtr& f) {
  return MatrixSubspace(6, {term(f, 6, 0, 3, 1, 2), term(f, 6, 0, 4, 2, 3),
                            term(f, 6, 0, 5, 1, 3)});
}

MatrixSubspace pi_5(const FieldPtr& f) {
  return MatrixSubspace(5, {term(f, 5, 0, 3, 1, 2), term(f, 5, 0, 4, 1, 3),
                            term(f, 5, 1, 4, 2, 3)});
}

MatrixSubspace pi_5_in_6(const FieldPtr& f) {
  return MatrixSubspace(6, {term(f, 6, 0, 3, 1, 2), term(f, 6, 0, 4, 1, 3),
                            term(f, 6, 1, 4, 2, 3)});
}

}  // namespace normal_forms
}  // namespace skewrank
