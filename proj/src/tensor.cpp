#include "skewrank/tensor.hpp"

#include <algorithm>
#include <map>

namespace skewrank {

namespace {

void check_dim(std::size_t dim) {
  if (dim != 5 && dim != 6)
    throw UnsupportedDimension("tensors are supported in dimension 5 and 6");
}

std::size_t pair_index(std::size_t dim, std::size_t i, std::size_t j) {
  // lex position of (i, j), i < j
  return i * dim - i * (i + 1) / 2 + (j - i - 1);
}

/// Sign of the permutation sorting `idx`; 0 when two entries coincide.
int sort_sign(std::vector<std::size_t>& idx) {
  int sign = 1;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return 0;
      if (idx[a] > idx[b]) {
        std::swap(idx[a], idx[b]);
        sign = -sign;
      }
    }
  return sign;
}

std::size_t quad_index(std::size_t dim, const std::array<std::size_t, 4>& s) {
  const auto& basis = quad_basis(dim);
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  return static_cast<std::size_t>(it - basis.begin());
}

}  // namespace

const std::vector<std::pair<std::size_t, std::size_t>>& pair_basis(std::size_t dim) {
  check_dim(dim);
  static std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> cache;
  auto& v = cache[dim];
  if (v.empty())
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) v.emplace_back(i, j);
  return v;
}

const std::vector<std::array<std::size_t, 4>>& quad_basis(std::size_t dim) {
  check_dim(dim);
  static std::map<std::size_t, std::vector<std::array<std::size_t, 4>>> cache;
  auto& v = cache[dim];
  if (v.empty())
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a + 1; b < dim; ++b)
        for (std::size_t c = b + 1; c < dim; ++c)
          for (std::size_t d = c + 1; d < dim; ++d)
            v.push_back({a, b, c, d});
  return v;
}

SkewTensor::SkewTensor(FieldPtr field, std::size_t dim)
    : field_(std::move(field)), dim_(dim) {
  check_dim(dim);
  coords_.assign(dim * (dim - 1) / 2, field_->zero());
}

SkewTensor SkewTensor::basis_form(const FieldPtr& field, std::size_t dim,
                                  std::size_t i, std::size_t j) {
  SkewTensor t(field, dim);
  t.add_term(i, j, field->one());
  return t;
}

SkewTensor SkewTensor::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw SizeMismatch();
  if (!m.is_skew()) throw NotSkew("matrix is not skew-symmetric");
  SkewTensor t(m.field(), m.rows());
  for (auto [i, j] : pair_basis(m.rows()))
    t.coords_[pair_index(m.rows(), i, j)] = m.at(i, j);
  return t;
}

Scalar SkewTensor::coord(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw SizeMismatch();
  if (i == j) return field_->zero();
  if (i < j) return coords_[pair_index(dim_, i, j)];
  return -coords_[pair_index(dim_, j, i)];
}

void SkewTensor::add_term(std::size_t i, std::size_t j, const Scalar& c) {
  if (i >= dim_ || j >= dim_ || i == j) throw SizeMismatch();
  if (i < j)
    coords_[pair_index(dim_, i, j)] += c;
  else
    coords_[pair_index(dim_, j, i)] -= c;
}

Matrix SkewTensor::matrix() const {
  Matrix m(field_, dim_, dim_);
  for (auto [i, j] : pair_basis(dim_)) {
    const Scalar& c = coords_[pair_index(dim_, i, j)];
    m.at(i, j) = c;
    m.at(j, i) = -c;
  }
  return m;
}

SkewTensor SkewTensor::operator+(const SkewTensor& o) const {
  if (dim_ != o.dim_) throw DimensionMismatch();
  SkewTensor r = *this;
  for (std::size_t k = 0; k < coords_.size(); ++k) r.coords_[k] += o.coords_[k];
  return r;
}

SkewTensor SkewTensor::operator-(const SkewTensor& o) const { return *this + (-o); }

SkewTensor SkewTensor::operator-() const {
  SkewTensor r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

SkewTensor SkewTensor::operator*(const Scalar& c) const {
  SkewTensor r = *this;
  for (auto& x : r.coords_) x *= c;
  return r;
}

bool SkewTensor::operator==(const SkewTensor& o) const {
  return dim_ == o.dim_ && coords_ == o.coords_;
}

bool SkewTensor::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Scalar& c) { return c.is_zero(); });
}

SkewTensor SkewTensor::act(const Matrix& x) const {
  Matrix m = matrix();
  return from_matrix(x * m + m * x.transpose());
}

SkewTensor SkewTensor::transform(const Matrix& t) const {
  Matrix m = matrix();
  return from_matrix(t * m * t.transpose());
}

SkewTensor SkewTensor::promote(const FieldPtr& target) const {
  SkewTensor r(target, dim_);
  for (std::size_t k = 0; k < coords_.size(); ++k)
    r.coords_[k] = coords_[k].promote(target);
  return r;
}

Scalar SkewTensor::pfaffian() const {
  if (dim_ != 6)
    throw UnsupportedDimension("the Pfaffian is computed in dimension 6");
  // matching expansion: pair index 0 with each partner, recurse
  std::vector<std::size_t> all = {0, 1, 2, 3, 4, 5};
  auto rec = [&](auto&& self, std::vector<std::size_t> idx) -> Scalar {
    if (idx.empty()) return field_->one();
    Scalar sum = field_->zero();
    std::size_t i0 = idx[0];
    for (std::size_t k = 1; k < idx.size(); ++k) {
      std::vector<std::size_t> rest;
      for (std::size_t m = 1; m < idx.size(); ++m)
        if (m != k) rest.push_back(idx[m]);
      Scalar term = coord(i0, idx[k]) * self(self, rest);
      if (k % 2 == 0) term = -term;
      sum += term;
    }
    return sum;
  };
  return rec(rec, all);
}

FourTensor::FourTensor(FieldPtr field, std::size_t dim)
    : field_(std::move(field)), dim_(dim) {
  check_dim(dim);
  coords_.assign(quad_basis(dim).size(), field_->zero());
}

FourTensor FourTensor::operator+(const FourTensor& o) const {
  if (dim_ != o.dim_) throw DimensionMismatch();
  FourTensor r = *this;
  for (std::size_t k = 0; k < coords_.size(); ++k) r.coords_[k] += o.coords_[k];
  return r;
}

FourTensor FourTensor::operator*(const Scalar& c) const {
  FourTensor r = *this;
  for (auto& x : r.coords_) x *= c;
  return r;
}

bool FourTensor::operator==(const FourTensor& o) const {
  return dim_ == o.dim_ && coords_ == o.coords_;
}

bool FourTensor::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Scalar& c) { return c.is_zero(); });
}

Matrix FourTensor::dual_covector() const {
  if (dim_ != 5)
    throw UnsupportedDimension("4-vectors dualize to covectors only in dimension 5");
  Matrix row(field_, 1, 5);
  const auto& basis = quad_basis(5);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    // complement index m: e_S ^ e_m = sign * vol
    std::size_t m = 0 + 1 + 2 + 3 + 4;
    for (std::size_t x : basis[k]) m -= x;
    std::vector<std::size_t> idx(basis[k].begin(), basis[k].end());
    idx.push_back(m);
    row.at(0, m) = coords_[k] * field_->from_int(sort_sign(idx));
  }
  return row;
}

FourTensor wedge(const SkewTensor& a, const SkewTensor& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch();
  std::size_t dim = a.dim();
  FourTensor r(a.field(), dim);
  const auto& pairs = pair_basis(dim);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Scalar& ca = a.coords()[p];
    if (ca.is_zero()) continue;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const Scalar& cb = b.coords()[q];
      if (cb.is_zero()) continue;
      std::vector<std::size_t> idx = {pairs[p].first, pairs[p].second,
                                      pairs[q].first, pairs[q].second};
      int sign = sort_sign(idx);
      if (sign == 0) continue;
      std::array<std::size_t, 4> s = {idx[0], idx[1], idx[2], idx[3]};
      r.coords()[quad_index(dim, s)] += ca * cb * a.field()->from_int(sign);
    }
  }
  return r;
}

FourTensor gauss_map(const SkewTensor& omega) { return wedge(omega, omega); }

Scalar top_coefficient(const FourTensor& q, const SkewTensor& omega) {
  if (q.dim() != 6 || omega.dim() != 6)
    throw UnsupportedDimension("top wedge coefficient requires dimension 6");
  Scalar sum = q.field()->zero();
  const auto& quads = quad_basis(6);
  const auto& pairs = pair_basis(6);
  for (std::size_t k = 0; k < quads.size(); ++k) {
    const Scalar& cq = q.coords()[k];
    if (cq.is_zero()) continue;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const Scalar& co = omega.coords()[p];
      if (co.is_zero()) continue;
      std::vector<std::size_t> idx(quads[k].begin(), quads[k].end());
      idx.push_back(pairs[p].first);
      idx.push_back(pairs[p].second);
      int sign = sort_sign(idx);
      if (sign == 0) continue;
      sum += cq * co * q.field()->from_int(sign);
    }
  }
  return sum;
}

Scalar triple_pfaffian(const SkewTensor& a, const SkewTensor& b,
                       const SkewTensor& c) {
  return top_coefficient(wedge(a, b), c);
}

}  // namespace skewrank
