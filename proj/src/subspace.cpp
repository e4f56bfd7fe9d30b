#include "bf/subspace.hpp"

#include <stdexcept>

namespace bf {

Subspace Subspace::span(const Fq& F, const std::vector<FqVec>& gens,
                        size_t ambient) {
  return row_space(FqMatrix::from_rows(F, gens, ambient));
}

Subspace Subspace::row_space(const FqMatrix& M) {
  Subspace S(M.field(), M.cols());
  Rref R = rref(M);
  S.basis_ = R.mat;
  S.pivots_ = R.pivots;
  return S;
}

Subspace Subspace::full(const Fq& F, size_t ambient) {
  return row_space(FqMatrix::identity(F, ambient));
}

std::vector<size_t> Subspace::free_cols() const {
  std::vector<size_t> out;
  size_t pi = 0;
  for (size_t j = 0; j < n_; ++j) {
    if (pi < pivots_.size() && pivots_[pi] == j)
      ++pi;
    else
      out.push_back(j);
  }
  return out;
}

FqVec Subspace::reduce(FqVec v) const {
  if (v.size() != n_) throw std::invalid_argument("bad vector length");
  for (size_t i = 0; i < pivots_.size(); ++i) {
    FqElt c = v[pivots_[i]];
    if (c == 0) continue;
    for (size_t j = 0; j < n_; ++j)
      v[j] = F_->sub(v[j], F_->mul(c, basis_(i, j)));
  }
  return v;
}

bool Subspace::contains(const FqVec& v) const {
  return vec_is_zero(reduce(v));
}

bool Subspace::contains(const Subspace& o) const {
  for (size_t i = 0; i < o.dim(); ++i)
    if (!contains(o.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (n_ != o.n_) throw std::invalid_argument("ambient mismatch");
  FqMatrix M(*F_, dim() + o.dim(), n_);
  for (size_t i = 0; i < dim(); ++i) M.set_row(i, basis_.row(i));
  for (size_t i = 0; i < o.dim(); ++i) M.set_row(dim() + i, o.basis_.row(i));
  return row_space(M);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (n_ != o.n_) throw std::invalid_argument("ambient mismatch");
  // x in both spaces iff x = a U = b V; solve (a, b) [U; -V] = 0
  size_t du = dim(), dv = o.dim();
  FqMatrix C(*F_, du + dv, n_);
  for (size_t i = 0; i < du; ++i) C.set_row(i, basis_.row(i));
  for (size_t i = 0; i < dv; ++i)
    C.set_row(du + i, vec_scale(*F_, F_->neg(1), o.basis_.row(i)));
  FqMatrix K = kernel(C.transpose());
  std::vector<FqVec> gens;
  for (size_t t = 0; t < K.rows(); ++t) {
    FqVec ab = K.row(t);
    FqVec x(n_, 0);
    for (size_t i = 0; i < du; ++i)
      if (ab[i] != 0) x = vec_axpy(*F_, x, ab[i], basis_.row(i));
    gens.push_back(x);
  }
  return span(*F_, gens, n_);
}

}  // namespace bf
