#include "bf/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace bf {

FqMatrix FqMatrix::identity(const Fq& F, size_t n) {
  FqMatrix M(F, n, n);
  for (size_t i = 0; i < n; ++i) M(i, i) = 1;
  return M;
}

FqMatrix FqMatrix::from_rows(const Fq& F, const std::vector<FqVec>& rows,
                             size_t cols) {
  FqMatrix M(F, rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("bad row length");
    for (size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
  }
  return M;
}

FqVec FqMatrix::row(size_t i) const {
  return FqVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

void FqMatrix::set_row(size_t i, const FqVec& v) {
  if (v.size() != c_) throw std::invalid_argument("bad row length");
  std::copy(v.begin(), v.end(), a_.begin() + i * c_);
}

FqMatrix FqMatrix::mul(const FqMatrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("shape mismatch");
  FqMatrix out(*F_, r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      FqElt v = (*this)(i, k);
      if (v == 0) continue;
      for (size_t j = 0; j < o.c_; ++j) {
        FqElt w = o(k, j);
        if (w == 0) continue;
        out(i, j) = F_->add(out(i, j), F_->mul(v, w));
      }
    }
  return out;
}

FqMatrix FqMatrix::add(const FqMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("shape mismatch");
  FqMatrix out(*F_, r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->add(a_[i], o.a_[i]);
  return out;
}

FqMatrix FqMatrix::sub(const FqMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("shape mismatch");
  FqMatrix out(*F_, r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->sub(a_[i], o.a_[i]);
  return out;
}

FqMatrix FqMatrix::scale(FqElt c) const {
  FqMatrix out(*F_, r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->mul(a_[i], c);
  return out;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix out(*F_, c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

FqVec FqMatrix::mul_row(const FqVec& x) const {
  if (x.size() != r_) throw std::invalid_argument("shape mismatch");
  FqVec out(c_, 0);
  for (size_t i = 0; i < r_; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < c_; ++j) {
      FqElt w = (*this)(i, j);
      if (w != 0) out[j] = F_->add(out[j], F_->mul(x[i], w));
    }
  }
  return out;
}

FqVec FqMatrix::mul_col(const FqVec& x) const {
  if (x.size() != c_) throw std::invalid_argument("shape mismatch");
  FqVec out(r_, 0);
  for (size_t i = 0; i < r_; ++i) {
    FqElt s = 0;
    for (size_t j = 0; j < c_; ++j)
      if ((*this)(i, j) != 0 && x[j] != 0)
        s = F_->add(s, F_->mul((*this)(i, j), x[j]));
    out[i] = s;
  }
  return out;
}

bool FqMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](FqElt v) { return v == 0; });
}

FqMatrix kron(const FqMatrix& A, const FqMatrix& B) {
  const Fq& F = A.field();
  FqMatrix out(F, A.rows() * B.rows(), A.cols() * B.cols());
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j) {
      FqElt a = A(i, j);
      if (a == 0) continue;
      for (size_t k = 0; k < B.rows(); ++k)
        for (size_t l = 0; l < B.cols(); ++l)
          out(i * B.rows() + k, j * B.cols() + l) = F.mul(a, B(k, l));
    }
  return out;
}

Rref rref(const FqMatrix& M) {
  const Fq& F = M.field();
  FqMatrix W = M;
  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t col = 0; col < W.cols() && r < W.rows(); ++col) {
    size_t sel = W.rows();
    for (size_t i = r; i < W.rows(); ++i)
      if (W(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel == W.rows()) continue;
    if (sel != r)
      for (size_t j = 0; j < W.cols(); ++j) std::swap(W(sel, j), W(r, j));
    FqElt iv = F.inv(W(r, col));
    for (size_t j = col; j < W.cols(); ++j) W(r, j) = F.mul(W(r, j), iv);
    for (size_t i = 0; i < W.rows(); ++i) {
      if (i == r) continue;
      FqElt f = W(i, col);
      if (f == 0) continue;
      for (size_t j = col; j < W.cols(); ++j)
        W(i, j) = F.sub(W(i, j), F.mul(f, W(r, j)));
    }
    pivots.push_back(col);
    ++r;
  }
  Rref out;
  out.mat = FqMatrix(F, r, W.cols());
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < W.cols(); ++j) out.mat(i, j) = W(i, j);
  out.pivots = pivots;
  out.rank = r;
  return out;
}

size_t rank(const FqMatrix& M) { return rref(M).rank; }

FqMatrix kernel(const FqMatrix& M) {
  const Fq& F = M.field();
  Rref R = rref(M);
  std::vector<size_t> free_cols;
  {
    size_t pi = 0;
    for (size_t j = 0; j < M.cols(); ++j) {
      if (pi < R.pivots.size() && R.pivots[pi] == j)
        ++pi;
      else
        free_cols.push_back(j);
    }
  }
  FqMatrix K(F, free_cols.size(), M.cols());
  for (size_t t = 0; t < free_cols.size(); ++t) {
    size_t f = free_cols[t];
    K(t, f) = 1;
    for (size_t i = 0; i < R.rank; ++i)
      K(t, R.pivots[i]) = F.neg(R.mat(i, f));
  }
  return K;
}

std::optional<FqMatrix> inverse(const FqMatrix& M) {
  if (M.rows() != M.cols()) return std::nullopt;
  const Fq& F = M.field();
  size_t n = M.rows();
  FqMatrix W(F, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) W(i, j) = M(i, j);
    W(i, n + i) = 1;
  }
  Rref R = rref(W);
  if (R.rank < n || R.pivots[n - 1] >= n) return std::nullopt;
  FqMatrix out(F, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = R.mat(i, n + j);
  return out;
}

Solution solve_all(const FqMatrix& A, const FqMatrix& B) {
  if (A.rows() != B.rows()) throw std::invalid_argument("shape mismatch");
  const Fq& F = A.field();
  size_t n = A.cols(), k = B.cols();
  FqMatrix W(F, A.rows(), n + k);
  for (size_t i = 0; i < A.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) W(i, j) = A(i, j);
    for (size_t j = 0; j < k; ++j) W(i, n + j) = B(i, j);
  }
  Rref R = rref(W);
  Solution out;
  for (size_t p : R.pivots)
    if (p >= n) return out;  // inconsistent
  out.ok = true;
  out.particular = FqMatrix(F, n, k);
  for (size_t i = 0; i < R.rank; ++i)
    for (size_t j = 0; j < k; ++j)
      out.particular(R.pivots[i], j) = R.mat(i, n + j);
  out.kernel_rows = kernel(A);
  return out;
}

FqVec vec_add(const Fq& F, const FqVec& a, const FqVec& b) {
  FqVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], b[i]);
  return out;
}

FqVec vec_sub(const Fq& F, const FqVec& a, const FqVec& b) {
  FqVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = F.sub(a[i], b[i]);
  return out;
}

FqVec vec_scale(const Fq& F, FqElt c, const FqVec& a) {
  FqVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = F.mul(c, a[i]);
  return out;
}

FqVec vec_axpy(const Fq& F, const FqVec& a, FqElt c, const FqVec& b) {
  FqVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], F.mul(c, b[i]));
  return out;
}

bool vec_is_zero(const FqVec& a) {
  return std::all_of(a.begin(), a.end(), [](FqElt v) { return v == 0; });
}

FqVec unit_vec(size_t n, size_t i) {
  FqVec v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace bf
