#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bf/fq.hpp"

namespace bf {

using FqVec = std::vector<FqElt>;

class FqMatrix {
public:
  FqMatrix() : F_(nullptr), r_(0), c_(0) {}
  FqMatrix(const Fq& F, size_t rows, size_t cols)
      : F_(&F), r_(rows), c_(cols), a_(rows * cols, 0) {}

  static FqMatrix identity(const Fq& F, size_t n);
  static FqMatrix from_rows(const Fq& F, const std::vector<FqVec>& rows,
                            size_t cols);

  const Fq& field() const { return *F_; }
  size_t rows() const { return r_; }
  size_t cols() const { return c_; }

  FqElt operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
  FqElt& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }

  bool operator==(const FqMatrix& o) const {
    return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
  }

  FqVec row(size_t i) const;
  void set_row(size_t i, const FqVec& v);

  FqMatrix mul(const FqMatrix& o) const;
  FqMatrix add(const FqMatrix& o) const;
  FqMatrix sub(const FqMatrix& o) const;
  FqMatrix scale(FqElt c) const;
  FqMatrix transpose() const;

  // x * M for a row vector x of length rows()
  FqVec mul_row(const FqVec& x) const;
  // M * x for a column vector x of length cols()
  FqVec mul_col(const FqVec& x) const;

  bool is_zero() const;

private:
  const Fq* F_;
  size_t r_, c_;
  std::vector<FqElt> a_;
};

FqMatrix kron(const FqMatrix& A, const FqMatrix& B);

struct Rref {
  FqMatrix mat;                 // reduced row echelon form, zero rows dropped
  std::vector<size_t> pivots;   // pivot column of each row, increasing
  size_t rank = 0;
};

Rref rref(const FqMatrix& M);

size_t rank(const FqMatrix& M);

// Rows form a basis of { x : M x^T = 0 }.
FqMatrix kernel(const FqMatrix& M);

std::optional<FqMatrix> inverse(const FqMatrix& M);

// A X = B with unknown X (cols(A) x cols(B)).  kernel_rows are a basis
// of the solution space of A x = 0, shared by every column.
struct Solution {
  bool ok = false;
  FqMatrix particular;
  FqMatrix kernel_rows;
};

Solution solve_all(const FqMatrix& A, const FqMatrix& B);

// row-vector helpers
FqVec vec_add(const Fq& F, const FqVec& a, const FqVec& b);
FqVec vec_sub(const Fq& F, const FqVec& a, const FqVec& b);
FqVec vec_scale(const Fq& F, FqElt c, const FqVec& a);
// a + c b
FqVec vec_axpy(const Fq& F, const FqVec& a, FqElt c, const FqVec& b);
bool vec_is_zero(const FqVec& a);
FqVec unit_vec(size_t n, size_t i);

}  // namespace bf
