#pragma once

#include <vector>

#include "bf/matrix.hpp"

namespace bf {

// Subspace of F^n held as a reduced row echelon basis, so equal
// subspaces compare equal as data.
class Subspace {
public:
  Subspace() : F_(nullptr), n_(0) {}
  Subspace(const Fq& F, size_t ambient) : F_(&F), n_(ambient) {
    basis_ = FqMatrix(F, 0, ambient);
  }

  static Subspace span(const Fq& F, const std::vector<FqVec>& gens,
                       size_t ambient);
  static Subspace row_space(const FqMatrix& M);
  static Subspace full(const Fq& F, size_t ambient);

  const Fq& field() const { return *F_; }
  size_t ambient() const { return n_; }
  size_t dim() const { return basis_.rows(); }
  const FqMatrix& basis() const { return basis_; }
  const std::vector<size_t>& pivot_cols() const { return pivots_; }
  std::vector<size_t> free_cols() const;

  bool contains(const FqVec& v) const;
  bool contains(const Subspace& o) const;
  bool operator==(const Subspace& o) const {
    return n_ == o.n_ && basis_ == o.basis_;
  }

  // canonical representative of v mod this space: pivot coordinates
  // eliminated, the rest untouched
  FqVec reduce(FqVec v) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;

private:
  const Fq* F_;
  size_t n_;
  FqMatrix basis_;
  std::vector<size_t> pivots_;
};

}  // namespace bf
