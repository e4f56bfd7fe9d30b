#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "bf/matrix.hpp"

namespace bf {

// sparse vector: (index, nonzero coefficient) pairs sorted by index
using SparseVec = std::vector<std::pair<uint32_t, FqElt>>;

SparseVec sparse_of(const FqVec& v);
FqVec dense_of(const Fq& F, const SparseVec& v, size_t n);
// a + c b
SparseVec sp_axpy(const Fq& F, const SparseVec& a, FqElt c, const SparseVec& b);
SparseVec sp_scale(const Fq& F, FqElt c, const SparseVec& a);

// Incremental echelonization of sparse rows.  Each accepted row is
// normalized with leading coefficient 1 at its pivot column; its tail
// never meets the pivots accepted before it (it may meet later ones,
// which is why kernel() back-substitutes in reverse insertion order).
class SparseElim {
public:
  explicit SparseElim(const Fq& F) : F_(&F) {}

  // true if v added a pivot, false if it reduced to zero
  bool insert(SparseVec v);

  size_t rank() const { return rows_.size(); }
  bool pivot_at(uint32_t col) const { return pivot_row_.count(col) != 0; }
  std::vector<uint32_t> pivot_cols() const;
  std::vector<uint32_t> free_cols(uint32_t ambient) const;

  // canonical residue of v mod the row space (no pivot coordinates left)
  SparseVec reduce(SparseVec v) const;

  // basis of { x : r . x = 0 for every inserted row r }, one vector per
  // free column with that coordinate set to 1
  std::vector<SparseVec> kernel(uint32_t ambient) const;

private:
  const Fq* F_;
  std::vector<SparseVec> rows_;
  std::vector<uint32_t> row_pivot_;
  std::unordered_map<uint32_t, uint32_t> pivot_row_;
};

}  // namespace bf
