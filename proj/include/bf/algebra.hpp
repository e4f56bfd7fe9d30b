#pragma once

#include <string>
#include <vector>

#include "bf/group.hpp"
#include "bf/matrix.hpp"
#include "bf/poly.hpp"
#include "bf/sparse.hpp"
#include "bf/subspace.hpp"

namespace bf {

// Finite-dimensional associative unital algebra over Fq, held by its
// structure constants: product(i, j) expands (basis i)(basis j).
// Elements are dense coefficient vectors.
class Algebra {
public:
  Algebra() : F_(nullptr), d_(0) {}

  // Verifies the unit and associativity (exhaustive up to dimension 64,
  // seeded sampling above).  gens must generate the algebra as a unital
  // algebra; pass the full basis when nothing smaller is known.
  static Algebra from_structure(const Fq& F,
                                std::vector<SparseVec> products, size_t dim,
                                FqVec unit, std::vector<std::string> labels,
                                std::vector<FqVec> gens);

  // basis indexed by group elements, single-term products
  static Algebra group_algebra(const Fq& F, const Group& G);

  const Fq& field() const { return *F_; }
  size_t dim() const { return d_; }
  const SparseVec& product(uint32_t i, uint32_t j) const {
    return products_[size_t(i) * d_ + j];
  }
  const FqVec& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<FqVec>& gens() const { return gens_; }

  FqVec mul(const FqVec& a, const FqVec& b) const;
  FqVec power(const FqVec& a, uint64_t k) const;  // k >= 1
  // operator matrices in column convention: (left_mult(a)).mul_col(x)
  // is the coordinate vector of a*x
  FqMatrix left_mult(const FqVec& a) const;
  FqMatrix right_mult(const FqVec& a) const;

  bool is_commutative() const;
  bool is_idempotent(const FqVec& e) const;
  bool is_central(const FqVec& z) const;

private:
  const Fq* F_;
  size_t d_;
  std::vector<SparseVec> products_;
  FqVec unit_;
  std::vector<std::string> labels_;
  std::vector<FqVec> gens_;
};

// algebra built on a subspace of a parent algebra, with coordinate maps
struct SubAlgebraView {
  Algebra alg;
  FqMatrix basis_rows;          // RREF; row i = basis i in parent coords
  std::vector<size_t> pivots;
  FqVec restrict(const FqVec& parent_vec) const;  // throws outside the span
  FqVec extend(const FqVec& sub_vec) const;
  bool contains(const FqVec& parent_vec) const;
};

struct QuotientAlgebraView {
  Algebra alg;
  Subspace ideal;
  std::vector<size_t> free_cols;
  FqVec project(const FqVec& parent_vec) const;
  FqVec section(const FqVec& quot_vec) const;  // canonical representative
};

// span_set must be multiplicatively closed and contain unit_vec
SubAlgebraView subalgebra(const Algebra& A, const std::vector<FqVec>& span_set,
                          const FqVec& unit_vec);
// e A e for an idempotent e
SubAlgebraView corner(const Algebra& A, const FqVec& e);
SubAlgebraView center_view(const Algebra& A);
// elements commuting with every vector in S
SubAlgebraView centralizer_view(const Algebra& A,
                                const std::vector<FqVec>& S);

// rows must span a two-sided ideal (checked)
QuotientAlgebraView quotient_algebra(const Algebra& A,
                                     const FqMatrix& ideal_rows);

FqMatrix center_basis(const Algebra& A);
FqMatrix centralizer_basis(const Algebra& A, const std::vector<FqVec>& S);

Algebra tensor_algebra(const Algebra& A, const Algebra& B);
Algebra opposite(const Algebra& A);

FqPoly min_poly(const Algebra& A, const FqVec& x);
// least monic f with f(x) e = 0, powers taken with x^0 = e; for x in a
// corner e A e this is the minimal polynomial over that corner
FqPoly min_poly_rel(const Algebra& A, const FqVec& x, const FqVec& e);
// f(x) with x^0 = e
FqVec apply_poly(const Algebra& A, const FqPoly& f, const FqVec& x,
                 const FqVec& e);

// two-sided ideal generated by the given elements
FqMatrix ideal_closure(const Algebra& A, const std::vector<FqVec>& gens);
bool is_nilpotent_space(const Algebra& A, const FqMatrix& rows);

// Jacobson radical, as reduced row echelon basis rows.  Computed by the
// characteristic-p chain of coefficient forms (trace first, then the
// t^(dim - p^i) coefficients of left-multiplication characteristic
// polynomials, with the Frobenius-twisted solves those levels need).
// The result is verified: two-sided ideal, nilpotent, semisimple
// quotient.
FqMatrix radical(const Algebra& A);

// central primitive idempotents, sorted by coefficient vector; found in
// the semisimple center quotient by splitting minimal polynomials of a
// separating sequence, then lifted through the center's radical
std::vector<FqVec> blocks(const Algebra& A);

// for group-element bases: index of the unique block with coefficient
// sum 1 (the augmentation does not vanish on it)
size_t principal_block(const Fq& F, const std::vector<FqVec>& blks);

}  // namespace bf
