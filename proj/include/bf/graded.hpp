#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bf/algebra.hpp"
#include "bf/group.hpp"

namespace bf {

struct NotInvariant : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotCrossedProduct : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// algebra with a direct sum decomposition indexed by a finite group:
// comp[x] comp[y] lands in comp[x y], the unit in comp[identity]
struct Grading {
  Algebra alg;
  Group grade;
  std::vector<Subspace> comp;
};

// direct sum, component multiplication, unit placement; throws on failure
void verify_grading(const Grading& gr);

// single-component grading by the trivial group
Grading trivial_grading(Algebra A);

// e kG with the coset grading by G/N: the component at gN is
// e * span(gN).  e must be an idempotent supported on N and central in
// the span of N; conjugation invariance under G is what makes the
// components multiply, and its failure raises NotInvariant.
struct BlockExtension {
  SubAlgebraView view;  // e kG inside kG
  Quotient quot;        // G -> G/N
  Grading gr;           // on view.alg
};
BlockExtension grade_by_quotient(const Algebra& kG, const Group& G,
                                 const std::vector<uint32_t>& N,
                                 const FqVec& e);

// grading of A (x) A' by the direct product of the grading groups
Grading tensor_grading(const Grading& a, const Grading& b);

// one invertible homogeneous element per degree, inverses included;
// unit_inv[x] lies in the component of x^-1
struct CrossedUnits {
  std::vector<FqVec> unit;
  std::vector<FqVec> unit_inv;
};
// finds a unit in every component (basis vectors first, then exhaustive
// over small components, then seeded search); NotCrossedProduct when a
// component yields none
CrossedUnits crossed_product_check(const Grading& gr);

// J(A_1) A = A J(A_1) for a crossed product, verified to be a graded
// two-sided ideal meeting the identity component in exactly J(A_1)
Subspace graded_radical(const Grading& gr);

// degrees x with comp[x] comp[x^-1] = comp[1]; verified to be a subgroup
std::vector<uint32_t> dade_group(const Grading& gr);

// the centralizer of the identity component, graded by intersection,
// modulo the graded part of its radical.  The quotient is supported
// exactly on the Dade subgroup of the centralizer's grading (which can
// be smaller than the full-product degrees of the ambient grading) and
// is a crossed product over it.  The grading group acts by conjugation
// with homogeneous units; on the quotient this action is independent of
// the choice of units.
struct CbarResult {
  SubAlgebraView cab;            // centralizer of comp[1] inside alg
  QuotientAlgebraView quot;      // cab.alg -> cbar.alg
  std::vector<uint32_t> dade;    // Dade subgroup, as degrees of gr.grade
  Grading cbar;                  // graded by the Dade subgroup's own Group
  std::vector<FqMatrix> action;  // per degree of gr.grade, on cbar coords
};
CbarResult cbar(const Grading& gr);

// report-style check of an algebra map between graded algebras over the
// same grading group: unital, multiplicative, grade-preserving, and
// equivariant when actions are supplied; bijectivity optional
struct GradedMapReport {
  bool ok = true;
  std::string violation;  // empty when ok; names the first failed check
  std::string witness;    // short description of the failing input
};
GradedMapReport verify_graded_hom(const FqMatrix& f, const Grading& src,
                                  const Grading& dst,
                                  const std::vector<FqMatrix>* src_action,
                                  const std::vector<FqMatrix>* dst_action,
                                  bool require_bijective);
GradedMapReport verify_graded_iso(const FqMatrix& f, const Grading& src,
                                  const Grading& dst,
                                  const std::vector<FqMatrix>* src_action = nullptr,
                                  const std::vector<FqMatrix>* dst_action = nullptr);

}  // namespace bf
