#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bf/graded.hpp"
#include "bf/sparse.hpp"

namespace bf {

struct NotGraded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct OverCViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct MiddleAlgebraMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotChainMap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotProjective : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotWellDefined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bimodule sides are shared between the many terms of a complex, so they
// travel by shared_ptr.  The pointed-to gradings are treated as immutable.
using GradingRef = std::shared_ptr<const Grading>;

GradingRef share(Grading gr);

// Common base of a bimodule: a graded algebra C with a grading-group
// action, mapped into both sides.  into_left / into_right send the basis
// of C (columns) into the two ambient algebras; their images must
// centralize the identity components, preserve degrees, and intertwine
// the action with conjugation by homogeneous units.
struct OverC {
  Algebra cal;
  Group grade;
  std::vector<Subspace> comp;
  std::vector<FqMatrix> act;
  FqMatrix into_left;
  FqMatrix into_right;
};
using OverCRef = std::shared_ptr<const OverC>;

OverCRef make_over_c(Algebra cal, std::vector<Subspace> comp,
                     std::vector<FqMatrix> act, const Grading& left,
                     const Grading& right, FqMatrix into_left,
                     FqMatrix into_right);

// C = C_A(A_1) with the unit-conjugation action, mapped identically into
// both sides.  Requires left == right (one algebra) and a crossed product.
OverCRef centralizer_over_c(const GradingRef& g);

// Graded bimodule with sparse action tables.  Both tables are indexed
// [algebra basis * dim + module basis]; lact holds a.m, ract holds m.a.
// comp[x] is the degree-x component; the grading groups of both sides and
// of the bimodule coincide.
struct GradedBimodule {
  GradingRef left;
  GradingRef right;
  OverCRef base;  // may be null
  size_t dim = 0;
  std::vector<SparseVec> lact;
  std::vector<SparseVec> ract;
  std::vector<Subspace> comp;

  const Fq& field() const { return left->alg.field(); }
  FqVec lmul(const FqVec& a, const FqVec& m) const;
  FqVec rmul(const FqVec& m, const FqVec& a) const;
  // dense operator of acting by a fixed algebra element (column convention)
  FqMatrix lop(const FqVec& a) const;
  FqMatrix rop(const FqVec& a) const;
};

// Validating constructor.  Checks unit actions, that both actions are
// algebra maps (on generators, which suffices since generators generate),
// that they commute with each other, that the components decompose the
// space with A_g M_x A'_h inside M_{gxh}, and, when base is present, the
// compatibility m.c = (x c).m for homogeneous m of degree x.  Throws
// NotGraded or OverCViolation with a witness description.
GradedBimodule bimodule_over_c(GradingRef left, GradingRef right,
                               OverCRef base, size_t dim,
                               std::vector<SparseVec> lact,
                               std::vector<SparseVec> ract,
                               std::vector<Subspace> comp);

// A as an (A, A)-bimodule, graded by its own components
GradedBimodule regular_bimodule(const GradingRef& g, OverCRef base = nullptr);

// A with the right action twisted through an algebra automorphism u
// (column convention).  Components move to comp[x] u^{-1}-side; used for
// twist witnesses.  The twist must permute the graded components.
GradedBimodule twisted_regular_bimodule(const GradingRef& g,
                                        const FqMatrix& u);

GradedBimodule direct_sum(const std::vector<const GradedBimodule*>& parts);

// Bounded chain complex: terms[k] lives in degree lo + k, and diff[k]
// maps terms[k + 1] -> terms[k] (column convention).
struct GradedComplex {
  int lo = 0;
  std::vector<GradedBimodule> terms;
  std::vector<FqMatrix> diff;

  int hi() const { return lo + int(terms.size()) - 1; }
  bool has(int n) const { return n >= lo && n <= hi(); }
  const GradedBimodule& term(int n) const { return terms.at(size_t(n - lo)); }
  // differential out of degree n; valid when has(n) and has(n - 1)
  const FqMatrix& d(int n) const { return diff.at(size_t(n - lo - 1)); }
};

// Checks shapes, d.d = 0, and that every differential is a degree
// preserving bimodule map.  All terms must share both side algebras.
GradedComplex make_complex(int lo, std::vector<GradedBimodule> terms,
                           std::vector<FqMatrix> diff);

GradedComplex one_term_complex(GradedBimodule m, int degree = 0);

// degree n of the result is degree n - by of x; differentials pick up
// the sign (-1)^by
GradedComplex shift_complex(const GradedComplex& x, int by);

// f[k]: X_{lo+k} -> Y_{lo+k}, zero outside the stored window
struct ChainMap {
  int lo = 0;
  std::vector<FqMatrix> f;

  bool has(int n) const {
    return n >= lo && n < lo + int(f.size());
  }
  const FqMatrix& at(int n) const { return f.at(size_t(n - lo)); }
};

// graded bimodule map in every degree and d f = f d, with zero padding
// outside the windows; throws NotChainMap / NotGraded
void verify_chain_map(const GradedComplex& x, const GradedComplex& y,
                      const ChainMap& f);

// degree n: X_{n-1} (+) Y_n, differential (x, y) -> (-dx, f(x) + dy)
GradedComplex cone(const GradedComplex& x, const GradedComplex& y,
                   const ChainMap& f);

struct HomologyTerm {
  size_t dim = 0;
  // rows span ker d_n; reps rows descend to a basis of ker/im
  Subspace cycles;
  Subspace boundaries;
  FqMatrix reps;
  std::vector<size_t> graded_dims;  // per degree of the grading group
};
struct HomologyReport {
  int lo = 0;
  std::vector<HomologyTerm> terms;
  size_t total() const;
  const HomologyTerm& at(int n) const { return terms.at(size_t(n - lo)); }
};
HomologyReport homology(const GradedComplex& x);

struct QuasiIsoReport {
  bool pass = false;
  std::string violation;  // empty when pass
  int lo = 0;
  // induced[k]: H_{lo+k}(X) -> H_{lo+k}(Y) in the report bases
  std::vector<FqMatrix> induced;
};
QuasiIsoReport quasi_iso_check(const GradedComplex& x,
                               const GradedComplex& y, const ChainMap& f);

// which maps count as morphisms in a solve
enum class HomFlavor { linear, left_modules, bimodules };

// basis of the space of maps m -> n (column-convention matrices dim(n) x
// dim(m)) commuting with the declared actions.  bimodules restricts to
// maps commuting with the identity components only when identity_only is
// set (maps of bimodules over the degree-one subalgebras).
std::vector<FqMatrix> hom_space(const GradedBimodule& m,
                                const GradedBimodule& n, HomFlavor flavor,
                                bool identity_only = false);

struct ContractReport {
  bool contractible = false;
  std::string violation;
  int lo = 0;
  // h[k]: X_{lo+k} -> X_{lo+k+1} with d h + h d = id when contractible
  std::vector<FqMatrix> h;
};
ContractReport contractible_check(const GradedComplex& x, HomFlavor flavor);

// One balanced tensor block X_i (x) Y_j over the middle algebra: the
// quotient of the pairwise span by the balancing relators, with its
// canonical sparse projection.
struct BalancedBlock {
  size_t xi = 0, yj = 0;
  size_t offset = 0;  // first coordinate inside the output term
  size_t qdim = 0;
  // ambient index x * dim(Y_j) + y carried by each quotient coordinate
  std::vector<uint32_t> free_cols;
  SparseElim relators;
};

struct TensorResult {
  GradedComplex total;
  std::vector<std::vector<BalancedBlock>> blocks;  // per output term

  // image of an ambient pair vector inside the named output term,
  // embedded at the block offset
  FqVec project(size_t term, size_t block, const SparseVec& ambient) const;
};

// X (x)_{A'} Y with the usual sign d(x (x) y) = dx (x) y + (-1)^i x (x) dy.
// The right algebra of X must equal the left algebra of Y
// (MiddleAlgebraMismatch).  The result is an (A, A'')-bimodule complex
// graded by products of components.
TensorResult tensor_over(const GradedComplex& x, const GradedComplex& y);

enum class DualFlavor { left_algebra, base_field };

struct DualResult {
  GradedComplex total;
  // functionals[k][t]: the t-th basis vector of term k of the dual, as a
  // matrix sending a module column to an algebra (or scalar) column
  std::vector<std::vector<FqMatrix>> functionals;
};

// left_algebra: degree n of the result is Hom_A(X_{-n}, A), which needs
// every term projective as a left module (NotProjective carries the
// failing degree); base_field: plain linear duals.  Components of degree
// g collect the functionals pairing X_{g^{-1}} into degree one, sides
// swap, and differentials are precompositions with the sign (-1)^n.
DualResult dual_complex(const GradedComplex& x, DualFlavor flavor);

struct DerivedReport {
  bool derived = false;
  bool rickard = false;
  std::string violation;
  std::vector<size_t> xy_homology;  // per degree, lowest first
  std::vector<size_t> yx_homology;
};

// Y := the left-algebra dual of X.  derived: X (x)_{A'} Y and Y (x)_A X
// have homology the regular bimodules in degree zero, matched by the
// evaluation chain map on the first side and a solved bimodule chain map
// on the second.  rickard: additionally the cones of both maps are
// contractible through bimodule homotopies.  Grading is carried through
// every constructed object.
DerivedReport derived_equivalence_check(const GradedComplex& x,
                                        bool attempt_rickard = true);

// Transport of the reduced centralizer through a bimodule complex: for
// each homogeneous basis element c of C_A(A_1), solve for c' in
// C_{A'}(A'_1) of the same degree with (left mult by c) homotopic to
// (right mult by c') as maps of complexes of bimodules over the identity
// components, allowing a graded-radical correction on the c side.  The
// assignment descends to the reduced centralizers and is verified there
// as a graded isomorphism intertwining the unit-conjugation actions.
struct CbarTransport {
  CbarResult src;   // of the shared left grading
  CbarResult dst;   // of the shared right grading
  FqMatrix map;     // src.cbar coords -> dst.cbar coords
  GradedMapReport report;
};
CbarTransport induced_cbar_iso(const GradedComplex& x);

}  // namespace bf
