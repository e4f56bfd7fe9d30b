#pragma once

#include "bf/complexes.hpp"
#include "bf/group.hpp"

namespace bf {

struct DimensionCap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr size_t kWreathDimCap = 4000;

// Koszul sign of a place permutation acting on tensor factors with
// homological degrees d_1..d_n: -1 raised to the number of pairs k < l
// with sigma(k) > sigma(l) and both degrees odd.
struct SignCocycle {
  uint32_t n = 1;
  // sigma as an image tuple on {0..n-1}; returns +1 or -1
  int eval(const std::vector<uint32_t>& sigma,
           const std::vector<int>& degs) const;
};

// Builds the evaluator and, for n <= 4, exhaustively verifies the
// normalization at the identity and the composition law
// eps_{sigma tau}(d) = eps_sigma(tau.d) eps_tau(d).
SignCocycle sign_cocycle(uint32_t n);

// C^{(x)n} for the base C of a graded crossed product: graded by degree
// tuples (first factor slowest) and acted on by the wreath group, where
// ((g_1..g_n), sigma) permutes the factors by sigma and then applies the
// g_i actions slotwise.  The tuple components sit inside the wreath
// group as the sigma = id elements; all other components are zero.
struct PowerBase {
  Algebra alg;                  // C^{(x)n}
  WreathGroup wg;
  std::vector<Subspace> comp;   // per wreath group element
  std::vector<FqMatrix> act;    // per wreath group element, validated
};

PowerBase power_base(const OverC& c, uint32_t n);
PowerBase power_base(const OverC& c, uint32_t n,
                     std::vector<std::vector<uint32_t>> perms);

// A wr Sigma = A^{(x)n} (x) F Sigma with the twisted product
// ((a) (x) sigma)((b) (x) tau) = (a_i b_{sigma^-1(i)})_i (x) sigma tau.
// Basis index: (tensor multi-index, first factor slowest) * |Sigma| + s.
struct WreathAlgebra {
  uint32_t n = 1;
  WreathGroup wg;       // grading group
  GradingRef gr;        // component at ((g), sigma) is (x)_i A_{g_i} (x) sigma
  CrossedUnits units;
  size_t da = 0;        // dim A
  size_t dim = 0;       // da^n * |Sigma|

  size_t index(const std::vector<size_t>& t, uint32_t s) const;
};

// Both wreath algebras of a pair of crossed products sharing the base C,
// together with C^{(x)n} mapped into both via the tensor powers of the
// structure maps.
struct WreathPair {
  WreathAlgebra left, right;
  OverCRef joint;
  GradingRef a, a2;  // the inputs, kept for validation of later inputs
  OverCRef c;
};

// Single-algebra form: c must map into a on both sides.
WreathAlgebra wreath_algebra(const GradingRef& a, const OverCRef& c,
                             uint32_t n, size_t cap = kWreathDimCap);
WreathAlgebra wreath_algebra(const GradingRef& a, const OverCRef& c,
                             uint32_t n,
                             std::vector<std::vector<uint32_t>> perms,
                             size_t cap = kWreathDimCap);

WreathPair wreath_pair(const GradingRef& a, const GradingRef& a2,
                       const OverCRef& c, uint32_t n,
                       size_t cap = kWreathDimCap);
WreathPair wreath_pair(const GradingRef& a, const GradingRef& a2,
                       const OverCRef& c, uint32_t n,
                       std::vector<std::vector<uint32_t>> perms,
                       size_t cap = kWreathDimCap);

// Diagonal inside (A wr Sigma) (x) (A' wr Sigma)^op: the span of the
// basis pairs whose permutation parts are mutually inverse.  iso maps it
// onto (A (x) A'^op) wr Sigma and is verified unital, multiplicative,
// bijective, and degree-preserving for the wreath gradings carried by
// the first tensor factors.
struct WreathDiagonal {
  SubAlgebraView view;    // inside (A wr Sigma) (x) (A' wr Sigma)^op
  WreathAlgebra target;   // (A (x) A'^op) wr Sigma
  FqMatrix iso;           // view coordinates -> target coordinates
};

WreathDiagonal diagonal_subalgebra(const WreathPair& wp,
                                   size_t cap = kWreathDimCap);

// A balanced induced space (Y (x)_S Z for a middle algebra S) presented
// as a quotient of the raw pair space, with a verified bijection onto a
// wreath object.
struct BalancedInduced {
  size_t ambient = 0;               // raw pair dimension
  SparseElim rel;                   // balanced relators
  std::vector<uint32_t> free_cols;  // quotient coordinates
  FqMatrix map;                     // quotient -> wreath object
};

// M wr Sigma for a graded bimodule M over C, with the isomorphisms
// f: (A wr Sigma) (x)_{B^{(x)n}} M_1^{(x)n} -> M wr Sigma and
// g: M_1^{(x)n} (x)_{B'^{(x)n}} (A' wr Sigma) -> M wr Sigma,
// where M_1 is the identity component.  Both are checked well defined,
// bijective, degree-preserving and linear for the structures both sides
// carry; they agree with the canonical identification on the identity
// components.
struct WreathBimodule {
  GradedBimodule mod;
  BalancedInduced f, g;
};

WreathBimodule wreath_bimodule(const GradedBimodule& m, const WreathPair& wp,
                               size_t cap = kWreathDimCap);

// X^{(x)n} with the Koszul differential and the signed place-permutation
// action of Sigma on every term.  Terms collect the degree tuples
// summing to each total, in lexicographic order.
struct TermLayout {
  std::vector<std::vector<int>> tuples;
  std::vector<size_t> offsets;  // block starts, one per tuple
  size_t dim = 0;
};

struct TensorPowerComplex {
  int lo = 0;
  uint32_t n = 1;
  std::vector<TermLayout> layout;
  std::vector<FqMatrix> diff;                 // diff[k]: term k+1 -> term k
  std::vector<std::vector<FqMatrix>> action;  // [sigma][term]

  int hi() const { return lo + int(layout.size()) - 1; }
};

// Verifies d(x)d = 0 and that every sigma action commutes with the
// differential (throws logic_error on either; they hold by construction).
TensorPowerComplex tensor_power_complex(const GradedComplex& x, uint32_t n);
TensorPowerComplex tensor_power_complex(const GradedComplex& x, uint32_t n,
                                        std::vector<std::vector<uint32_t>> perms);

// X wr Sigma: terms (X^{(x)n})_N (x) F Sigma as graded bimodules over
// C^{(x)n} for (A wr Sigma, A' wr Sigma), differential from the Koszul
// one.  induced[k] is the verified term-wise isomorphism from
// (A wr Sigma) (x)_{B^{(x)n}} (X_1^{(x)n})_N, whose squares against the
// differentials are also checked, X_1 being the identity component
// complex.
struct WreathComplex {
  GradedComplex total;
  TensorPowerComplex power;
  std::vector<BalancedInduced> induced;
};

WreathComplex wreath_complex(const GradedComplex& x, const WreathPair& wp,
                             size_t cap = kWreathDimCap);

}  // namespace bf
