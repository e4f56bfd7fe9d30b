#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bf/algebra.hpp"
#include "bf/group.hpp"

namespace bf {

struct CharMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotFixed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BrauerCorrespondentNotUnique : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// finite group acting on an algebra by automorphisms, one column-action
// matrix per group element
struct GActedAlgebra {
  Algebra alg;
  Group grp;
  std::vector<FqMatrix> act;
  bool permutes_basis = false;  // every matrix permutes the basis
  // when permutes_basis, perm[g][j] is the basis index act[g] sends j to
  std::vector<std::vector<size_t>> perm;
};

// verifies the identity matrix at the identity, the automorphism
// property on generators, and the action law, then wraps; detects
// basis-permutation actions for fast paths
GActedAlgebra make_acted(Algebra alg, Group grp, std::vector<FqMatrix> act);

// G acting by conjugation on the group algebra of a normal subgroup N
// (N as a sorted list of G-indices)
GActedAlgebra conjugation_action(const Fq& F, const Group& G,
                                 const std::vector<uint32_t>& N);

// common solution space of q*a = a over q in Q, as a canonical subspace;
// verified to be a unital subalgebra, and for permutation actions the
// dimension is cross-checked against the orbit count
Subspace fixed_points(const GActedAlgebra& A, const std::vector<uint32_t>& Q);

// sum of the translates of a over representatives of Q/R; a must be
// R-fixed (NotFixed otherwise); the result is verified Q-fixed and
// independent of the representative choice
FqVec relative_trace(const GActedAlgebra& A, const std::vector<uint32_t>& Q,
                     const std::vector<uint32_t>& R, const FqVec& a);

// A(Q) = A^Q / (sum of relative traces from the maximal subgroups of Q),
// for Q a p-subgroup in characteristic p (CharMismatch otherwise)
struct BrauerQuotient {
  SubAlgebraView fixed;      // A^Q inside A
  Subspace trace_ideal;      // in the coordinates of fixed.alg
  QuotientAlgebraView quot;  // fixed.alg -> A(Q)
};
BrauerQuotient brauer_quotient(const GActedAlgebra& A,
                               const std::vector<uint32_t>& Q);

// the Brauer map on a group algebra under conjugation: truncation to the
// centralizer of Q.  Checked against brauer_quotient through the
// canonical identification of the quotient with the centralizer span.
struct GroupBrauerMap {
  std::vector<uint32_t> centralizer;  // sorted G-indices
  FqMatrix trunc;                     // on kG, kills non-centralizing basis
};
GroupBrauerMap brauer_map_on_group_algebra(const Fq& F, const Group& G,
                                           const std::vector<uint32_t>& Q);

// defect group of a block e of the span of N (N sorted G-indices, e in
// kN coordinates): the unique largest p-subgroup class with nonzero
// Brauer image, returned as sorted G-indices.  Cross-checked both ways:
// the image is nonzero exactly for subgroups conjugate into the result.
std::vector<uint32_t> defect_group(const Fq& F, const Group& G,
                                   const std::vector<uint32_t>& N,
                                   const FqVec& e);

// block correspondence across the normalizer of the defect group,
// matched through the Brauer map on block idempotents
struct HarrisKnorr {
  std::vector<uint32_t> Q;          // defect group of b, sorted G-indices
  std::vector<uint32_t> Gp;         // N_G(Q)
  std::vector<uint32_t> Np;         // N cap N_G(Q)
  FqVec bp;                         // correspondent of b, in k[Np] coords
  std::vector<FqVec> blocks_over;   // blocks of kG covering b
  std::vector<FqVec> blocks_local;  // blocks of k[Gp] covering bp
  std::vector<size_t> pairing;      // blocks_over[i] <-> blocks_local[...]
};
HarrisKnorr harris_knorr(const Fq& F, const Group& G,
                         const std::vector<uint32_t>& N, const FqVec& b);

// the compatibility square between tensor powers of the Brauer
// construction for one factor and the Brauer construction of the tensor
// power:  (A^Q)^(x)n -> (A(x)n)^(Q^n)  over  A(Q)^(x)n -> (A(x)n)(Q^n).
// Horizontal maps must be algebra isomorphisms and the square must
// commute on every basis vector.
struct TensorDiagramReport {
  bool ok = true;
  std::string violation;
  size_t fixed_dim = 0;  // dim A^Q
  size_t quot_dim = 0;   // dim A(Q)
};
TensorDiagramReport tensor_brauer_diagram_check(const GActedAlgebra& A,
                                                const std::vector<uint32_t>& Q,
                                                size_t n);

}  // namespace bf
