#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bf/fq.hpp"

namespace bf {

// Finite group stored by its multiplication table.  Element 0 is always
// the identity.  Subsets of the group (subgroups, classes, cosets) are
// sorted vectors of element indices.
class Group {
public:
  Group() = default;  // empty placeholder; build via the named constructors

  // table[a][b] = a*b; verified (identity at 0, Latin square, and
  // associativity, exhaustively up to order 256, sampled above).
  static Group from_table(std::vector<std::vector<uint32_t>> table,
                          std::vector<std::string> names = {});

  // Closure of permutations on {0..degree-1} under composition
  // (a*b)(x) = b(a(x)).  Elements are discovered breadth-first from the
  // identity, each level sorted by permutation image, so the indexing
  // is independent of generator order.
  static Group from_permutations(std::vector<std::vector<uint32_t>> gens,
                                 uint32_t degree);

  static Group symmetric(uint32_t n);
  static Group alternating(uint32_t n);
  static Group cyclic(uint32_t n);

  uint32_t order() const { return n_; }
  uint32_t mul(uint32_t a, uint32_t b) const { return table_[a * n_ + b]; }
  uint32_t inv(uint32_t a) const { return inv_[a]; }
  // g x g^-1
  uint32_t conj(uint32_t g, uint32_t x) const {
    return mul(mul(g, x), inv_[g]);
  }
  uint32_t elt_order(uint32_t a) const;
  uint32_t exponent() const;

  const std::string& name(uint32_t a) const { return names_[a]; }
  bool has_perms() const { return !perms_.empty(); }
  const std::vector<uint32_t>& perm(uint32_t a) const { return perms_[a]; }
  std::optional<uint32_t> index_of_perm(const std::vector<uint32_t>& p) const;

  std::vector<uint32_t> closure(std::vector<uint32_t> gens) const;
  bool is_subgroup(const std::vector<uint32_t>& h) const;
  bool is_normal(const std::vector<uint32_t>& h) const;
  std::vector<uint32_t> conjugate_set(uint32_t g,
                                      const std::vector<uint32_t>& s) const;
  bool are_conjugate(const std::vector<uint32_t>& a,
                     const std::vector<uint32_t>& b) const;

  std::vector<std::vector<uint32_t>> conjugacy_classes() const;
  std::vector<uint32_t> center() const;
  std::vector<uint32_t> centralizer(const std::vector<uint32_t>& s) const;
  std::vector<uint32_t> normalizer(const std::vector<uint32_t>& h) const;

  // all subgroups, by repeated joins of cyclic subgroups; meant for
  // small groups
  std::vector<std::vector<uint32_t>> subgroups() const;
  // a Sylow p-subgroup, then every p-subgroup as a subgroup of one of
  // its conjugates
  std::vector<uint32_t> sylow(uint32_t p) const;
  std::vector<std::vector<uint32_t>> p_subgroups(uint32_t p) const;
  // representatives of conjugacy classes of p-subgroups, increasing order,
  // first-discovered representative
  std::vector<std::vector<uint32_t>> p_subgroup_classes(uint32_t p) const;

private:
  uint32_t n_ = 0;
  std::vector<uint32_t> table_;
  std::vector<uint32_t> inv_;
  std::vector<std::string> names_;
  std::vector<std::vector<uint32_t>> perms_;

  void finish(bool verify);
};

// G/N for normal N; cosets indexed by increasing minimal element, so the
// identity coset is 0.
struct Quotient {
  Group group;
  std::vector<uint32_t> proj;                  // element of G -> coset index
  std::vector<std::vector<uint32_t>> cosets;   // sorted element lists
  std::vector<uint32_t> section;               // coset -> minimal element
};

Quotient quotient(const Group& G, const std::vector<uint32_t>& N);

// subgroups J with N <= J <= G, N normal, via the subgroup lattice of G/N
std::vector<std::vector<uint32_t>> subgroups_between(
    const Group& G, const std::vector<uint32_t>& N);

// index (a, b) -> a * |B| + b
Group direct_product(const Group& A, const Group& B);

// restriction of G to a subgroup; elems must be sorted and closed.
// Returned indices follow the sorted order of elems, and the map back
// into G is elems itself.
Group sub_group(const Group& G, const std::vector<uint32_t>& elems);

// generator-image backtracking; returns images phi[a] with
// phi(ab) = phi(a)phi(b), or nullopt
std::optional<std::vector<uint32_t>> find_isomorphism(const Group& A,
                                                      const Group& B);

// small generating set, chosen greedily in index order
std::vector<uint32_t> generating_set(const Group& G);

// all n! permutations of {0..n-1} as image tuples, lexicographic
std::vector<std::vector<uint32_t>> all_perms(uint32_t n);

// G^n x| Sigma for a permutation group Sigma on n points, with
// sigma acting by place permutation: (t * u)_i = t_i u_{sigma^-1(i)}.
// Elements are encoded tuple-major: the tuple in mixed radix with the
// first slot slowest, then the index of sigma in the lexicographic
// ordering of its image tuples.
struct WreathGroup {
  Group grp;
  uint32_t base = 1;  // |G|
  uint32_t n = 1;
  std::vector<std::vector<uint32_t>> perms;  // lex-sorted image tuples

  uint32_t encode(const std::vector<uint32_t>& tuple, uint32_t sigma) const;
  std::vector<uint32_t> tuple_of(uint32_t x) const;
  uint32_t sigma_of(uint32_t x) const {
    return x % uint32_t(perms.size());
  }
};

// full wreath product G wr S_n
WreathGroup wreath_group(const Group& G, uint32_t n);
// wreath by a subgroup of S_n, given by its image tuples (any order;
// must contain the identity and be closed under composition)
WreathGroup wreath_group(const Group& G, uint32_t n,
                         std::vector<std::vector<uint32_t>> perms);

}  // namespace bf
