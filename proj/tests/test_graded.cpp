#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bf/algebra.hpp"
#include "bf/graded.hpp"
#include "bf/group.hpp"

using namespace bf;

namespace {

// indices of the even permutations; the group must carry permutations
std::vector<uint32_t> even_part(const Group& G) {
  std::vector<uint32_t> out;
  for (uint32_t g = 0; g < G.order(); ++g) {
    const auto& p = G.perm(g);
    uint32_t inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) ++inv;
    if (inv % 2 == 0) out.push_back(g);
  }
  return out;
}

FqVec indicator(const Fq& F, size_t dim, const std::vector<uint32_t>& S) {
  (void)F;
  FqVec v(dim, 0);
  for (uint32_t s : S) v[s] = 1;
  return v;
}

FqVec kron_vec(const Fq& F, const FqVec& u, const FqVec& v) {
  FqVec w(u.size() * v.size(), 0);
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) w[i * v.size() + j] = F.mul(u[i], v[j]);
  }
  return w;
}

// the unique algebra with basis 1, x and x^2 = 0
Algebra dual_numbers(const Fq& F) {
  std::vector<SparseVec> products(4);
  products[0 * 2 + 0] = {{0, 1}};
  products[0 * 2 + 1] = {{1, 1}};
  products[1 * 2 + 0] = {{1, 1}};
  products[1 * 2 + 1] = {};
  return Algebra::from_structure(F, std::move(products), 2, unit_vec(2, 0),
                                 {"1", "x"}, {});
}

}  // namespace

TEST_CASE("coset gradings of group algebras") {
  Group S3 = Group::symmetric(3);
  std::vector<uint32_t> A3 = even_part(S3);
  REQUIRE(A3.size() == 3);

  const Fq& F3 = Fq::get(3, 1);
  Algebra kS3 = Algebra::group_algebra(F3, S3);

  BlockExtension be = grade_by_quotient(kS3, S3, A3, kS3.unit());
  CHECK(be.view.alg.dim() == 6);
  CHECK(be.quot.group.order() == 2);
  REQUIRE(be.gr.comp.size() == 2);
  CHECK(be.gr.comp[0].dim() == 3);
  CHECK(be.gr.comp[1].dim() == 3);
  verify_grading(be.gr);

  // the whole group as the normal subgroup: everything in one component
  std::vector<uint32_t> all(S3.order());
  for (uint32_t g = 0; g < S3.order(); ++g) all[g] = g;
  BlockExtension whole = grade_by_quotient(kS3, S3, all, kS3.unit());
  CHECK(whole.gr.grade.order() == 1);
  CHECK(whole.gr.comp[0].dim() == 6);

  // the 2-dimensional block cut out by the subgroup-sum idempotent:
  // both components collapse to a line
  const Fq& F4 = Fq::get(2, 2);
  Algebra kS3_4 = Algebra::group_algebra(F4, S3);
  FqVec b = indicator(F4, 6, A3);
  REQUIRE(kS3_4.is_idempotent(b));
  BlockExtension bx = grade_by_quotient(kS3_4, S3, A3, b);
  CHECK(bx.view.alg.dim() == 2);
  CHECK(bx.gr.comp[0].dim() == 1);
  CHECK(bx.gr.comp[1].dim() == 1);

  // a character idempotent of the rotation subgroup that conjugation
  // swaps with its partner is rejected
  uint32_t g3 = 0;
  for (uint32_t g = 0; g < S3.order(); ++g)
    if (S3.elt_order(g) == 3) {
      g3 = g;
      break;
    }
  FqVec echi(6, 0);
  echi[0] = 1;
  echi[g3] = 3;  // omega^2
  echi[S3.mul(g3, g3)] = 2;  // omega
  REQUIRE(kS3_4.is_idempotent(echi));
  CHECK_THROWS_AS(grade_by_quotient(kS3_4, S3, A3, echi), NotInvariant);

  // support outside the subgroup is rejected before anything else
  CHECK_THROWS_AS(grade_by_quotient(kS3, S3, A3, indicator(F3, 6, all)),
                  std::invalid_argument);

  // unit placed in the wrong component
  Grading bad;
  bad.alg = Algebra::group_algebra(F3, Group::cyclic(2));
  bad.grade = Group::cyclic(2);
  bad.comp = {Subspace::span(F3, {unit_vec(2, 1)}, 2),
              Subspace::span(F3, {unit_vec(2, 0)}, 2)};
  CHECK_THROWS_AS(verify_grading(bad), std::invalid_argument);
}

TEST_CASE("crossed product units") {
  Group S3 = Group::symmetric(3);
  std::vector<uint32_t> A3 = even_part(S3);
  const Fq& F3 = Fq::get(3, 1);
  Algebra kS3 = Algebra::group_algebra(F3, S3);
  BlockExtension be = grade_by_quotient(kS3, S3, A3, kS3.unit());

  CrossedUnits cu = crossed_product_check(be.gr);
  for (uint32_t x = 0; x < 2; ++x) {
    CHECK(be.gr.comp[x].contains(cu.unit[x]));
    CHECK(be.gr.comp[be.gr.grade.inv(x)].contains(cu.unit_inv[x]));
    CHECK(be.gr.alg.mul(cu.unit[x], cu.unit_inv[x]) == be.gr.alg.unit());
    CHECK(be.gr.alg.mul(cu.unit_inv[x], cu.unit[x]) == be.gr.alg.unit());
  }

  const Fq& F4 = Fq::get(2, 2);
  Algebra kS3_4 = Algebra::group_algebra(F4, S3);
  BlockExtension bx = grade_by_quotient(kS3_4, S3, A3, indicator(F4, 6, A3));
  CHECK_NOTHROW(crossed_product_check(bx.gr));

  // a zero component can never hold a unit
  Grading zc;
  zc.alg = Algebra::group_algebra(F3, Group::cyclic(2));
  zc.grade = Group::cyclic(2);
  zc.comp = {Subspace::full(F3, 2), Subspace(F3, 2)};
  verify_grading(zc);
  CHECK_THROWS_AS(crossed_product_check(zc), NotCrossedProduct);

  // nonzero component whose elements are all nilpotent
  Grading dn;
  dn.alg = dual_numbers(F3);
  dn.grade = Group::cyclic(2);
  dn.comp = {Subspace::span(F3, {unit_vec(2, 0)}, 2),
             Subspace::span(F3, {unit_vec(2, 1)}, 2)};
  verify_grading(dn);
  CHECK_THROWS_AS(crossed_product_check(dn), NotCrossedProduct);
}

TEST_CASE("graded radical") {
  Group S3 = Group::symmetric(3);
  std::vector<uint32_t> A3 = even_part(S3);

  // char 3: the radical of the rotation span sweeps out the full radical
  const Fq& F3 = Fq::get(3, 1);
  Algebra kS3 = Algebra::group_algebra(F3, S3);
  BlockExtension be = grade_by_quotient(kS3, S3, A3, kS3.unit());
  Subspace Jgr = graded_radical(be.gr);
  CHECK(Jgr.dim() == 4);
  CHECK(Jgr == Subspace::row_space(radical(kS3)));
  CHECK(Jgr.intersect(be.gr.comp[0]).dim() == 2);
  CHECK(Jgr.intersect(be.gr.comp[1]).dim() == 2);

  // coprime characteristic: semisimple identity component, nothing to sweep
  const Fq& F7 = Fq::get(7, 1);
  Algebra kS3_7 = Algebra::group_algebra(F7, S3);
  BlockExtension be7 = grade_by_quotient(kS3_7, S3, A3, kS3_7.unit());
  CHECK(graded_radical(be7.gr).dim() == 0);

  // the 2-dimensional block in char 2: its ungraded radical is a line,
  // but the identity component is a field, so the graded radical is zero
  const Fq& F4 = Fq::get(2, 2);
  Algebra kS3_4 = Algebra::group_algebra(F4, S3);
  BlockExtension bx = grade_by_quotient(kS3_4, S3, A3, indicator(F4, 6, A3));
  CHECK(radical(bx.gr.alg).rows() == 1);
  CHECK(graded_radical(bx.gr).dim() == 0);

  // tensor square: J_gr(A (x) A) = J_gr(A) (x) A + A (x) J_gr(A)
  Grading T = tensor_grading(be.gr, be.gr);
  CHECK(T.alg.dim() == 36);
  CHECK(T.grade.order() == 4);
  Subspace JT = graded_radical(T);
  CHECK(JT.dim() == 32);
  CHECK(36 - JT.dim() == (6 - Jgr.dim()) * (6 - Jgr.dim()));
  std::vector<FqVec> expect;
  for (size_t i = 0; i < Jgr.dim(); ++i)
    for (size_t j = 0; j < 6; ++j) {
      expect.push_back(kron_vec(F3, Jgr.basis().row(i), unit_vec(6, j)));
      expect.push_back(kron_vec(F3, unit_vec(6, j), Jgr.basis().row(i)));
    }
  CHECK(JT == Subspace::span(F3, expect, 36));

  // threefold tensor of a trivially graded algebra: codimension cubes
  const Fq& F2 = Fq::get(2, 1);
  Grading t1 = trivial_grading(Algebra::group_algebra(F2, Group::cyclic(2)));
  CHECK(graded_radical(t1).dim() == 1);
  Grading t3 = tensor_grading(tensor_grading(t1, t1), t1);
  CHECK(t3.alg.dim() == 8);
  CHECK(graded_radical(t3).dim() == 7);
}

TEST_CASE("degrees whose component product fills the identity component") {
  Group S3 = Group::symmetric(3);
  std::vector<uint32_t> A3 = even_part(S3);
  const Fq& F3 = Fq::get(3, 1);
  Algebra kS3 = Algebra::group_algebra(F3, S3);

  CHECK(dade_group(trivial_grading(kS3)) == std::vector<uint32_t>{0});

  // coset components of a full group algebra always multiply onto the
  // identity component
  BlockExtension be = grade_by_quotient(kS3, S3, A3, kS3.unit());
  CHECK(dade_group(be.gr) == std::vector<uint32_t>({0, 1}));

  const Fq& F4 = Fq::get(2, 2);
  Algebra kS3_4 = Algebra::group_algebra(F4, S3);
  BlockExtension bx = grade_by_quotient(kS3_4, S3, A3, indicator(F4, 6, A3));
  CHECK(dade_group(bx.gr) == std::vector<uint32_t>({0, 1}));

  // a square-zero line cannot reach the identity component
  Grading dn;
  dn.alg = dual_numbers(F3);
  dn.grade = Group::cyclic(2);
  dn.comp = {Subspace::span(F3, {unit_vec(2, 0)}, 2),
             Subspace::span(F3, {unit_vec(2, 1)}, 2)};
  CHECK(dade_group(dn) == std::vector<uint32_t>{0});
}

TEST_CASE("reduced centralizer of the identity component") {
  Group S3 = Group::symmetric(3);
  std::vector<uint32_t> A3 = even_part(S3);

  // char 2 block: the centralizer is the whole 2-dimensional block, its
  // radical has no homogeneous part, and the quotient is a twisted form
  // of the regular representation of the quotient group
  const Fq& F4 = Fq::get(2, 2);
  Algebra kS3_4 = Algebra::group_algebra(F4, S3);
  BlockExtension bx = grade_by_quotient(kS3_4, S3, A3, indicator(F4, 6, A3));
  CbarResult R = cbar(bx.gr);
  CHECK(R.cab.alg.dim() == 2);
  CHECK(R.quot.alg.dim() == 2);
  CHECK(R.dade == std::vector<uint32_t>({0, 1}));
  CHECK(R.cbar.grade.order() == 2);
  CHECK(R.cbar.comp[0].dim() == 1);
  CHECK(R.cbar.comp[1].dim() == 1);
  // the block is commutative, so conjugation acts trivially
  for (const auto& M : R.action) {
    FqMatrix I(F4, 2, 2);
    I(0, 0) = I(1, 1) = 1;
    CHECK(M == I);
  }
  // and it is isomorphic, as a graded algebra, to the group algebra of
  // the quotient group
  Group C2 = Group::cyclic(2);
  Algebra kC2 = Algebra::group_algebra(F4, C2);
  BlockExtension reg = grade_by_quotient(kC2, C2, {0}, kC2.unit());
  FqMatrix f(F4, 2, 2);
  f(0, 0) = f(1, 1) = 1;
  CHECK(verify_graded_iso(f, R.cbar, reg.gr).ok);

  // char 3 full group algebra: the odd-degree part of the centralizer is
  // the transposition sum, which squares to zero, so only the identity
  // degree survives even though the ambient coset components multiply
  // onto the full rotation span
  const Fq& F3 = Fq::get(3, 1);
  Algebra kS3 = Algebra::group_algebra(F3, S3);
  BlockExtension be = grade_by_quotient(kS3, S3, A3, kS3.unit());
  CHECK(dade_group(be.gr) == std::vector<uint32_t>({0, 1}));
  CbarResult R3 = cbar(be.gr);
  CHECK(R3.cab.alg.dim() == 4);
  CHECK(R3.quot.alg.dim() == 1);
  CHECK(R3.dade == std::vector<uint32_t>{0});
  CHECK(R3.cbar.grade.order() == 1);
  for (const auto& M : R3.action) {
    CHECK(M.rows() == 1);
    CHECK(M(0, 0) == 1);
  }

  // cyclic 6 in char 3: everything is commutative, both degrees survive
  Group C6 = Group::cyclic(6);
  std::vector<uint32_t> C3;
  for (uint32_t g = 0; g < 6; ++g)
    if (C6.elt_order(g) == 1 || C6.elt_order(g) == 3) C3.push_back(g);
  REQUIRE(C3.size() == 3);
  Algebra kC6 = Algebra::group_algebra(F3, C6);
  BlockExtension bc = grade_by_quotient(kC6, C6, C3, kC6.unit());
  CbarResult R6 = cbar(bc.gr);
  CHECK(R6.cab.alg.dim() == 6);
  CHECK(R6.quot.alg.dim() == 2);
  CHECK(R6.dade == std::vector<uint32_t>({0, 1}));
  CHECK(R6.quot.alg.dim() % R6.dade.size() == 0);

  // trivial grading: reduces the center modulo its radical, leaving one
  // line per block
  CbarResult Rz = cbar(trivial_grading(kS3));
  CHECK(Rz.cab.alg.dim() == 3);
  CHECK(Rz.quot.alg.dim() == 1);

  const Fq& F7 = Fq::get(7, 1);
  CbarResult Rz7 =
      cbar(trivial_grading(Algebra::group_algebra(F7, S3)));
  CHECK(Rz7.cab.alg.dim() == 3);
  CHECK(Rz7.quot.alg.dim() == 3);
}

TEST_CASE("graded map reports") {
  Group S3 = Group::symmetric(3);
  std::vector<uint32_t> A3 = even_part(S3);
  const Fq& F3 = Fq::get(3, 1);
  Algebra kS3 = Algebra::group_algebra(F3, S3);
  BlockExtension be = grade_by_quotient(kS3, S3, A3, kS3.unit());

  FqMatrix id(F3, 6, 6);
  for (size_t i = 0; i < 6; ++i) id(i, i) = 1;
  CHECK(verify_graded_iso(id, be.gr, be.gr).ok);

  // swapping the basis of the group algebra of order 2 moves the unit
  const Fq& F2 = Fq::get(2, 1);
  Group C2 = Group::cyclic(2);
  Algebra kC2 = Algebra::group_algebra(F2, C2);
  BlockExtension reg = grade_by_quotient(kC2, C2, {0}, kC2.unit());
  FqMatrix swp(F2, 2, 2);
  swp(0, 1) = swp(1, 0) = 1;
  GradedMapReport rep = verify_graded_iso(swp, reg.gr, reg.gr);
  CHECK_FALSE(rep.ok);
  CHECK(rep.violation == "unit not preserved");

  // exchanging the two factors of a Klein four group is an algebra
  // automorphism but moves the grading along the first factor
  Group V4 = direct_product(C2, C2);
  Algebra kV4 = Algebra::group_algebra(F2, V4);
  BlockExtension gv = grade_by_quotient(kV4, V4, {0, 1}, kV4.unit());
  FqMatrix fx(F2, 4, 4);
  fx(0, 0) = fx(2, 1) = fx(1, 2) = fx(3, 3) = 1;
  GradedMapReport repv = verify_graded_iso(fx, gv.gr, gv.gr);
  CHECK_FALSE(repv.ok);
  CHECK(repv.violation == "grade not preserved");

  // unital but not compatible with the product
  const Fq& F3b = Fq::get(3, 1);
  Algebra kC2_3 = Algebra::group_algebra(F3b, Group::cyclic(2));
  BlockExtension reg3 =
      grade_by_quotient(kC2_3, Group::cyclic(2), {0}, kC2_3.unit());
  FqMatrix nm(F3b, 2, 2);
  nm(0, 0) = 1;
  nm(0, 1) = 1;
  nm(1, 1) = 1;
  GradedMapReport repm = verify_graded_iso(nm, reg3.gr, reg3.gr);
  CHECK_FALSE(repm.ok);
  CHECK(repm.violation == "not multiplicative");

  // rank collapse is reported before anything else is tried
  FqMatrix lo(F3b, 2, 2);
  lo(0, 0) = 1;
  lo(0, 1) = 1;
  GradedMapReport repl = verify_graded_iso(lo, reg3.gr, reg3.gr);
  CHECK_FALSE(repl.ok);
  CHECK(repl.violation == "not bijective");

  // mismatched supplied actions
  FqMatrix i2(F3b, 2, 2);
  i2(0, 0) = i2(1, 1) = 1;
  FqMatrix tw(F3b, 2, 2);
  tw(0, 0) = 1;
  tw(1, 1) = 2;
  std::vector<FqMatrix> act_src = {i2, tw};
  std::vector<FqMatrix> act_dst = {i2, i2};
  GradedMapReport repe =
      verify_graded_iso(i2, reg3.gr, reg3.gr, &act_src, &act_dst);
  CHECK_FALSE(repe.ok);
  CHECK(repe.violation == "not equivariant");
  CHECK(verify_graded_iso(i2, reg3.gr, reg3.gr, &act_src, &act_src).ok);
}

TEST_CASE("tensor gradings") {
  Group S3 = Group::symmetric(3);
  std::vector<uint32_t> A3 = even_part(S3);
  const Fq& F4 = Fq::get(2, 2);
  Algebra kS3_4 = Algebra::group_algebra(F4, S3);
  BlockExtension bx = grade_by_quotient(kS3_4, S3, A3, indicator(F4, 6, A3));

  Grading T = tensor_grading(bx.gr, bx.gr);
  CHECK(T.alg.dim() == 4);
  CHECK(T.grade.order() == 4);
  for (auto& c : T.comp) CHECK(c.dim() == 1);
  CHECK_NOTHROW(crossed_product_check(T));
  CHECK(dade_group(T).size() == 4);
  CHECK(graded_radical(T).dim() == 0);

  CbarResult R = cbar(T);
  CHECK(R.quot.alg.dim() == 4);
  CHECK(R.dade.size() == 4);
}
