#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "bf/graded.hpp"
#include "bf/wreath.hpp"

using namespace bf;

namespace {

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

struct Fix {
  Group grp;
  std::vector<uint32_t> even;
  GradingRef a;
  OverCRef c;
};

// the full group algebra of S3 with the sign grading
Fix s3_sign_graded(uint32_t p, uint32_t m) {
  const Fq& F = Fq::get(p, m);
  Group S3 = Group::symmetric(3);
  Algebra kS3 = Algebra::group_algebra(F, S3);
  std::vector<uint32_t> A3 = even_part(S3);
  BlockExtension be = grade_by_quotient(kS3, S3, A3, kS3.unit());
  GradingRef a = share(std::move(be.gr));
  OverCRef c = centralizer_over_c(a);
  return Fix{std::move(S3), std::move(A3), a, c};
}

// the two-dimensional principal block of kS3 over GF(4)
Fix s3_block_gf4() {
  const Fq& F = Fq::get(2, 2);
  Group S3 = Group::symmetric(3);
  Algebra kS3 = Algebra::group_algebra(F, S3);
  std::vector<uint32_t> A3 = even_part(S3);
  FqVec b(6, 0);
  for (uint32_t x : A3) b[x] = 1;
  BlockExtension be = grade_by_quotient(kS3, S3, A3, b);
  GradingRef a = share(std::move(be.gr));
  OverCRef c = centralizer_over_c(a);
  return Fix{std::move(S3), std::move(A3), a, c};
}

Fix c2_gf3() {
  const Fq& F = Fq::get(3, 1);
  Group C2 = Group::cyclic(2);
  Algebra kC2 = Algebra::group_algebra(F, C2);
  BlockExtension be = grade_by_quotient(kC2, C2, {0}, kC2.unit());
  GradingRef a = share(std::move(be.gr));
  OverCRef c = centralizer_over_c(a);
  return Fix{std::move(C2), {0}, a, c};
}

// two-term complex A -> A given by multiplication with the A3 class sum,
// which is central, lives in degree zero, and squares to zero in
// characteristic three
GradedComplex class_sum_complex(const Fix& fx) {
  FqVec csum(fx.a->alg.dim(), 0);
  for (uint32_t x : fx.even) csum[x] = 1;
  FqMatrix d = fx.a->alg.left_mult(csum);
  REQUIRE(d.mul(d).is_zero());
  return make_complex(0, {regular_bimodule(fx.a), regular_bimodule(fx.a)},
                      {d});
}

std::vector<size_t> homology_dims(const GradedComplex& x) {
  HomologyReport h = homology(x);
  std::vector<size_t> out;
  for (auto& t : h.terms) out.push_back(t.dim);
  return out;
}

const std::vector<std::vector<uint32_t>> kCyc3 = {
    {0, 1, 2}, {1, 2, 0}, {2, 0, 1}};

}  // namespace

TEST_CASE("sign cocycle values and composition law") {
  SignCocycle s2 = sign_cocycle(2);
  CHECK(s2.eval({1, 0}, {-1, -1}) == -1);
  CHECK(s2.eval({1, 0}, {-1, 1}) == -1);
  CHECK(s2.eval({1, 0}, {0, 1}) == 1);
  CHECK(s2.eval({1, 0}, {2, 4}) == 1);
  CHECK(s2.eval({0, 1}, {-1, -1}) == 1);

  SignCocycle s3 = sign_cocycle(3);
  // a 3-cycle has two inversions, so odd cubes stay put
  CHECK(s3.eval({1, 2, 0}, {-1, -1, -1}) == 1);
  CHECK(s3.eval({2, 0, 1}, {1, 1, 1}) == 1);
  // the full reversal has three
  CHECK(s3.eval({2, 1, 0}, {1, 1, 1}) == -1);
  CHECK(s3.eval({2, 1, 0}, {1, 0, 1}) == -1);
  CHECK(s3.eval({2, 1, 0}, {0, 1, 0}) == 1);

  sign_cocycle(4);  // construction re-verifies the law exhaustively

  CHECK_THROWS_AS(sign_cocycle(0), std::invalid_argument);
  CHECK_THROWS_AS(sign_cocycle(7), std::invalid_argument);
  CHECK_THROWS_AS(s2.eval({1, 0, 2}, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(s2.eval({1, 0}, {1}), std::invalid_argument);
}

TEST_CASE("wreath algebra multiplies slotwise through the permutation") {
  Fix fx = s3_sign_graded(3, 1);
  WreathAlgebra wa = wreath_algebra(fx.a, fx.c, 2);
  REQUIRE(wa.dim == 72);
  REQUIRE(wa.da == 6);
  CHECK(wa.gr->grade.order() == 8);
  CHECK(wa.units.unit.size() == 8);

  // every graded component of (kS3 wr S2) has one basis tuple per pair
  // of coset representatives
  for (uint32_t w = 0; w < 8; ++w) CHECK(wa.gr->comp[w].dim() == 9);

  // ((g_i (x) g_j) (x) sigma)((g_k (x) g_l) (x) tau)
  //   = (g_i g_{sigma^-1(k..)} ...) (x) sigma tau, exhaustively
  const Group& S3 = fx.grp;
  for (size_t x = 0; x < 72; ++x) {
    uint32_t sx = uint32_t(x % 2);
    uint32_t i = uint32_t(x / 2 / 6), j = uint32_t(x / 2 % 6);
    for (size_t y = 0; y < 72; ++y) {
      uint32_t sy = uint32_t(y % 2);
      uint32_t k = uint32_t(y / 2 / 6), l = uint32_t(y / 2 % 6);
      uint32_t u0 = S3.mul(i, sx ? l : k);
      uint32_t u1 = S3.mul(j, sx ? k : l);
      uint32_t exp = (u0 * 6 + u1) * 2 + (sx ^ sy);
      SparseVec want{{exp, FqElt(1)}};
      CHECK(wa.gr->alg.product(uint32_t(x), uint32_t(y)) == want);
    }
  }
}

TEST_CASE("wreath algebra of a block is a crossed product of the "
          "hyperoctahedral grading group") {
  Fix fx = s3_block_gf4();
  REQUIRE(fx.a->alg.dim() == 2);

  WreathAlgebra wa = wreath_algebra(fx.a, fx.c, 2);
  CHECK(wa.dim == 8);
  CHECK(wa.gr->grade.order() == 8);
  CHECK(wa.gr->grade.exponent() == 4);  // C2 wr S2 is dihedral of order 8
  for (uint32_t w = 0; w < 8; ++w) CHECK(wa.gr->comp[w].dim() == 1);

  WreathAlgebra w3 = wreath_algebra(fx.a, fx.c, 3);
  CHECK(w3.dim == 48);
  CHECK(w3.gr->grade.order() == 48);
  for (uint32_t w = 0; w < 48; ++w) CHECK(w3.gr->comp[w].dim() == 1);
}

TEST_CASE("wreath pair and power base") {
  Fix fx = c2_gf3();
  WreathPair wp = wreath_pair(fx.a, fx.a, fx.c, 2);
  CHECK(wp.left.dim == 8);
  CHECK(wp.joint->cal.dim() == 4);
  CHECK(wp.joint->into_left.rows() == 8);
  CHECK(wp.joint->into_left.cols() == 4);

  PowerBase pb = power_base(*fx.c, 2);
  CHECK(pb.alg.dim() == 4);
  CHECK(pb.act.size() == 8);
  // the components live over the identity permutation only
  size_t total = 0;
  for (uint32_t w = 0; w < 8; ++w) {
    if (pb.wg.sigma_of(w) != 0) CHECK(pb.comp[w].dim() == 0);
    total += pb.comp[w].dim();
  }
  CHECK(total == 4);

  // the pure swap acts by exchanging the tensor factors
  uint32_t sw = pb.wg.encode({0, 0}, 1);
  const Fq& F = pb.alg.field();
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      CHECK(pb.act[sw](j * 2 + i, i * 2 + j) == FqElt(1));
  (void)F;
}

TEST_CASE("diagonal of a wreath pair is the wreath of the tensor product") {
  Fix fx = c2_gf3();
  WreathPair wp = wreath_pair(fx.a, fx.a, fx.c, 2);
  WreathDiagonal d = diagonal_subalgebra(wp);
  CHECK(d.view.alg.dim() == 32);
  CHECK(d.target.dim == 32);
  CHECK(d.target.da == 4);

  Fix bx = s3_block_gf4();
  WreathPair bp = wreath_pair(bx.a, bx.a, bx.c, 2);
  WreathDiagonal bd = diagonal_subalgebra(bp);
  CHECK(bd.view.alg.dim() == 32);
  CHECK(bd.target.dim == 32);
}

TEST_CASE("wreath of the regular bimodule is the regular bimodule") {
  Fix fx = s3_block_gf4();
  WreathPair wp = wreath_pair(fx.a, fx.a, fx.c, 2);
  WreathBimodule wm = wreath_bimodule(regular_bimodule(fx.a), wp);
  CHECK(wm.mod.dim == 8);
  // the action tables coincide with the wreath algebra multiplication
  for (size_t x = 0; x < 8; ++x)
    for (size_t u = 0; u < 8; ++u) {
      CHECK(wm.mod.lact[x * 8 + u] ==
            wp.left.gr->alg.product(uint32_t(x), uint32_t(u)));
      CHECK(wm.mod.ract[x * 8 + u] ==
            wp.left.gr->alg.product(uint32_t(u), uint32_t(x)));
    }
  // identity component of the block is the scalars, so the induced
  // domains are already minimal
  CHECK(wm.f.ambient == 8);
  CHECK(wm.f.free_cols.size() == 8);
  CHECK(wm.g.ambient == 8);
  CHECK(wm.g.free_cols.size() == 8);

  Fix f3 = s3_sign_graded(3, 1);
  WreathPair w3 = wreath_pair(f3.a, f3.a, f3.c, 2);
  WreathBimodule m3 = wreath_bimodule(regular_bimodule(f3.a), w3);
  CHECK(m3.mod.dim == 72);
  for (size_t x = 0; x < 72; ++x)
    for (size_t u = 0; u < 72; ++u)
      CHECK(m3.mod.lact[x * 72 + u] ==
            w3.left.gr->alg.product(uint32_t(x), uint32_t(u)));
  for (uint32_t w = 0; w < 8; ++w) CHECK(m3.mod.comp[w].dim() == 9);
  // kA3 (x) kA3 has dimension nine on each side of the pair space
  CHECK(m3.f.ambient == 72 * 9);
  CHECK(m3.f.free_cols.size() == 72);
  CHECK(m3.g.ambient == 72 * 9);
  CHECK(m3.g.free_cols.size() == 72);
}

TEST_CASE("wreath of an inner twist") {
  Fix fx = s3_sign_graded(3, 1);
  const Fq& F = fx.a->alg.field();
  const Algebra& A = fx.a->alg;
  // conjugation by a transposition fixes each component of the sign
  // grading, so the twisted right action only commutes with the
  // centralizer after regrading by the odd degree
  uint32_t t = 0;
  for (uint32_t x = 0; x < 6; ++x)
    if (fx.grp.elt_order(x) == 2) {
      t = x;
      break;
    }
  FqMatrix u(F, 6, 6);
  for (uint32_t x = 0; x < 6; ++x)
    u(fx.grp.mul(fx.grp.mul(t, x), fx.grp.inv(t)), x) = 1;

  std::vector<SparseVec> lact(36), ract(36);
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      lact[i * 6 + j] = sparse_of(A.mul(unit_vec(6, i), unit_vec(6, j)));
      ract[i * 6 + j] =
          sparse_of(A.mul(unit_vec(6, j), u.mul_col(unit_vec(6, i))));
    }
  std::vector<Subspace> comp = {fx.a->comp[1], fx.a->comp[0]};
  GradedBimodule tw =
      bimodule_over_c(fx.a, fx.a, nullptr, 6, lact, ract, comp);

  WreathPair wp = wreath_pair(fx.a, fx.a, fx.c, 2);
  WreathBimodule wm = wreath_bimodule(tw, wp);
  CHECK(wm.mod.dim == 72);
  for (uint32_t w = 0; w < 8; ++w) CHECK(wm.mod.comp[w].dim() == 9);
  CHECK(wm.f.free_cols.size() == 72);
  CHECK(wm.g.free_cols.size() == 72);

  // without the regrade the twist is graded but does not commute with
  // the base, and the construction refuses it up front
  GradedBimodule raw = twisted_regular_bimodule(fx.a, u);
  CHECK_THROWS_AS(wreath_bimodule(raw, wp), std::invalid_argument);
}

TEST_CASE("tensor power complex carries signed place permutations") {
  Fix fx = s3_sign_graded(3, 1);
  const Fq& F = fx.a->alg.field();
  GradedComplex x = class_sum_complex(fx);

  TensorPowerComplex t2 = tensor_power_complex(x, 2);
  REQUIRE(t2.layout.size() == 3);
  CHECK(t2.lo == 0);
  CHECK(t2.hi() == 2);
  CHECK(t2.layout[0].dim == 36);
  CHECK(t2.layout[1].dim == 72);
  CHECK(t2.layout[2].dim == 36);
  REQUIRE(t2.action.size() == 2);

  // the swap on the top term acts with a minus sign: both degrees odd
  const FqMatrix& top = t2.action[1][2];
  CHECK(top(2 * 6 + 1, 1 * 6 + 2) == F.neg(1));
  CHECK(top(0, 0) == F.neg(1));
  // across the middle term it exchanges the (0,1) and (1,0) blocks
  // without a sign
  const FqMatrix& mid = t2.action[1][1];
  CHECK(mid(36 + 2 * 6 + 1, 1 * 6 + 2) == FqElt(1));
  CHECK(mid(1 * 6 + 2, 36 + 2 * 6 + 1) == FqElt(1));
  // and fixes the bottom term pointwise up to the flip of factors
  const FqMatrix& bot = t2.action[1][0];
  CHECK(bot(2 * 6 + 1, 1 * 6 + 2) == FqElt(1));

  // cube: the construction itself verifies d.d = 0 and equivariance
  TensorPowerComplex t3 = tensor_power_complex(x, 3);
  CHECK(t3.layout.size() == 4);
  CHECK(t3.layout[0].dim == 216);
  CHECK(t3.layout[1].dim == 648);
  CHECK(t3.layout[2].dim == 648);
  CHECK(t3.layout[3].dim == 216);
  CHECK(t3.action.size() == 6);

  // a proper permutation subgroup is allowed
  TensorPowerComplex tc = tensor_power_complex(x, 3, kCyc3);
  CHECK(tc.action.size() == 3);

  CHECK_THROWS_AS(tensor_power_complex(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(tensor_power_complex(x, 7), std::invalid_argument);
  CHECK_THROWS_AS(tensor_power_complex(x, 2, {{0, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tensor_power_complex(x, 2, {{0, 1, 2}}),
                  std::invalid_argument);
}

TEST_CASE("wreath complex of the class sum witness") {
  Fix fx = s3_sign_graded(3, 1);
  GradedComplex x = class_sum_complex(fx);
  CHECK(homology_dims(x) == std::vector<size_t>{4, 4});

  WreathPair wp = wreath_pair(fx.a, fx.a, fx.c, 2);
  WreathComplex wc = wreath_complex(x, wp);
  REQUIRE(wc.total.terms.size() == 3);
  CHECK(wc.total.lo == 0);
  CHECK(wc.total.terms[0].dim == 72);
  CHECK(wc.total.terms[1].dim == 144);
  CHECK(wc.total.terms[2].dim == 72);
  REQUIRE(wc.induced.size() == 3);
  CHECK(wc.induced[0].free_cols.size() == 72);
  CHECK(wc.induced[1].free_cols.size() == 144);
  CHECK(wc.induced[2].free_cols.size() == 72);

  // Kunneth over the field, doubled by the permutation factor
  CHECK(homology_dims(wc.total) == std::vector<size_t>{32, 64, 32});
}

TEST_CASE("wreath complex of a zero-differential block witness") {
  Fix fx = s3_block_gf4();
  const Fq& F = fx.a->alg.field();
  GradedComplex x = make_complex(
      0, {regular_bimodule(fx.a), regular_bimodule(fx.a)},
      {FqMatrix(F, 2, 2)});

  WreathPair w3 = wreath_pair(fx.a, fx.a, fx.c, 3);
  WreathComplex wc = wreath_complex(x, w3);
  REQUIRE(wc.total.terms.size() == 4);
  CHECK(wc.total.terms[0].dim == 48);
  CHECK(wc.total.terms[1].dim == 144);
  CHECK(wc.total.terms[2].dim == 144);
  CHECK(wc.total.terms[3].dim == 48);
  // zero differential survives the wreath construction
  CHECK(homology_dims(wc.total) ==
        std::vector<size_t>{48, 144, 144, 48});

  // over the cyclic subgroup of the place permutations
  WreathPair wpc = wreath_pair(fx.a, fx.a, fx.c, 3, kCyc3);
  CHECK(wpc.left.dim == 24);
  WreathComplex cc = wreath_complex(x, wpc);
  REQUIRE(cc.total.terms.size() == 4);
  CHECK(cc.total.terms[0].dim == 24);
  CHECK(cc.total.terms[1].dim == 72);
  CHECK(cc.total.terms[2].dim == 72);
  CHECK(cc.total.terms[3].dim == 24);
}

TEST_CASE("a single place changes nothing") {
  Fix fx = s3_sign_graded(3, 1);
  WreathPair wp = wreath_pair(fx.a, fx.a, fx.c, 1);
  CHECK(wp.left.dim == 6);
  for (uint32_t i = 0; i < 6; ++i)
    for (uint32_t j = 0; j < 6; ++j)
      CHECK(wp.left.gr->alg.product(i, j) == fx.a->alg.product(i, j));

  GradedComplex x = class_sum_complex(fx);
  WreathComplex wc = wreath_complex(x, wp);
  CHECK(wc.total.terms.size() == 2);
  CHECK(wc.total.d(1) == x.d(1));
}

TEST_CASE("caps and mismatched inputs are rejected") {
  Fix fx = s3_sign_graded(3, 1);
  CHECK_THROWS_AS(wreath_algebra(fx.a, fx.c, 2, size_t(10)), DimensionCap);
  CHECK_THROWS_AS(wreath_pair(fx.a, fx.a, fx.c, 2, size_t(10)),
                  DimensionCap);

  WreathPair wp = wreath_pair(fx.a, fx.a, fx.c, 2);
  CHECK_THROWS_AS(wreath_bimodule(regular_bimodule(fx.a), wp, 10),
                  DimensionCap);
  CHECK_THROWS_AS(diagonal_subalgebra(wp, 100), DimensionCap);
  GradedComplex x = class_sum_complex(fx);
  CHECK_THROWS_AS(wreath_complex(x, wp, 100), DimensionCap);

  // a bimodule over a different handle of the same grading is refused
  Fix other = s3_sign_graded(3, 1);
  CHECK_THROWS_AS(wreath_bimodule(regular_bimodule(other.a), wp),
                  std::invalid_argument);

  // base maps of the wrong shape are refused
  Fix c2 = c2_gf3();
  CHECK_THROWS_AS(wreath_pair(fx.a, fx.a, c2.c, 2), std::invalid_argument);

  CHECK_THROWS_AS(wreath_pair(nullptr, fx.a, fx.c, 2),
                  std::invalid_argument);
}
