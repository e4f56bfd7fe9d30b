#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "bf/group.hpp"

using namespace bf;

namespace {

uint32_t perm_idx(const Group& G, const std::vector<uint32_t>& p) {
  auto i = G.index_of_perm(p);
  REQUIRE(i.has_value());
  return *i;
}

std::vector<size_t> class_sizes(const Group& G) {
  std::vector<size_t> out;
  for (auto& c : G.conjugacy_classes()) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::map<uint32_t, int> order_profile(const Group& G) {
  std::map<uint32_t, int> out;
  for (uint32_t x = 0; x < G.order(); ++x) ++out[G.elt_order(x)];
  return out;
}

}  // namespace

TEST_CASE("standard groups") {
  Group S3 = Group::symmetric(3);
  Group S4 = Group::symmetric(4);
  Group A4 = Group::alternating(4);
  Group C6 = Group::cyclic(6);
  CHECK(S3.order() == 6);
  CHECK(S4.order() == 24);
  CHECK(A4.order() == 12);
  CHECK(C6.order() == 6);
  CHECK(S3.name(0) == "e");
  CHECK(S4.exponent() == 12);
  CHECK(A4.exponent() == 6);
  CHECK(S3.exponent() == 6);
  CHECK(C6.exponent() == 6);

  CHECK(order_profile(S4) ==
        std::map<uint32_t, int>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
  CHECK(class_sizes(S4) == std::vector<size_t>{1, 3, 6, 6, 8});
  CHECK(class_sizes(A4) == std::vector<size_t>{1, 3, 4, 4});
  CHECK(class_sizes(S3) == std::vector<size_t>{1, 2, 3});

  CHECK(S4.center() == std::vector<uint32_t>{0});
  CHECK(C6.center().size() == 6);

  // inverses and conjugation sanity
  for (uint32_t a = 0; a < S4.order(); ++a) {
    CHECK(S4.mul(a, S4.inv(a)) == 0);
    CHECK(S4.elt_order(S4.conj(5 % S4.order(), a)) == S4.elt_order(a));
  }
}

TEST_CASE("element ordering is generator-order independent") {
  Group a = Group::from_permutations({{1, 0, 2}, {0, 2, 1}}, 3);
  Group b = Group::from_permutations({{0, 2, 1}, {1, 0, 2}}, 3);
  REQUIRE(a.order() == b.order());
  for (uint32_t x = 0; x < a.order(); ++x) {
    CHECK(a.perm(x) == b.perm(x));
    for (uint32_t y = 0; y < a.order(); ++y) CHECK(a.mul(x, y) == b.mul(x, y));
  }
}

TEST_CASE("closure, subgroup and normality predicates") {
  Group S4 = Group::symmetric(4);
  uint32_t t12 = perm_idx(S4, {1, 0, 2, 3});
  uint32_t t34 = perm_idx(S4, {0, 1, 3, 2});
  uint32_t d = perm_idx(S4, {1, 0, 3, 2});
  uint32_t r = perm_idx(S4, {1, 2, 0, 3});  // (1 2 3)

  CHECK(S4.closure({t12}).size() == 2);
  CHECK(S4.closure({t12, t34}).size() == 4);
  CHECK(S4.closure({t12, r}).size() == 6);

  std::vector<uint32_t> V4 = S4.closure({d, perm_idx(S4, {2, 3, 0, 1})});
  CHECK(V4.size() == 4);
  CHECK(S4.is_normal(V4));
  CHECK_FALSE(S4.is_normal(S4.closure({t12})));

  // A4 = all even permutations, normal of index 2
  Group A4 = Group::alternating(4);
  std::vector<uint32_t> a4;
  for (uint32_t x = 0; x < A4.order(); ++x)
    a4.push_back(perm_idx(S4, A4.perm(x)));
  std::sort(a4.begin(), a4.end());
  CHECK(S4.is_normal(a4));
}

TEST_CASE("quotients") {
  Group S4 = Group::symmetric(4);
  std::vector<uint32_t> V4 =
      S4.closure({perm_idx(S4, {1, 0, 3, 2}), perm_idx(S4, {2, 3, 0, 1})});
  Quotient Q = quotient(S4, V4);
  CHECK(Q.group.order() == 6);
  CHECK(find_isomorphism(Q.group, Group::symmetric(3)).has_value());
  // projection is a homomorphism, cosets listed by minimal element
  for (uint32_t a = 0; a < S4.order(); ++a)
    for (uint32_t b = 0; b < S4.order(); ++b)
      CHECK(Q.proj[S4.mul(a, b)] == Q.group.mul(Q.proj[a], Q.proj[b]));
  CHECK(Q.proj[0] == 0);
  for (size_t c = 0; c + 1 < Q.cosets.size(); ++c)
    CHECK(Q.cosets[c][0] < Q.cosets[c + 1][0]);
  for (auto& c : Q.cosets) CHECK(std::is_sorted(c.begin(), c.end()));

  Group A4 = Group::alternating(4);
  std::vector<uint32_t> v4 =
      A4.closure({perm_idx(A4, {1, 0, 3, 2}), perm_idx(A4, {2, 3, 0, 1})});
  CHECK(find_isomorphism(quotient(A4, v4).group, Group::cyclic(3)).has_value());

  Group S3 = Group::symmetric(3);
  std::vector<uint32_t> A3 = S3.closure({perm_idx(S3, {1, 2, 0})});
  CHECK(find_isomorphism(quotient(S3, A3).group, Group::cyclic(2)).has_value());

  CHECK_THROWS_AS(quotient(S3, S3.closure({perm_idx(S3, {1, 0, 2})})),
                  std::invalid_argument);
}

TEST_CASE("subgroup lattices") {
  CHECK(Group::symmetric(3).subgroups().size() == 6);
  CHECK(Group::symmetric(4).subgroups().size() == 30);
  CHECK(Group::cyclic(6).subgroups().size() == 4);
  auto a4subs = Group::alternating(4).subgroups();
  CHECK(a4subs.size() == 10);
  for (auto& s : a4subs) CHECK(s.size() != 6);  // A4 has no order-6 subgroup
}

TEST_CASE("sylow and p-subgroups") {
  Group S4 = Group::symmetric(4);
  CHECK(S4.sylow(2).size() == 8);
  CHECK(S4.sylow(3).size() == 3);
  CHECK(S4.sylow(5) == std::vector<uint32_t>{0});

  Group A4 = Group::alternating(4);
  auto v4 = A4.sylow(2);
  CHECK(v4.size() == 4);
  CHECK(A4.is_normal(v4));

  // cross-check the dedicated enumeration against the full lattice
  auto all = S4.subgroups();
  std::vector<std::vector<uint32_t>> two_power;
  for (auto& s : all)
    if ((s.size() & (s.size() - 1)) == 0) two_power.push_back(s);
  auto p2 = S4.p_subgroups(2);
  CHECK(p2 == two_power);

  CHECK(S4.p_subgroup_classes(2).size() == 7);
  CHECK(S4.p_subgroup_classes(3).size() == 2);

  // dihedral structure of the Sylow 2-subgroup
  Group D4 = sub_group(S4, S4.sylow(2));
  CHECK(D4.order() == 8);
  CHECK(D4.center().size() == 2);
  CHECK(D4.exponent() == 4);
}

TEST_CASE("normalizers and centralizers") {
  Group S4 = Group::symmetric(4);
  auto C3 = S4.closure({perm_idx(S4, {1, 2, 0, 3})});
  auto N = S4.normalizer(C3);
  CHECK(N.size() == 6);
  CHECK(find_isomorphism(sub_group(S4, N), Group::symmetric(3)).has_value());
  CHECK(S4.centralizer({perm_idx(S4, {1, 0, 2, 3})}).size() == 4);
  CHECK(S4.centralizer(C3).size() == 3);
}

TEST_CASE("subgroups between a normal subgroup and the whole group") {
  Group S4 = Group::symmetric(4);
  std::vector<uint32_t> V4 =
      S4.closure({perm_idx(S4, {1, 0, 3, 2}), perm_idx(S4, {2, 3, 0, 1})});
  auto between = subgroups_between(S4, V4);
  std::vector<size_t> sizes;
  for (auto& J : between) {
    sizes.push_back(J.size());
    CHECK(S4.is_subgroup(J));
    CHECK(std::includes(J.begin(), J.end(), V4.begin(), V4.end()));
  }
  CHECK(sizes == std::vector<size_t>{4, 8, 8, 8, 12, 24});
}

TEST_CASE("products and isomorphism search") {
  Group C2 = Group::cyclic(2), C3 = Group::cyclic(3), C4 = Group::cyclic(4);
  Group P = direct_product(C2, C3);
  CHECK(P.order() == 6);
  CHECK(find_isomorphism(P, Group::cyclic(6)).has_value());
  CHECK_FALSE(find_isomorphism(direct_product(C2, C2), C4).has_value());
  auto phi = find_isomorphism(P, Group::cyclic(6));
  for (uint32_t a = 0; a < 6; ++a)
    for (uint32_t b = 0; b < 6; ++b)
      CHECK((*phi)[P.mul(a, b)] ==
            Group::cyclic(6).mul((*phi)[a], (*phi)[b]));
  CHECK_FALSE(
      find_isomorphism(Group::symmetric(4), direct_product(C4, P)).has_value());
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(Group::from_table({{0, 1}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Group::from_table({{1, 0}, {0, 1}}), std::invalid_argument);
  // Latin square with identity that fails associativity
  CHECK_THROWS_AS(Group::from_table({{0, 1, 2, 3, 4},
                                     {1, 0, 3, 4, 2},
                                     {2, 3, 4, 0, 1},
                                     {3, 4, 1, 2, 0},
                                     {4, 2, 0, 1, 3}}),
                  std::invalid_argument);
  Group C2 = Group::from_table({{0, 1}, {1, 0}}, {"e", "s"});
  CHECK(C2.name(1) == "s");
  CHECK(C2.inv(1) == 1);
}

TEST_CASE("wreath product encoding and order") {
  Group C2 = Group::cyclic(2);
  WreathGroup W = wreath_group(C2, 2);
  CHECK(W.grp.order() == 8);
  CHECK(W.perms.size() == 2);
  // identity tuple with identity permutation is the group identity
  CHECK(W.encode({0, 0}, 0) == 0);
  for (uint32_t x = 0; x < 8; ++x) {
    CHECK(W.encode(W.tuple_of(x), W.sigma_of(x)) == x);
  }
  // C2 wr S2 is dihedral of order 8: center of size 2, exponent 4
  CHECK(W.grp.center().size() == 2);
  CHECK(W.grp.exponent() == 4);
  CHECK_FALSE(
      find_isomorphism(W.grp, direct_product(Group::cyclic(4), C2)).has_value());

  CHECK(wreath_group(Group::symmetric(3), 2).grp.order() == 72);
  CHECK(wreath_group(Group::cyclic(3), 3).grp.order() == 162);
}

TEST_CASE("wreath multiplication matches the slotwise rule") {
  // (t, sigma)(u, tau) = (t_i u_{sigma^-1(i)}, sigma tau), checked
  // against direct evaluation for every pair
  Group G = Group::symmetric(3);
  for (uint32_t n : {2u, 3u}) {
    if (double(G.order()) * G.order() * G.order() > 300 && n == 3) break;
    WreathGroup W = wreath_group(Group::cyclic(4), n);
    const auto& P = W.perms;
    for (uint32_t x = 0; x < W.grp.order(); ++x) {
      for (uint32_t y = 0; y < W.grp.order(); ++y) {
        auto t = W.tuple_of(x), u = W.tuple_of(y);
        uint32_t s = W.sigma_of(x), v = W.sigma_of(y);
        std::vector<uint32_t> prod(n);
        for (uint32_t i = 0; i < n; ++i) {
          uint32_t j = 0;
          while (P[s][j] != i) ++j;  // j = sigma^-1(i)
          prod[i] = Group::cyclic(4).mul(t[i], u[j]);
        }
        std::vector<uint32_t> comp(n);
        for (uint32_t i = 0; i < n; ++i) comp[i] = P[s][P[v][i]];
        uint32_t rank = 0;
        while (P[rank] != comp) ++rank;
        CHECK(W.grp.mul(x, y) == W.encode(prod, rank));
      }
    }
  }
}

TEST_CASE("wreath place action composes") {
  // acting by sigma then tau on slots equals acting by tau sigma:
  // the slot action x -> x after relabeling slot i from sigma^-1(i)
  for (uint32_t n = 2; n <= 3; ++n) {
    Group C2 = Group::cyclic(2);
    WreathGroup W = wreath_group(C2, n);
    auto apply = [&](uint32_t w, std::vector<uint32_t> v) {
      // v is a plain tuple of slot marks; (t, sigma) sends slot content
      // v_i to position sigma(i) and multiplies by t
      auto t = W.tuple_of(w);
      const auto& sig = W.perms[W.sigma_of(w)];
      std::vector<uint32_t> out(n);
      for (uint32_t i = 0; i < n; ++i)
        out[sig[i]] = C2.mul(t[sig[i]], v[i]);
      return out;
    };
    std::vector<uint32_t> v(n);
    for (uint32_t seed = 0; seed < (1u << n); ++seed) {
      for (uint32_t i = 0; i < n; ++i) v[i] = (seed >> i) & 1;
      for (uint32_t x = 0; x < W.grp.order(); ++x)
        for (uint32_t y = 0; y < W.grp.order(); ++y)
          CHECK(apply(W.grp.mul(x, y), v) == apply(x, apply(y, v)));
    }
  }
}

TEST_CASE("wreath product over a proper permutation subgroup") {
  Group C2 = Group::cyclic(2);
  std::vector<std::vector<uint32_t>> cyc = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  WreathGroup W = wreath_group(C2, 3, cyc);
  CHECK(W.grp.order() == 24);
  CHECK(W.perms.size() == 3);
  CHECK(W.perms[0] == std::vector<uint32_t>({0, 1, 2}));

  // rejects sets that are not closed or not permutations
  CHECK_THROWS_AS(wreath_group(C2, 3, {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(wreath_group(C2, 3, {{0, 0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(wreath_group(C2, 3, {{1, 2, 0}, {2, 0, 1}}),
                  std::invalid_argument);
  // order cap
  CHECK_THROWS_AS(wreath_group(Group::symmetric(4), 3),
                  std::invalid_argument);
}
