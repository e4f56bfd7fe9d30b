#include "bf/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace bf {

namespace {

constexpr uint32_t kMaxOrder = 2048;

std::string cycle_name(const std::vector<uint32_t>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (uint32_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    uint32_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

// (a*b)(x) = b(a(x))
std::vector<uint32_t> compose(const std::vector<uint32_t>& a,
                              const std::vector<uint32_t>& b) {
  std::vector<uint32_t> c(a.size());
  for (size_t x = 0; x < a.size(); ++x) c[x] = b[a[x]];
  return c;
}

bool sorted_contains(const std::vector<uint32_t>& v, uint32_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

void Group::finish(bool verify) {
  if (n_ == 0 || n_ > kMaxOrder)
    throw std::invalid_argument("group order out of range");
  if (verify) {
    for (uint32_t b = 0; b < n_; ++b)
      if (mul(0, b) != b || mul(b, 0) != b)
        throw std::invalid_argument("element 0 is not an identity");
    std::vector<bool> hit(n_);
    for (uint32_t a = 0; a < n_; ++a) {
      std::fill(hit.begin(), hit.end(), false);
      for (uint32_t b = 0; b < n_; ++b) hit[mul(a, b)] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw std::invalid_argument("multiplication table is not Latin");
      std::fill(hit.begin(), hit.end(), false);
      for (uint32_t b = 0; b < n_; ++b) hit[mul(b, a)] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw std::invalid_argument("multiplication table is not Latin");
    }
    auto check = [&](uint32_t a, uint32_t b, uint32_t c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw std::invalid_argument("multiplication is not associative");
    };
    if (n_ <= 256) {
      for (uint32_t a = 0; a < n_; ++a)
        for (uint32_t b = 0; b < n_; ++b)
          for (uint32_t c = 0; c < n_; ++c) check(a, b, c);
    } else {
      std::mt19937_64 rng(0);
      std::uniform_int_distribution<uint32_t> d(0, n_ - 1);
      for (int t = 0; t < 200000; ++t) check(d(rng), d(rng), d(rng));
    }
  }
  inv_.assign(n_, 0);
  for (uint32_t a = 0; a < n_; ++a) {
    bool found = false;
    for (uint32_t b = 0; b < n_; ++b)
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inv_[a] = b;
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("element without inverse");
  }
  if (names_.empty()) {
    names_.resize(n_);
    for (uint32_t a = 0; a < n_; ++a) names_[a] = "g" + std::to_string(a);
  }
}

Group Group::from_table(std::vector<std::vector<uint32_t>> table,
                        std::vector<std::string> names) {
  Group G;
  G.n_ = uint32_t(table.size());
  G.table_.assign(size_t(G.n_) * G.n_, 0);
  for (uint32_t a = 0; a < G.n_; ++a) {
    if (table[a].size() != G.n_)
      throw std::invalid_argument("table is not square");
    for (uint32_t b = 0; b < G.n_; ++b) {
      if (table[a][b] >= G.n_)
        throw std::invalid_argument("table entry out of range");
      G.table_[a * G.n_ + b] = table[a][b];
    }
  }
  G.names_ = std::move(names);
  if (!G.names_.empty() && G.names_.size() != G.n_)
    throw std::invalid_argument("wrong number of names");
  G.finish(true);
  return G;
}

Group Group::from_permutations(std::vector<std::vector<uint32_t>> gens,
                               uint32_t degree) {
  for (auto& g : gens) {
    if (g.size() != degree) throw std::invalid_argument("bad permutation");
    std::vector<bool> hit(degree, false);
    for (uint32_t x : g) {
      if (x >= degree || hit[x]) throw std::invalid_argument("bad permutation");
      hit[x] = true;
    }
  }
  std::vector<uint32_t> id(degree);
  std::iota(id.begin(), id.end(), 0);

  std::vector<std::vector<uint32_t>> elems{id};
  std::map<std::vector<uint32_t>, uint32_t> index{{id, 0}};
  std::vector<uint32_t> level{0};
  while (!level.empty()) {
    std::set<std::vector<uint32_t>> next;
    for (uint32_t e : level)
      for (auto& g : gens) {
        auto c = compose(elems[e], g);
        if (!index.count(c)) next.insert(c);
      }
    level.clear();
    for (auto& c : next) {
      uint32_t idx = uint32_t(elems.size());
      if (idx >= kMaxOrder) throw std::invalid_argument("group too large");
      index.emplace(c, idx);
      elems.push_back(c);
      level.push_back(idx);
    }
  }

  Group G;
  G.n_ = uint32_t(elems.size());
  G.table_.assign(size_t(G.n_) * G.n_, 0);
  for (uint32_t a = 0; a < G.n_; ++a)
    for (uint32_t b = 0; b < G.n_; ++b)
      G.table_[a * G.n_ + b] = index.at(compose(elems[a], elems[b]));
  G.perms_ = std::move(elems);
  G.names_.resize(G.n_);
  for (uint32_t a = 0; a < G.n_; ++a) G.names_[a] = cycle_name(G.perms_[a]);
  G.finish(false);
  return G;
}

Group Group::symmetric(uint32_t n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  std::vector<std::vector<uint32_t>> gens;
  for (uint32_t i = 0; i + 1 < n; ++i) {
    std::vector<uint32_t> t(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[i], t[i + 1]);
    gens.push_back(t);
  }
  return from_permutations(gens, n);
}

Group Group::alternating(uint32_t n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  std::vector<std::vector<uint32_t>> gens;
  for (uint32_t k = 2; k < n; ++k) {
    std::vector<uint32_t> t(n);
    std::iota(t.begin(), t.end(), 0);
    t[0] = 1;
    t[1] = k;
    t[k] = 0;
    gens.push_back(t);
  }
  return from_permutations(gens, n);
}

Group Group::cyclic(uint32_t n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  std::vector<uint32_t> c(n);
  for (uint32_t i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return from_permutations({c}, n);
}

uint32_t Group::elt_order(uint32_t a) const {
  uint32_t x = a, k = 1;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

uint32_t Group::exponent() const {
  uint32_t e = 1;
  for (uint32_t a = 0; a < n_; ++a) e = std::lcm(e, elt_order(a));
  return e;
}

std::optional<uint32_t> Group::index_of_perm(
    const std::vector<uint32_t>& p) const {
  for (uint32_t a = 0; a < n_; ++a)
    if (perms_[a] == p) return a;
  return std::nullopt;
}

std::vector<uint32_t> Group::closure(std::vector<uint32_t> gens) const {
  std::vector<bool> in(n_, false);
  in[0] = true;
  std::vector<uint32_t> list{0}, level{0};
  for (uint32_t g : gens)
    if (g >= n_) throw std::invalid_argument("generator out of range");
  while (!level.empty()) {
    std::set<uint32_t> next;
    for (uint32_t e : level)
      for (uint32_t g : gens) {
        uint32_t x = mul(e, g);
        if (!in[x]) next.insert(x);
      }
    level.clear();
    for (uint32_t x : next) {
      in[x] = true;
      list.push_back(x);
      level.push_back(x);
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

bool Group::is_subgroup(const std::vector<uint32_t>& h) const {
  if (h.empty() || h[0] != 0) return false;
  if (!std::is_sorted(h.begin(), h.end())) return false;
  for (uint32_t a : h)
    for (uint32_t b : h)
      if (!sorted_contains(h, mul(a, b))) return false;
  return true;
}

bool Group::is_normal(const std::vector<uint32_t>& h) const {
  if (!is_subgroup(h)) return false;
  for (uint32_t g = 0; g < n_; ++g)
    for (uint32_t x : h)
      if (!sorted_contains(h, conj(g, x))) return false;
  return true;
}

std::vector<uint32_t> Group::conjugate_set(
    uint32_t g, const std::vector<uint32_t>& s) const {
  std::vector<uint32_t> out;
  out.reserve(s.size());
  for (uint32_t x : s) out.push_back(conj(g, x));
  std::sort(out.begin(), out.end());
  return out;
}

bool Group::are_conjugate(const std::vector<uint32_t>& a,
                          const std::vector<uint32_t>& b) const {
  if (a.size() != b.size()) return false;
  for (uint32_t g = 0; g < n_; ++g)
    if (conjugate_set(g, a) == b) return true;
  return false;
}

std::vector<std::vector<uint32_t>> Group::conjugacy_classes() const {
  std::vector<std::vector<uint32_t>> classes;
  std::vector<bool> done(n_, false);
  for (uint32_t x = 0; x < n_; ++x) {
    if (done[x]) continue;
    std::set<uint32_t> cls;
    for (uint32_t g = 0; g < n_; ++g) cls.insert(conj(g, x));
    std::vector<uint32_t> v(cls.begin(), cls.end());
    for (uint32_t y : v) done[y] = true;
    classes.push_back(std::move(v));
  }
  return classes;
}

std::vector<uint32_t> Group::center() const {
  std::vector<uint32_t> all(n_);
  std::iota(all.begin(), all.end(), 0);
  return centralizer(all);
}

std::vector<uint32_t> Group::centralizer(
    const std::vector<uint32_t>& s) const {
  std::vector<uint32_t> out;
  for (uint32_t g = 0; g < n_; ++g) {
    bool ok = true;
    for (uint32_t x : s)
      if (mul(g, x) != mul(x, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

std::vector<uint32_t> Group::normalizer(
    const std::vector<uint32_t>& h) const {
  std::vector<uint32_t> out;
  for (uint32_t g = 0; g < n_; ++g)
    if (conjugate_set(g, h) == h) out.push_back(g);
  return out;
}

std::vector<std::vector<uint32_t>> Group::subgroups() const {
  std::set<std::vector<uint32_t>> subs;
  subs.insert({0});
  for (uint32_t g = 1; g < n_; ++g) subs.insert(closure({g}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<uint32_t>> cur(subs.begin(), subs.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<uint32_t> gens = cur[i];
        gens.insert(gens.end(), cur[j].begin(), cur[j].end());
        auto join = closure(gens);
        if (subs.insert(join).second) grew = true;
      }
  }
  std::vector<std::vector<uint32_t>> out(subs.begin(), subs.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<uint32_t> Group::sylow(uint32_t p) const {
  uint32_t pa = 1;
  while ((n_ / pa) % p == 0) pa *= p;
  std::vector<uint32_t> P{0};
  while (P.size() < pa) {
    auto N = normalizer(P);
    bool extended = false;
    for (uint32_t y : N) {
      if (sorted_contains(P, y)) continue;
      uint32_t k = elt_order(y);
      uint32_t m = k;
      while (m % p == 0) m /= p;  // p'-part of the order
      uint32_t x = y;
      for (uint32_t t = 1; t < m; ++t) x = mul(x, y);
      if (x == 0 || sorted_contains(P, x)) continue;
      std::vector<uint32_t> gens = P;
      gens.push_back(x);
      P = closure(gens);
      extended = true;
      break;
    }
    if (!extended)
      throw std::logic_error("sylow climb stuck");  // cannot happen
  }
  return P;
}

std::vector<std::vector<uint32_t>> Group::p_subgroups(uint32_t p) const {
  std::vector<uint32_t> P = sylow(p);
  std::set<std::vector<uint32_t>> all;
  Group S = sub_group(*this, P);
  for (auto& sub : S.subgroups()) {
    std::vector<uint32_t> lifted;
    for (uint32_t x : sub) lifted.push_back(P[x]);
    std::sort(lifted.begin(), lifted.end());
    for (uint32_t g = 0; g < n_; ++g) all.insert(conjugate_set(g, lifted));
  }
  std::vector<std::vector<uint32_t>> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<std::vector<uint32_t>> Group::p_subgroup_classes(
    uint32_t p) const {
  auto all = p_subgroups(p);
  std::vector<std::vector<uint32_t>> reps;
  for (auto& s : all) {
    bool seen = false;
    for (auto& r : reps)
      if (are_conjugate(r, s)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(s);
  }
  return reps;
}

Quotient quotient(const Group& G, const std::vector<uint32_t>& N) {
  if (!G.is_normal(N))
    throw std::invalid_argument("quotient by a non-normal subgroup");
  uint32_t n = G.order();
  Quotient Q;
  Q.proj.assign(n, UINT32_MAX);
  for (uint32_t g = 0; g < n; ++g) {
    if (Q.proj[g] != UINT32_MAX) continue;
    std::vector<uint32_t> coset;
    for (uint32_t x : N) coset.push_back(G.mul(g, x));
    std::sort(coset.begin(), coset.end());
    uint32_t idx = uint32_t(Q.cosets.size());
    for (uint32_t y : coset) Q.proj[y] = idx;
    Q.section.push_back(coset[0]);
    Q.cosets.push_back(std::move(coset));
  }
  uint32_t q = uint32_t(Q.cosets.size());
  std::vector<std::vector<uint32_t>> table(q, std::vector<uint32_t>(q));
  std::vector<std::string> names(q);
  for (uint32_t a = 0; a < q; ++a) {
    names[a] = "[" + G.name(Q.section[a]) + "]";
    for (uint32_t b = 0; b < q; ++b)
      table[a][b] = Q.proj[G.mul(Q.section[a], Q.section[b])];
  }
  Q.group = Group::from_table(std::move(table), std::move(names));
  return Q;
}

std::vector<std::vector<uint32_t>> subgroups_between(
    const Group& G, const std::vector<uint32_t>& N) {
  Quotient Q = quotient(G, N);
  std::vector<std::vector<uint32_t>> out;
  for (auto& sub : Q.group.subgroups()) {
    std::vector<uint32_t> J;
    for (uint32_t c : sub)
      J.insert(J.end(), Q.cosets[c].begin(), Q.cosets[c].end());
    std::sort(J.begin(), J.end());
    out.push_back(std::move(J));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

Group direct_product(const Group& A, const Group& B) {
  uint32_t na = A.order(), nb = B.order();
  std::vector<std::vector<uint32_t>> table(size_t(na) * nb,
                                           std::vector<uint32_t>(na * nb));
  std::vector<std::string> names(size_t(na) * nb);
  for (uint32_t a1 = 0; a1 < na; ++a1)
    for (uint32_t b1 = 0; b1 < nb; ++b1) {
      uint32_t i = a1 * nb + b1;
      names[i] = "(" + A.name(a1) + "," + B.name(b1) + ")";
      for (uint32_t a2 = 0; a2 < na; ++a2)
        for (uint32_t b2 = 0; b2 < nb; ++b2)
          table[i][a2 * nb + b2] = A.mul(a1, a2) * nb + B.mul(b1, b2);
    }
  return Group::from_table(std::move(table), std::move(names));
}

Group sub_group(const Group& G, const std::vector<uint32_t>& elems) {
  if (!G.is_subgroup(elems))
    throw std::invalid_argument("not a subgroup");
  uint32_t m = uint32_t(elems.size());
  std::vector<uint32_t> back(G.order(), UINT32_MAX);
  for (uint32_t i = 0; i < m; ++i) back[elems[i]] = i;
  std::vector<std::vector<uint32_t>> table(m, std::vector<uint32_t>(m));
  std::vector<std::string> names(m);
  for (uint32_t i = 0; i < m; ++i) {
    names[i] = G.name(elems[i]);
    for (uint32_t j = 0; j < m; ++j)
      table[i][j] = back[G.mul(elems[i], elems[j])];
  }
  return Group::from_table(std::move(table), std::move(names));
}

std::vector<uint32_t> generating_set(const Group& G) {
  std::vector<uint32_t> gens;
  std::vector<uint32_t> cl{0};
  for (uint32_t x = 1; x < G.order() && cl.size() < G.order(); ++x) {
    if (sorted_contains(cl, x)) continue;
    gens.push_back(x);
    cl = G.closure(gens);
  }
  return gens;
}

namespace {

bool try_map(const Group& A, const Group& B,
             const std::vector<uint32_t>& gens,
             const std::vector<uint32_t>& img, std::vector<uint32_t>& phi) {
  phi.assign(A.order(), UINT32_MAX);
  phi[0] = 0;
  std::vector<uint32_t> queue{0};
  std::vector<bool> seen(A.order(), false);
  seen[0] = true;
  size_t head = 0;
  while (head < queue.size()) {
    uint32_t a = queue[head++];
    for (size_t t = 0; t < gens.size(); ++t) {
      uint32_t an = A.mul(a, gens[t]);
      uint32_t bn = B.mul(phi[a], img[t]);
      if (phi[an] == UINT32_MAX) {
        phi[an] = bn;
        if (!seen[an]) {
          seen[an] = true;
          queue.push_back(an);
        }
      } else if (phi[an] != bn) {
        return false;
      }
    }
  }
  if (queue.size() != A.order()) return false;
  std::vector<bool> hit(B.order(), false);
  for (uint32_t a = 0; a < A.order(); ++a) {
    if (hit[phi[a]]) return false;
    hit[phi[a]] = true;
  }
  for (uint32_t a = 0; a < A.order(); ++a)
    for (uint32_t b = 0; b < A.order(); ++b)
      if (phi[A.mul(a, b)] != B.mul(phi[a], phi[b])) return false;
  return true;
}

bool extend(const Group& A, const Group& B, const std::vector<uint32_t>& gens,
            std::vector<uint32_t>& img, size_t k, std::vector<uint32_t>& phi) {
  if (k == gens.size()) return try_map(A, B, gens, img, phi);
  uint32_t need = A.elt_order(gens[k]);
  for (uint32_t b = 0; b < B.order(); ++b) {
    if (B.elt_order(b) != need) continue;
    img[k] = b;
    if (extend(A, B, gens, img, k + 1, phi)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<uint32_t>> find_isomorphism(const Group& A,
                                                      const Group& B) {
  if (A.order() != B.order()) return std::nullopt;
  std::vector<uint32_t> oa, ob;
  for (uint32_t x = 0; x < A.order(); ++x) oa.push_back(A.elt_order(x));
  for (uint32_t x = 0; x < B.order(); ++x) ob.push_back(B.elt_order(x));
  std::sort(oa.begin(), oa.end());
  std::sort(ob.begin(), ob.end());
  if (oa != ob) return std::nullopt;
  auto gens = generating_set(A);
  std::vector<uint32_t> img(gens.size()), phi;
  if (extend(A, B, gens, img, 0, phi)) return phi;
  return std::nullopt;
}

std::vector<std::vector<uint32_t>> all_perms(uint32_t n) {
  std::vector<uint32_t> p(n);
  for (uint32_t i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<uint32_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

uint32_t WreathGroup::encode(const std::vector<uint32_t>& tuple,
                             uint32_t sigma) const {
  uint32_t t = 0;
  for (uint32_t i = 0; i < n; ++i) t = t * base + tuple[i];
  return t * uint32_t(perms.size()) + sigma;
}

std::vector<uint32_t> WreathGroup::tuple_of(uint32_t x) const {
  uint32_t t = x / uint32_t(perms.size());
  std::vector<uint32_t> tuple(n);
  for (uint32_t i = n; i-- > 0;) {
    tuple[i] = t % base;
    t /= base;
  }
  return tuple;
}

WreathGroup wreath_group(const Group& G, uint32_t n) {
  return wreath_group(G, n, all_perms(n));
}

WreathGroup wreath_group(const Group& G, uint32_t n,
                         std::vector<std::vector<uint32_t>> perms) {
  if (n == 0) throw std::invalid_argument("wreath_group: n must be positive");
  std::sort(perms.begin(), perms.end());
  for (const auto& p : perms) {
    if (p.size() != n) throw std::invalid_argument("wreath_group: bad tuple");
    std::vector<bool> seen(n, false);
    for (uint32_t v : p) {
      if (v >= n || seen[v])
        throw std::invalid_argument("wreath_group: not a permutation");
      seen[v] = true;
    }
  }
  uint32_t s = uint32_t(perms.size());
  for (uint32_t i = 0; i < n; ++i)
    if (perms[0][i] != i)
      throw std::invalid_argument("wreath_group: identity missing");
  auto rank_of = [&](const std::vector<uint32_t>& p) {
    auto it = std::lower_bound(perms.begin(), perms.end(), p);
    if (it == perms.end() || *it != p)
      throw std::invalid_argument("wreath_group: tuples are not closed");
    return uint32_t(it - perms.begin());
  };

  double total = double(s);
  for (uint32_t i = 0; i < n; ++i) total *= G.order();
  if (total > double(kMaxOrder))
    throw std::invalid_argument("wreath_group: order exceeds the cap");

  WreathGroup W;
  W.base = G.order();
  W.n = n;
  W.perms = perms;
  uint32_t order = uint32_t(total);

  // invert once: sinv[sigma][image] = slot
  std::vector<std::vector<uint32_t>> sinv(s, std::vector<uint32_t>(n));
  for (uint32_t a = 0; a < s; ++a)
    for (uint32_t i = 0; i < n; ++i) sinv[a][perms[a][i]] = i;

  std::vector<std::vector<uint32_t>> table(order,
                                           std::vector<uint32_t>(order));
  std::vector<uint32_t> lt(n), rt(n), prod(n), comp(n);
  for (uint32_t x = 0; x < order; ++x) {
    uint32_t xs = x % s, xt = x / s;
    for (uint32_t i = n; i-- > 0;) {
      lt[i] = xt % G.order();
      xt /= G.order();
    }
    for (uint32_t y = 0; y < order; ++y) {
      uint32_t ys = y % s, yt = y / s;
      for (uint32_t i = n; i-- > 0;) {
        rt[i] = yt % G.order();
        yt /= G.order();
      }
      for (uint32_t i = 0; i < n; ++i)
        prod[i] = G.mul(lt[i], rt[sinv[xs][i]]);
      for (uint32_t i = 0; i < n; ++i) comp[i] = perms[xs][perms[ys][i]];
      uint32_t t = 0;
      for (uint32_t i = 0; i < n; ++i) t = t * G.order() + prod[i];
      table[x][y] = t * s + rank_of(comp);
    }
  }

  std::vector<std::string> names(order);
  for (uint32_t x = 0; x < order; ++x) {
    std::vector<uint32_t> tuple = W.tuple_of(x);
    std::string nm = "(";
    for (uint32_t i = 0; i < n; ++i) {
      if (i) nm += ",";
      nm += G.name(tuple[i]);
    }
    nm += "|";
    for (uint32_t v : perms[x % s]) nm += std::to_string(v);
    nm += ")";
    names[x] = std::move(nm);
  }
  W.grp = Group::from_table(std::move(table), std::move(names));
  return W;
}

}  // namespace bf
