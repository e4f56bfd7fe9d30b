#include "bf/wreath.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "bf/brauer.hpp"

namespace bf {

namespace {

// odometer over mixed-radix tuples, first slot slowest
bool next_multi(std::vector<size_t>& t, const std::vector<size_t>& dims) {
  for (size_t i = t.size(); i-- > 0;) {
    if (++t[i] < dims[i]) return true;
    t[i] = 0;
  }
  return false;
}

size_t multi_rank(const std::vector<size_t>& t,
                  const std::vector<size_t>& dims) {
  size_t r = 0;
  for (size_t i = 0; i < t.size(); ++i) r = r * dims[i] + t[i];
  return r;
}

std::vector<size_t> decode_multi(size_t r, const std::vector<size_t>& dims) {
  std::vector<size_t> t(dims.size());
  for (size_t i = dims.size(); i-- > 0;) {
    t[i] = r % dims[i];
    r /= dims[i];
  }
  return t;
}

size_t multi_total(const std::vector<size_t>& dims) {
  size_t p = 1;
  for (size_t d : dims) p *= d;
  return p;
}

// kron of sparse vectors, index i * db + j; stays sorted
SparseVec sp_kron2(const Fq& F, const SparseVec& a, const SparseVec& b,
                   size_t db) {
  SparseVec out;
  out.reserve(a.size() * b.size());
  for (auto& [i, c] : a)
    for (auto& [j, d] : b)
      out.push_back({uint32_t(size_t(i) * db + j), F.mul(c, d)});
  return out;
}

FqVec dense_kron2(const Fq& F, const FqVec& a, const FqVec& b) {
  FqVec out(a.size() * b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) out[i * b.size() + j] = F.mul(a[i], b[j]);
  }
  return out;
}

// dense rows spanning the kron of row spaces, one per tuple of rows
std::vector<FqVec> kron_rows(const Fq& F,
                             const std::vector<const FqMatrix*>& mats) {
  std::vector<size_t> counts;
  for (auto* m : mats) {
    if (m->rows() == 0) return {};
    counts.push_back(m->rows());
  }
  std::vector<FqVec> out;
  std::vector<size_t> t(mats.size(), 0);
  do {
    FqVec acc{1};
    for (size_t i = 0; i < mats.size(); ++i)
      acc = dense_kron2(F, acc, mats[i]->row(t[i]));
    out.push_back(std::move(acc));
  } while (next_multi(t, counts));
  return out;
}

SparseVec place_sp(const SparseVec& v, uint32_t sig, size_t s) {
  SparseVec out;
  out.reserve(v.size());
  for (auto& [i, c] : v) out.push_back({uint32_t(size_t(i) * s + sig), c});
  return out;
}

FqVec place_dense(const FqVec& v, uint32_t sig, size_t s) {
  FqVec out(v.size() * s, 0);
  for (size_t i = 0; i < v.size(); ++i) out[i * s + sig] = v[i];
  return out;
}

std::vector<std::vector<uint32_t>> invert_perms(
    const std::vector<std::vector<uint32_t>>& P) {
  std::vector<std::vector<uint32_t>> inv(P.size());
  for (size_t r = 0; r < P.size(); ++r) {
    inv[r].resize(P[r].size());
    for (uint32_t i = 0; i < P[r].size(); ++i) inv[r][P[r][i]] = i;
  }
  return inv;
}

uint32_t perm_rank(const std::vector<std::vector<uint32_t>>& P,
                   const std::vector<uint32_t>& q) {
  auto it = std::lower_bound(P.begin(), P.end(), q);
  if (it == P.end() || *it != q)
    throw std::logic_error("permutation escapes the listed set");
  return uint32_t(it - P.begin());
}

// composition ranks: table[a][b] = rank of P[a] o P[b]
std::vector<std::vector<uint32_t>> comp_table(
    const std::vector<std::vector<uint32_t>>& P) {
  size_t s = P.size(), n = P[0].size();
  std::vector<std::vector<uint32_t>> tab(s, std::vector<uint32_t>(s));
  std::vector<uint32_t> c(n);
  for (size_t a = 0; a < s; ++a)
    for (size_t b = 0; b < s; ++b) {
      for (size_t i = 0; i < n; ++i) c[i] = P[a][P[b][i]];
      tab[a][b] = perm_rank(P, c);
    }
  return tab;
}

FqVec col_of(const FqMatrix& M, size_t j) {
  FqVec v(M.rows());
  for (size_t i = 0; i < M.rows(); ++i) v[i] = M(i, j);
  return v;
}

SparseVec sparse_col(const FqMatrix& M, size_t j) {
  SparseVec v;
  for (size_t i = 0; i < M.rows(); ++i)
    if (M(i, j)) v.push_back({uint32_t(i), M(i, j)});
  return v;
}

// coordinates of v in an RREF basis; v must lie in the span
SparseVec rref_coords(const Fq& F, const FqMatrix& rows,
                      const std::vector<size_t>& piv, const FqVec& v) {
  SparseVec out;
  for (size_t j = 0; j < rows.rows(); ++j)
    if (v[piv[j]]) out.push_back({uint32_t(j), v[piv[j]]});
  FqVec check(v.size(), 0);
  for (auto& [j, c] : out) check = vec_axpy(F, check, c, rows.row(j));
  if (check != v)
    throw std::logic_error("vector escapes the identity component");
  return out;
}

// unit (x) ... v ... (x) unit at the identity permutation
FqVec slot_embed(const Fq& F, const Algebra& A, const FqVec& v, uint32_t slot,
                 uint32_t n, size_t s) {
  FqVec acc{1};
  for (uint32_t i = 0; i < n; ++i)
    acc = dense_kron2(F, acc, i == slot ? v : A.unit());
  return place_dense(acc, 0, s);
}

Algebra tensor_power(const Algebra& A, uint32_t n) {
  Algebra T = A;
  for (uint32_t k = 1; k < n; ++k) T = tensor_algebra(T, A);
  return T;
}

// grading of A (x) Bop carried entirely by the first factor
Grading first_factor_grading(const Grading& a, Algebra bop) {
  const Fq& F = a.alg.field();
  size_t db = bop.dim();
  Algebra T = tensor_algebra(a.alg, std::move(bop));
  size_t dT = T.dim();
  FqMatrix idb = FqMatrix::identity(F, db);
  std::vector<Subspace> comp;
  for (const Subspace& cg : a.comp) {
    std::vector<const FqMatrix*> mats = {&cg.basis(), &idb};
    comp.push_back(Subspace::span(F, kron_rows(F, mats), dT));
  }
  Grading g{std::move(T), a.grade, std::move(comp)};
  verify_grading(g);
  return g;
}

WreathAlgebra assemble_wreath(const GradingRef& a, uint32_t n,
                              std::vector<std::vector<uint32_t>> perms,
                              size_t cap) {
  const Fq& F = a->alg.field();
  WreathGroup wg = wreath_group(a->grade, n, std::move(perms));
  size_t da = a->alg.dim();
  size_t s = wg.perms.size();
  double want = double(s);
  for (uint32_t i = 0; i < n; ++i) want *= double(da);
  if (want > double(cap))
    throw DimensionCap("wreath algebra dimension " +
                       std::to_string(size_t(want)) + " exceeds the cap " +
                       std::to_string(cap));
  size_t dan = 1;
  for (uint32_t i = 0; i < n; ++i) dan *= da;
  size_t dim = dan * s;

  auto sinv = invert_perms(wg.perms);
  auto ctab = comp_table(wg.perms);
  std::vector<size_t> dims(n, da);
  std::vector<std::vector<size_t>> tup(dan);
  {
    std::vector<size_t> t(n, 0);
    size_t r = 0;
    do {
      tup[r++] = t;
    } while (next_multi(t, dims));
  }

  std::vector<SparseVec> products(dim * dim);
  for (size_t x = 0; x < dim; ++x) {
    uint32_t sx = uint32_t(x % s);
    const auto& tx = tup[x / s];
    const auto& xinv = sinv[sx];
    for (size_t y = 0; y < dim; ++y) {
      uint32_t sy = uint32_t(y % s);
      const auto& ty = tup[y / s];
      SparseVec acc = {{0, 1}};
      for (uint32_t i = 0; i < n; ++i)
        acc = sp_kron2(
            F, acc, a->alg.product(uint32_t(tx[i]), uint32_t(ty[xinv[i]])),
            da);
      products[x * dim + y] = place_sp(acc, ctab[sx][sy], s);
    }
  }

  FqVec ukr{1};
  for (uint32_t i = 0; i < n; ++i) ukr = dense_kron2(F, ukr, a->alg.unit());
  FqVec unit = place_dense(ukr, 0, s);

  std::vector<std::string> labels(dim);
  for (size_t r = 0; r < dan; ++r)
    for (uint32_t sg = 0; sg < s; ++sg) {
      std::string lab;
      for (uint32_t i = 0; i < n; ++i) {
        if (i) lab += '.';
        lab += a->alg.labels()[tup[r][i]];
      }
      lab += '|';
      for (uint32_t i = 0; i < n; ++i) lab += char('0' + wg.perms[sg][i]);
      labels[r * s + sg] = std::move(lab);
    }

  std::vector<FqVec> gens;
  for (uint32_t i = 0; i < n; ++i)
    for (const FqVec& g : a->alg.gens())
      gens.push_back(slot_embed(F, a->alg, g, i, n, s));
  for (uint32_t sg = 1; sg < s; ++sg)
    gens.push_back(place_dense(ukr, sg, s));

  Algebra alg = Algebra::from_structure(F, std::move(products), dim, unit,
                                        std::move(labels), std::move(gens));

  std::vector<Subspace> comp;
  comp.reserve(wg.grp.order());
  for (uint32_t w = 0; w < wg.grp.order(); ++w) {
    auto gt = wg.tuple_of(w);
    uint32_t sig = wg.sigma_of(w);
    std::vector<const FqMatrix*> mats;
    for (uint32_t i = 0; i < n; ++i) mats.push_back(&a->comp[gt[i]].basis());
    std::vector<FqVec> rows;
    for (FqVec& v : kron_rows(F, mats))
      rows.push_back(place_dense(v, sig, s));
    comp.push_back(Subspace::span(F, rows, dim));
  }

  Grading gr{std::move(alg), wg.grp, std::move(comp)};
  verify_grading(gr);
  CrossedUnits units = crossed_product_check(gr);

  WreathAlgebra out;
  out.n = n;
  out.wg = std::move(wg);
  out.gr = share(std::move(gr));
  out.units = std::move(units);
  out.da = da;
  out.dim = dim;
  return out;
}

OverCRef wreath_over_c(const PowerBase& pb, const OverC& c,
                       const WreathAlgebra& wl, const WreathAlgebra& wr) {
  const Fq& F = pb.alg.field();
  size_t dc = c.cal.dim();
  uint32_t n = wl.n;
  size_t s = wl.wg.perms.size();
  auto build = [&](const FqMatrix& into, size_t wdim) {
    FqMatrix out(F, wdim, pb.alg.dim());
    std::vector<size_t> dims(n, dc), t(n, 0);
    size_t r = 0;
    do {
      FqVec acc{1};
      for (uint32_t i = 0; i < n; ++i)
        acc = dense_kron2(F, acc, col_of(into, t[i]));
      for (size_t j = 0; j < acc.size(); ++j)
        if (acc[j]) out(j * s, r) = acc[j];
      ++r;
    } while (next_multi(t, dims));
    return out;
  };
  return make_over_c(pb.alg, pb.comp, pb.act, *wl.gr, *wr.gr,
                     build(c.into_left, wl.dim), build(c.into_right, wr.dim));
}

}  // namespace

int SignCocycle::eval(const std::vector<uint32_t>& sigma,
                      const std::vector<int>& degs) const {
  if (sigma.size() != n || degs.size() != n)
    throw std::invalid_argument("sign cocycle arity mismatch");
  int sgn = 1;
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t l = k + 1; l < n; ++l)
      if (sigma[k] > sigma[l] && (degs[k] & 1) && (degs[l] & 1)) sgn = -sgn;
  return sgn;
}

SignCocycle sign_cocycle(uint32_t n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("sign cocycle arity out of range");
  SignCocycle sc{n};
  if (n > 4) return sc;
  // the composition law, exhaustively over degree parities
  auto P = all_perms(n);
  auto inv = invert_perms(P);
  std::vector<int> d(n), td(n);
  std::vector<uint32_t> comp(n);
  for (const auto& sig : P)
    for (size_t tr = 0; tr < P.size(); ++tr) {
      const auto& tau = P[tr];
      for (uint32_t i = 0; i < n; ++i) comp[i] = sig[tau[i]];
      for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (uint32_t i = 0; i < n; ++i) d[i] = int((mask >> i) & 1);
        for (uint32_t i = 0; i < n; ++i) td[i] = d[inv[tr][i]];
        if (sc.eval(comp, d) != sc.eval(sig, td) * sc.eval(tau, d))
          throw std::logic_error("sign cocycle law failed");
      }
    }
  return sc;
}

PowerBase power_base(const OverC& c, uint32_t n,
                     std::vector<std::vector<uint32_t>> perms) {
  const Fq& F = c.cal.field();
  WreathGroup wg = wreath_group(c.grade, n, std::move(perms));
  size_t dc = c.cal.dim();
  double want = 1;
  for (uint32_t i = 0; i < n; ++i) want *= double(dc);
  if (want > double(kWreathDimCap))
    throw DimensionCap("tensor power dimension exceeds the cap");
  Algebra alg = tensor_power(c.cal, n);
  size_t dcn = alg.dim();
  uint32_t order = wg.grp.order();

  std::vector<size_t> dims(n, dc);
  std::vector<Subspace> comp(order, Subspace(F, dcn));
  std::vector<FqMatrix> act;
  act.reserve(order);
  for (uint32_t w = 0; w < order; ++w) {
    auto gt = wg.tuple_of(w);
    uint32_t sig = wg.sigma_of(w);
    if (sig == 0) {
      std::vector<const FqMatrix*> mats;
      for (uint32_t i = 0; i < n; ++i) mats.push_back(&c.comp[gt[i]].basis());
      comp[w] = Subspace::span(F, kron_rows(F, mats), dcn);
    }
    // permute the slots, then act slotwise
    FqMatrix K(F, 1, 1);
    K(0, 0) = 1;
    for (uint32_t i = 0; i < n; ++i) K = kron(K, c.act[gt[i]]);
    const auto& sp = wg.perms[sig];
    FqMatrix P(F, dcn, dcn);
    std::vector<size_t> t(n, 0), u(n);
    do {
      for (uint32_t i = 0; i < n; ++i) u[sp[i]] = t[i];
      P(multi_rank(u, dims), multi_rank(t, dims)) = 1;
    } while (next_multi(t, dims));
    act.push_back(K.mul(P));
  }
  GActedAlgebra checked = make_acted(std::move(alg), wg.grp, std::move(act));
  return PowerBase{std::move(checked.alg), std::move(wg), std::move(comp),
                   std::move(checked.act)};
}

PowerBase power_base(const OverC& c, uint32_t n) {
  return power_base(c, n, all_perms(n));
}

size_t WreathAlgebra::index(const std::vector<size_t>& t, uint32_t s) const {
  size_t r = 0;
  for (size_t ti : t) r = r * da + ti;
  return r * wg.perms.size() + s;
}

WreathPair wreath_pair(const GradingRef& a, const GradingRef& a2,
                       const OverCRef& c, uint32_t n,
                       std::vector<std::vector<uint32_t>> perms, size_t cap) {
  if (!a || !a2 || !c) throw std::invalid_argument("null wreath input");
  if (c->grade.order() != a->grade.order() ||
      c->grade.order() != a2->grade.order())
    throw std::invalid_argument("grading groups do not match");
  if (c->into_left.rows() != a->alg.dim() ||
      c->into_right.rows() != a2->alg.dim())
    throw std::invalid_argument("base maps do not match the side algebras");
  WreathPair wp;
  wp.left = assemble_wreath(a, n, perms, cap);
  wp.right = a2 == a ? wp.left : assemble_wreath(a2, n, perms, cap);
  PowerBase pb = power_base(*c, n, std::move(perms));
  wp.joint = wreath_over_c(pb, *c, wp.left, wp.right);
  wp.a = a;
  wp.a2 = a2;
  wp.c = c;
  return wp;
}

WreathPair wreath_pair(const GradingRef& a, const GradingRef& a2,
                       const OverCRef& c, uint32_t n, size_t cap) {
  return wreath_pair(a, a2, c, n, all_perms(n), cap);
}

WreathAlgebra wreath_algebra(const GradingRef& a, const OverCRef& c,
                             uint32_t n,
                             std::vector<std::vector<uint32_t>> perms,
                             size_t cap) {
  return wreath_pair(a, a, c, n, std::move(perms), cap).left;
}

WreathAlgebra wreath_algebra(const GradingRef& a, const OverCRef& c,
                             uint32_t n, size_t cap) {
  return wreath_algebra(a, c, n, all_perms(n), cap);
}

WreathDiagonal diagonal_subalgebra(const WreathPair& wp, size_t cap) {
  const WreathAlgebra& wa = wp.left;
  const WreathAlgebra& wb = wp.right;
  const Fq& F = wa.gr->alg.field();
  size_t s = wa.wg.perms.size();
  uint32_t n = wa.n;
  if (double(wa.dim) * double(wb.dim) > double(cap))
    throw DimensionCap("diagonal ambient dimension exceeds the cap");
  Algebra ambient = tensor_algebra(wa.gr->alg, opposite(wb.gr->alg));

  auto sinv = invert_perms(wa.wg.perms);
  std::vector<uint32_t> irank(s);
  for (uint32_t r = 0; r < s; ++r) irank[r] = perm_rank(wa.wg.perms, sinv[r]);

  std::vector<FqVec> span;
  for (size_t x = 0; x < wa.dim; ++x)
    for (size_t y = 0; y < wb.dim; ++y)
      if (uint32_t(y % s) == irank[x % s])
        span.push_back(unit_vec(ambient.dim(), x * wb.dim + y));
  SubAlgebraView view = subalgebra(ambient, span, ambient.unit());

  WreathAlgebra target = assemble_wreath(
      share(first_factor_grading(*wp.a, opposite(wp.a2->alg))), n,
      wa.wg.perms, cap);

  size_t da = wp.a->alg.dim(), db = wp.a2->alg.dim();
  FqMatrix iso(F, target.dim, view.alg.dim());
  for (size_t j = 0; j < view.alg.dim(); ++j) {
    size_t p = view.pivots[j];
    size_t x = p / wb.dim, y = p % wb.dim;
    uint32_t sig = uint32_t(x % s);
    std::vector<size_t> t(n), u(n);
    size_t qx = x / s, qy = y / s;
    for (uint32_t i = n; i-- > 0;) {
      t[i] = qx % da;
      qx /= da;
    }
    for (uint32_t i = n; i-- > 0;) {
      u[i] = qy % db;
      qy /= db;
    }
    // slot i pairs the left factor with the sigma-inverse-matched right one
    size_t r = 0;
    for (uint32_t i = 0; i < n; ++i)
      r = r * (da * db) + (t[i] * db + u[sinv[sig][i]]);
    iso(r * s + sig, j) = 1;
  }

  std::vector<Subspace> comps;
  for (uint32_t w = 0; w < wa.wg.grp.order(); ++w) {
    uint32_t sig = wa.wg.sigma_of(w);
    const FqMatrix& ca = wa.gr->comp[w].basis();
    std::vector<FqVec> rows;
    for (size_t y = 0; y < wb.dim; ++y) {
      if (uint32_t(y % s) != irank[sig]) continue;
      for (size_t rr = 0; rr < ca.rows(); ++rr) {
        FqVec full(ambient.dim(), 0);
        for (size_t cc = 0; cc < wa.dim; ++cc)
          if (ca(rr, cc)) full[cc * wb.dim + y] = ca(rr, cc);
        rows.push_back(view.restrict(full));
      }
    }
    comps.push_back(Subspace::span(F, rows, view.alg.dim()));
  }
  Grading src{view.alg, wa.wg.grp, std::move(comps)};
  verify_grading(src);
  auto rep = verify_graded_iso(iso, src, *target.gr);
  if (!rep.ok)
    throw std::logic_error("wreath diagonal mismatch: " + rep.violation);
  return WreathDiagonal{std::move(view), std::move(target), std::move(iso)};
}

namespace {

// one tensor block of the module side of a balanced induced space
struct SlotSpace {
  const GradedBimodule* term;
  const FqMatrix* rows;  // identity-component basis of the term
  const std::vector<size_t>* piv;
};

struct ZBlock {
  std::vector<int> degs;
  std::vector<SlotSpace> slot;
  std::vector<size_t> zdims;
  size_t zoff = 0;
  size_t zdim = 0;
  size_t toff = 0;  // tuple-block offset inside the wreath object
};

struct BuiltBalanced {
  BalancedInduced out;
  FqMatrix full;  // target.dim x ambient, on the raw pair space
};

const ZBlock& find_block(const std::vector<ZBlock>& blocks,
                         const std::vector<int>& degs) {
  for (const ZBlock& b : blocks)
    if (b.degs == degs) return b;
  throw std::logic_error("permuted degree block is missing");
}

// (A wr Sigma) (x)_{B^{(x)n}} Z -> target, (y (x) z) -> y . z placed at
// the permuted block with the Koszul sign of the permutation part of y
BuiltBalanced balanced_left_iso(const WreathPair& wp,
                                const std::vector<ZBlock>& blocks,
                                const GradedBimodule& target,
                                const SignCocycle& sc) {
  const Fq& F = target.field();
  const Algebra& W = wp.left.gr->alg;
  size_t DW = wp.left.dim;
  uint32_t n = wp.left.n;
  const auto& perms = wp.left.wg.perms;
  size_t s = perms.size();
  size_t da = wp.left.da;
  auto sinv = invert_perms(perms);

  size_t Z = 0;
  for (const ZBlock& b : blocks) {
    if (b.zoff != Z) throw std::logic_error("block offsets out of order");
    Z += b.zdim;
  }
  size_t ambient = DW * Z;

  std::vector<size_t> adims(n, da);
  std::vector<std::vector<size_t>> wtup(DW / s);
  {
    std::vector<size_t> t(n, 0);
    size_t r = 0;
    do {
      wtup[r++] = t;
    } while (next_multi(t, adims));
  }

  FqMatrix full(F, target.dim, ambient);
  for (size_t w = 0; w < DW; ++w) {
    uint32_t sig = uint32_t(w % s);
    const auto& t = wtup[w / s];
    const auto& sp = perms[sig];
    const auto& sv = sinv[sig];
    for (const ZBlock& b : blocks) {
      if (b.zdim == 0) continue;
      std::vector<int> pd(n);
      for (uint32_t i = 0; i < n; ++i) pd[i] = b.degs[sv[i]];
      const ZBlock& ob = find_block(blocks, pd);
      FqElt sf = sc.eval(sp, b.degs) > 0 ? FqElt(1) : F.neg(1);
      std::vector<size_t> r(n, 0);
      size_t zr = 0;
      do {
        FqVec acc{sf};
        for (uint32_t i = 0; i < n; ++i) {
          uint32_t j = sv[i];
          const SlotSpace& sl = b.slot[j];
          acc = dense_kron2(
              F, acc,
              sl.term->lmul(unit_vec(da, t[i]), sl.rows->row(r[j])));
        }
        size_t col = w * Z + b.zoff + zr;
        for (size_t k = 0; k < acc.size(); ++k)
          if (acc[k]) full((ob.toff + k) * s + sig, col) = acc[k];
        ++zr;
      } while (next_multi(r, b.zdims));
    }
  }

  // balancing relators (y . b_i) (x) z - y (x) (b_i . z), for b running
  // over a basis of the identity component, slot by slot; products of
  // such elements are handled by the quotient itself
  const FqMatrix& Brows = wp.a->comp[0].basis();
  SparseElim rel(F);
  std::vector<SparseVec> raw;
  for (uint32_t i = 0; i < n; ++i) {
    for (size_t bb = 0; bb < Brows.rows(); ++bb) {
      FqVec brow = Brows.row(bb);
      FqVec emb = slot_embed(F, wp.a->alg, brow, i, n, s);
      FqMatrix RM = W.right_mult(emb);
      // slot action of b on each block's identity rows
      for (const ZBlock& blk : blocks) {
        if (blk.zdim == 0) continue;
        std::vector<SparseVec> bact(blk.zdims[i]);
        for (size_t q = 0; q < blk.zdims[i]; ++q)
          bact[q] = rref_coords(
              F, *blk.slot[i].rows, *blk.slot[i].piv,
              blk.slot[i].term->lmul(brow, blk.slot[i].rows->row(q)));
        size_t stride = 1;
        for (uint32_t j = i + 1; j < n; ++j) stride *= blk.zdims[j];
        for (size_t w = 0; w < DW; ++w) {
          SparseVec wcol = sparse_col(RM, w);
          std::vector<size_t> r(n, 0);
          size_t zr = 0;
          do {
            SparseVec lhs;
            for (auto& [w2, c] : wcol)
              lhs.push_back({uint32_t(size_t(w2) * Z + blk.zoff + zr), c});
            SparseVec rhs;
            size_t base = w * Z + blk.zoff + zr - r[i] * stride;
            for (auto& [q, c] : bact[r[i]])
              rhs.push_back({uint32_t(base + size_t(q) * stride), c});
            std::sort(rhs.begin(), rhs.end());
            SparseVec rv = sp_axpy(F, lhs, F.neg(1), rhs);
            raw.push_back(rv);
            rel.insert(std::move(rv));
            ++zr;
          } while (next_multi(r, blk.zdims));
        }
      }
    }
  }

  for (const SparseVec& rv : raw) {
    FqVec img(target.dim, 0);
    for (auto& [p, c] : rv)
      for (size_t ro = 0; ro < target.dim; ++ro)
        img[ro] = F.add(img[ro], F.mul(c, full(ro, p)));
    if (!vec_is_zero(img))
      throw std::logic_error("balanced relator has nonzero image");
  }

  auto free_cols = rel.free_cols(uint32_t(ambient));
  if (free_cols.size() != target.dim)
    throw std::logic_error("balanced quotient dimension mismatch");
  FqMatrix map(F, target.dim, free_cols.size());
  for (size_t j = 0; j < free_cols.size(); ++j)
    for (size_t ro = 0; ro < target.dim; ++ro)
      map(ro, j) = full(ro, free_cols[j]);
  if (rank(map) != target.dim)
    throw std::logic_error("induced map is not bijective");

  // left linearity over the wreath algebra, on generators
  for (const FqVec& g : W.gens()) {
    FqMatrix L = target.lop(g);
    FqMatrix LM = W.left_mult(g);
    FqMatrix lhs = L.mul(full);
    FqMatrix rhs(F, target.dim, ambient);
    for (size_t w = 0; w < DW; ++w) {
      SparseVec gc = sparse_col(LM, w);
      for (size_t z = 0; z < Z; ++z)
        for (auto& [w2, c] : gc)
          for (size_t ro = 0; ro < target.dim; ++ro) {
            FqElt v = full(ro, size_t(w2) * Z + z);
            if (v) rhs(ro, w * Z + z) = F.add(rhs(ro, w * Z + z), F.mul(c, v));
          }
    }
    if (!(lhs == rhs))
      throw std::logic_error("induced map is not left linear");
  }

  // right linearity over the identity component of the other side
  const FqMatrix& Bp = wp.a2->comp[0].basis();
  for (uint32_t i = 0; i < n; ++i) {
    for (size_t bb = 0; bb < Bp.rows(); ++bb) {
      FqVec brow = Bp.row(bb);
      FqVec emb = slot_embed(F, wp.a2->alg, brow, i, n, s);
      FqMatrix R = target.rop(emb);
      FqMatrix lhs = R.mul(full);
      FqMatrix rhs(F, target.dim, ambient);
      for (const ZBlock& blk : blocks) {
        if (blk.zdim == 0) continue;
        std::vector<SparseVec> bact(blk.zdims[i]);
        for (size_t q = 0; q < blk.zdims[i]; ++q)
          bact[q] = rref_coords(
              F, *blk.slot[i].rows, *blk.slot[i].piv,
              blk.slot[i].term->rmul(blk.slot[i].rows->row(q), brow));
        size_t stride = 1;
        for (uint32_t j = i + 1; j < n; ++j) stride *= blk.zdims[j];
        for (size_t w = 0; w < DW; ++w) {
          std::vector<size_t> r(n, 0);
          size_t zr = 0;
          do {
            size_t base = w * Z + blk.zoff + zr - r[i] * stride;
            for (auto& [q, c] : bact[r[i]])
              for (size_t ro = 0; ro < target.dim; ++ro) {
                FqElt v = full(ro, base + size_t(q) * stride);
                if (v)
                  rhs(ro, w * Z + blk.zoff + zr) =
                      F.add(rhs(ro, w * Z + blk.zoff + zr), F.mul(c, v));
              }
            ++zr;
          } while (next_multi(r, blk.zdims));
        }
      }
      if (!(lhs == rhs))
        throw std::logic_error("induced map is not right linear");
    }
  }

  // degree preservation
  for (uint32_t wd = 0; wd < wp.left.wg.grp.order(); ++wd) {
    const FqMatrix& cw = wp.left.gr->comp[wd].basis();
    for (size_t rr = 0; rr < cw.rows(); ++rr)
      for (size_t z = 0; z < Z; ++z) {
        FqVec img(target.dim, 0);
        for (size_t w = 0; w < DW; ++w) {
          FqElt c = cw(rr, w);
          if (!c) continue;
          for (size_t ro = 0; ro < target.dim; ++ro)
            img[ro] = F.add(img[ro], F.mul(c, full(ro, w * Z + z)));
        }
        if (!target.comp[wd].contains(img))
          throw std::logic_error("induced map is not graded");
      }
  }

  // the identity components embed canonically
  const FqVec& uw = W.unit();
  for (const ZBlock& blk : blocks) {
    if (blk.zdim == 0) continue;
    std::vector<size_t> r(n, 0);
    size_t zr = 0;
    do {
      FqVec acc{1};
      for (uint32_t i = 0; i < n; ++i)
        acc = dense_kron2(F, acc, blk.slot[i].rows->row(r[i]));
      FqVec phi(target.dim, 0);
      for (size_t k = 0; k < acc.size(); ++k)
        phi[(blk.toff + k) * s] = acc[k];
      FqVec img(target.dim, 0);
      for (size_t w = 0; w < DW; ++w) {
        if (!uw[w]) continue;
        for (size_t ro = 0; ro < target.dim; ++ro)
          img[ro] = F.add(img[ro], F.mul(uw[w], full(ro, w * Z + blk.zoff + zr)));
      }
      if (img != phi)
        throw std::logic_error(
            "identity components disagree with the canonical inclusion");
      ++zr;
    } while (next_multi(r, blk.zdims));
  }

  return BuiltBalanced{
      BalancedInduced{ambient, std::move(rel), std::move(free_cols),
                      std::move(map)},
      std::move(full)};
}

// Z (x)_{B'^{(x)n}} (A' wr Sigma) -> target for a single bimodule block,
// (z (x) y) -> z . y
BuiltBalanced balanced_right_iso(const GradedBimodule& m,
                                 const WreathPair& wp,
                                 const GradedBimodule& target) {
  const Fq& F = m.field();
  const Algebra& W = wp.right.gr->alg;
  size_t DW = wp.right.dim;
  uint32_t n = wp.right.n;
  const auto& perms = wp.right.wg.perms;
  size_t s = perms.size();
  size_t db = wp.right.da;

  const FqMatrix& R = m.comp[0].basis();
  const auto& piv = m.comp[0].pivot_cols();
  size_t zd = R.rows();
  std::vector<size_t> zdims(n, zd), ddims(n, db);
  size_t Z = multi_total(zdims);
  size_t ambient = Z * DW;

  std::vector<std::vector<size_t>> wtup(DW / s);
  {
    std::vector<size_t> t(n, 0);
    size_t r = 0;
    do {
      wtup[r++] = t;
    } while (next_multi(t, ddims));
  }

  FqMatrix full(F, target.dim, ambient);
  {
    std::vector<size_t> zt(n, 0);
    size_t zr = 0;
    do {
      for (size_t y = 0; y < DW; ++y) {
        uint32_t sig = uint32_t(y % s);
        const auto& t = wtup[y / s];
        FqVec acc{1};
        for (uint32_t i = 0; i < n; ++i)
          acc = dense_kron2(F, acc,
                            m.rmul(R.row(zt[i]), unit_vec(db, t[i])));
        for (size_t k = 0; k < acc.size(); ++k)
          if (acc[k]) full(k * s + sig, zr * DW + y) = acc[k];
      }
      ++zr;
    } while (next_multi(zt, zdims));
  }

  const FqMatrix& Bp = wp.a2->comp[0].basis();
  SparseElim rel(F);
  std::vector<SparseVec> raw;
  for (uint32_t i = 0; i < n; ++i) {
    size_t stride = 1;
    for (uint32_t j = i + 1; j < n; ++j) stride *= zd;
    for (size_t bb = 0; bb < Bp.rows(); ++bb) {
      FqVec brow = Bp.row(bb);
      FqVec emb = slot_embed(F, wp.a2->alg, brow, i, n, s);
      FqMatrix LM = W.left_mult(emb);
      std::vector<SparseVec> bact(zd);
      for (size_t q = 0; q < zd; ++q)
        bact[q] = rref_coords(F, R, piv, m.rmul(R.row(q), brow));
      std::vector<size_t> zt(n, 0);
      size_t zr = 0;
      do {
        for (size_t y = 0; y < DW; ++y) {
          SparseVec lhs;
          size_t base = zr - zt[i] * stride;
          for (auto& [q, c] : bact[zt[i]])
            lhs.push_back({uint32_t((base + size_t(q) * stride) * DW + y), c});
          std::sort(lhs.begin(), lhs.end());
          SparseVec rhs;
          for (size_t y2 = 0; y2 < DW; ++y2)
            if (LM(y2, y)) rhs.push_back({uint32_t(zr * DW + y2), LM(y2, y)});
          SparseVec rv = sp_axpy(F, lhs, F.neg(1), rhs);
          raw.push_back(rv);
          rel.insert(std::move(rv));
        }
        ++zr;
      } while (next_multi(zt, zdims));
    }
  }

  for (const SparseVec& rv : raw) {
    FqVec img(target.dim, 0);
    for (auto& [p, c] : rv)
      for (size_t ro = 0; ro < target.dim; ++ro)
        img[ro] = F.add(img[ro], F.mul(c, full(ro, p)));
    if (!vec_is_zero(img))
      throw std::logic_error("balanced relator has nonzero image");
  }

  auto free_cols = rel.free_cols(uint32_t(ambient));
  if (free_cols.size() != target.dim)
    throw std::logic_error("balanced quotient dimension mismatch");
  FqMatrix map(F, target.dim, free_cols.size());
  for (size_t j = 0; j < free_cols.size(); ++j)
    for (size_t ro = 0; ro < target.dim; ++ro)
      map(ro, j) = full(ro, free_cols[j]);
  if (rank(map) != target.dim)
    throw std::logic_error("induced map is not bijective");

  // right linearity over the wreath algebra, on generators
  for (const FqVec& g : W.gens()) {
    FqMatrix Rg = target.rop(g);
    FqMatrix RM = W.right_mult(g);
    FqMatrix lhs = Rg.mul(full);
    FqMatrix rhs(F, target.dim, ambient);
    for (size_t y = 0; y < DW; ++y) {
      SparseVec gc = sparse_col(RM, y);
      for (size_t z = 0; z < Z; ++z)
        for (auto& [y2, c] : gc)
          for (size_t ro = 0; ro < target.dim; ++ro) {
            FqElt v = full(ro, z * DW + y2);
            if (v) rhs(ro, z * DW + y) = F.add(rhs(ro, z * DW + y), F.mul(c, v));
          }
    }
    if (!(lhs == rhs))
      throw std::logic_error("induced map is not right linear");
  }

  // left linearity over the identity component of the first side
  const FqMatrix& Brows = wp.a->comp[0].basis();
  for (uint32_t i = 0; i < n; ++i) {
    size_t stride = 1;
    for (uint32_t j = i + 1; j < n; ++j) stride *= zd;
    for (size_t bb = 0; bb < Brows.rows(); ++bb) {
      FqVec brow = Brows.row(bb);
      FqVec emb = slot_embed(F, wp.a->alg, brow, i, n, s);
      FqMatrix L = target.lop(emb);
      FqMatrix lhs = L.mul(full);
      std::vector<SparseVec> bact(zd);
      for (size_t q = 0; q < zd; ++q)
        bact[q] = rref_coords(F, R, piv, m.lmul(brow, R.row(q)));
      FqMatrix rhs(F, target.dim, ambient);
      std::vector<size_t> zt(n, 0);
      size_t zr = 0;
      do {
        size_t base = zr - zt[i] * stride;
        for (size_t y = 0; y < DW; ++y)
          for (auto& [q, c] : bact[zt[i]])
            for (size_t ro = 0; ro < target.dim; ++ro) {
              FqElt v = full(ro, (base + size_t(q) * stride) * DW + y);
              if (v)
                rhs(ro, zr * DW + y) = F.add(rhs(ro, zr * DW + y), F.mul(c, v));
            }
        ++zr;
      } while (next_multi(zt, zdims));
      if (!(lhs == rhs))
        throw std::logic_error("induced map is not left linear");
    }
  }

  // degree preservation
  for (uint32_t wd = 0; wd < wp.right.wg.grp.order(); ++wd) {
    const FqMatrix& cw = wp.right.gr->comp[wd].basis();
    for (size_t rr = 0; rr < cw.rows(); ++rr)
      for (size_t z = 0; z < Z; ++z) {
        FqVec img(target.dim, 0);
        for (size_t y = 0; y < DW; ++y) {
          FqElt c = cw(rr, y);
          if (!c) continue;
          for (size_t ro = 0; ro < target.dim; ++ro)
            img[ro] = F.add(img[ro], F.mul(c, full(ro, z * DW + y)));
        }
        if (!target.comp[wd].contains(img))
          throw std::logic_error("induced map is not graded");
      }
  }

  // canonical identification on the identity components
  const FqVec& uw = W.unit();
  {
    std::vector<size_t> zt(n, 0);
    size_t zr = 0;
    do {
      FqVec acc{1};
      for (uint32_t i = 0; i < n; ++i) acc = dense_kron2(F, acc, R.row(zt[i]));
      FqVec phi(target.dim, 0);
      for (size_t k = 0; k < acc.size(); ++k) phi[k * s] = acc[k];
      FqVec img(target.dim, 0);
      for (size_t y = 0; y < DW; ++y) {
        if (!uw[y]) continue;
        for (size_t ro = 0; ro < target.dim; ++ro)
          img[ro] = F.add(img[ro], F.mul(uw[y], full(ro, zr * DW + y)));
      }
      if (img != phi)
        throw std::logic_error(
            "identity components disagree with the canonical inclusion");
      ++zr;
    } while (next_multi(zt, zdims));
  }

  return BuiltBalanced{
      BalancedInduced{ambient, std::move(rel), std::move(free_cols),
                      std::move(map)},
      std::move(full)};
}

}  // namespace

WreathBimodule wreath_bimodule(const GradedBimodule& m, const WreathPair& wp,
                               size_t cap) {
  if (m.left != wp.a || m.right != wp.a2)
    throw std::invalid_argument("bimodule sides do not match the wreath pair");
  const Fq& F = m.field();
  uint32_t n = wp.left.n;
  const auto& perms = wp.left.wg.perms;
  size_t s = perms.size();
  size_t dm = m.dim, da = wp.left.da, db = wp.right.da;
  double want = double(s);
  for (uint32_t i = 0; i < n; ++i) want *= double(dm);
  if (want > double(cap))
    throw DimensionCap("wreath bimodule dimension exceeds the cap");

  // the slotwise actions only glue over the shared base when the input
  // itself satisfies m.z'(c) = z(act_x(c)).m on each component
  {
    size_t dc = wp.c->cal.dim();
    for (uint32_t x = 0; x < m.comp.size(); ++x) {
      const FqMatrix& rows = m.comp[x].basis();
      if (!rows.rows()) continue;
      for (size_t t = 0; t < dc; ++t) {
        FqVec zr = col_of(wp.c->into_right, t);
        FqVec zl =
            wp.c->into_left.mul_col(wp.c->act[x].mul_col(unit_vec(dc, t)));
        for (size_t r = 0; r < rows.rows(); ++r)
          if (!(m.rmul(rows.row(r), zr) == m.lmul(zl, rows.row(r))))
            throw std::invalid_argument(
                "bimodule is not compatible with the base of the wreath pair");
      }
    }
  }
  size_t dmn = 1;
  for (uint32_t i = 0; i < n; ++i) dmn *= dm;
  size_t dim = dmn * s;

  auto sinv = invert_perms(perms);
  auto ctab = comp_table(perms);
  std::vector<size_t> mdims(n, dm);
  std::vector<std::vector<size_t>> mt(dmn);
  {
    std::vector<size_t> t(n, 0);
    size_t r = 0;
    do {
      mt[r++] = t;
    } while (next_multi(t, mdims));
  }

  std::vector<SparseVec> lact(wp.left.dim * dim), ract(wp.right.dim * dim);
  {
    std::vector<size_t> adims(n, da);
    std::vector<size_t> t(n, 0);
    size_t x = 0;
    do {
      for (uint32_t sx = 0; sx < s; ++sx) {
        const auto& sv = sinv[sx];
        size_t xi = x * s + sx;
        for (size_t u = 0; u < dim; ++u) {
          uint32_t tu = uint32_t(u % s);
          const auto& mu = mt[u / s];
          SparseVec acc = {{0, 1}};
          for (uint32_t i = 0; i < n; ++i)
            acc = sp_kron2(F, acc, m.lact[t[i] * dm + mu[sv[i]]], dm);
          lact[xi * dim + u] = place_sp(acc, ctab[sx][tu], s);
        }
      }
      ++x;
    } while (next_multi(t, adims));
  }
  {
    std::vector<size_t> bdims(n, db);
    std::vector<size_t> t(n, 0);
    size_t y = 0;
    do {
      for (uint32_t sy = 0; sy < s; ++sy) {
        size_t yi = y * s + sy;
        for (size_t u = 0; u < dim; ++u) {
          uint32_t tu = uint32_t(u % s);
          const auto& tv = sinv[tu];
          const auto& mu = mt[u / s];
          SparseVec acc = {{0, 1}};
          for (uint32_t i = 0; i < n; ++i)
            acc = sp_kron2(F, acc, m.ract[t[tv[i]] * dm + mu[i]], dm);
          ract[yi * dim + u] = place_sp(acc, ctab[tu][sy], s);
        }
      }
      ++y;
    } while (next_multi(t, bdims));
  }

  std::vector<Subspace> comp;
  comp.reserve(wp.left.wg.grp.order());
  for (uint32_t w = 0; w < wp.left.wg.grp.order(); ++w) {
    auto gt = wp.left.wg.tuple_of(w);
    uint32_t sig = wp.left.wg.sigma_of(w);
    std::vector<const FqMatrix*> mats;
    for (uint32_t i = 0; i < n; ++i) mats.push_back(&m.comp[gt[i]].basis());
    std::vector<FqVec> rows;
    for (FqVec& v : kron_rows(F, mats)) rows.push_back(place_dense(v, sig, s));
    comp.push_back(Subspace::span(F, rows, dim));
  }

  GradedBimodule mod =
      bimodule_over_c(wp.left.gr, wp.right.gr, wp.joint, dim, std::move(lact),
                      std::move(ract), std::move(comp));

  SignCocycle sc = sign_cocycle(n);
  ZBlock zb;
  zb.degs.assign(n, 0);
  const FqMatrix& R = m.comp[0].basis();
  const auto& piv = m.comp[0].pivot_cols();
  for (uint32_t i = 0; i < n; ++i) {
    zb.slot.push_back(SlotSpace{&m, &R, &piv});
    zb.zdims.push_back(R.rows());
  }
  zb.zoff = 0;
  zb.zdim = multi_total(zb.zdims);
  zb.toff = 0;

  BuiltBalanced f = balanced_left_iso(wp, {zb}, mod, sc);
  BuiltBalanced g = balanced_right_iso(m, wp, mod);
  return WreathBimodule{std::move(mod), std::move(f.out), std::move(g.out)};
}

TensorPowerComplex tensor_power_complex(
    const GradedComplex& x, uint32_t n,
    std::vector<std::vector<uint32_t>> perms) {
  if (x.terms.empty()) throw std::invalid_argument("empty complex");
  if (n < 1 || n > 6)
    throw std::invalid_argument("tensor power arity out of range");
  for (auto& p : perms) {
    if (p.size() != n) throw std::invalid_argument("permutation arity mismatch");
    std::vector<bool> seen(n, false);
    for (uint32_t v : p) {
      if (v >= n || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = true;
    }
  }
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  if (perms.empty()) throw std::invalid_argument("no permutations given");

  SignCocycle sc = sign_cocycle(n);
  const Fq& F = x.terms[0].field();
  int lo = x.lo;
  int nt = int(x.terms.size());
  std::vector<size_t> dx;
  for (auto& t : x.terms) dx.push_back(t.dim);

  int NLO = n * lo;
  int NT = int(n) * (nt - 1) + 1;
  TensorPowerComplex out;
  out.lo = NLO;
  out.n = n;
  out.layout.resize(NT);
  {
    std::vector<size_t> kd(n, 0), radix(n, size_t(nt));
    do {
      int N = 0;
      size_t bdim = 1;
      std::vector<int> degs(n);
      for (uint32_t i = 0; i < n; ++i) {
        degs[i] = lo + int(kd[i]);
        N += degs[i];
        bdim *= dx[kd[i]];
      }
      TermLayout& L = out.layout[N - NLO];
      L.tuples.push_back(std::move(degs));
      L.offsets.push_back(L.dim);
      L.dim += bdim;
    } while (next_multi(kd, radix));
  }

  auto block_of = [&](const TermLayout& L, const std::vector<int>& degs) {
    auto it = std::lower_bound(L.tuples.begin(), L.tuples.end(), degs);
    if (it == L.tuples.end() || *it != degs)
      throw std::logic_error("degree tuple is missing from the layout");
    return size_t(it - L.tuples.begin());
  };
  auto block_dims = [&](const std::vector<int>& degs) {
    std::vector<size_t> d(n);
    for (uint32_t i = 0; i < n; ++i) d[i] = dx[degs[i] - lo];
    return d;
  };

  // Koszul differential
  for (int k = 1; k < NT; ++k) {
    const TermLayout& src = out.layout[k];
    const TermLayout& dst = out.layout[k - 1];
    FqMatrix D(F, dst.dim, src.dim);
    for (size_t bi = 0; bi < src.tuples.size(); ++bi) {
      const std::vector<int>& K = src.tuples[bi];
      std::vector<size_t> bd = block_dims(K);
      for (uint32_t i = 0; i < n; ++i) {
        if (K[i] <= lo) continue;
        int par = 0;
        for (uint32_t j = 0; j < i; ++j) par += K[j];
        FqElt sgn = (par % 2 + 2) % 2 == 0 ? FqElt(1) : F.neg(1);
        std::vector<int> K2 = K;
        --K2[i];
        size_t off2 = dst.offsets[block_of(dst, K2)];
        std::vector<size_t> bd2 = bd;
        bd2[i] = dx[K2[i] - lo];
        const FqMatrix& d = x.d(K[i]);
        std::vector<size_t> r(n, 0);
        do {
          size_t col = src.offsets[bi] + multi_rank(r, bd);
          for (size_t q = 0; q < bd2[i]; ++q) {
            FqElt c = d(q, r[i]);
            if (!c) continue;
            std::vector<size_t> r2 = r;
            r2[i] = q;
            size_t row = off2 + multi_rank(r2, bd2);
            D(row, col) = F.add(D(row, col), F.mul(sgn, c));
          }
        } while (next_multi(r, bd));
      }
    }
    out.diff.push_back(std::move(D));
  }

  // signed place permutations
  std::vector<std::vector<std::vector<size_t>>> pos(perms.size());
  std::vector<std::vector<std::vector<FqElt>>> sgn(perms.size());
  auto sinv = invert_perms(perms);
  for (size_t pi = 0; pi < perms.size(); ++pi) {
    const auto& sp = perms[pi];
    const auto& sv = sinv[pi];
    pos[pi].resize(NT);
    sgn[pi].resize(NT);
    std::vector<FqMatrix> mats;
    for (int k = 0; k < NT; ++k) {
      const TermLayout& L = out.layout[k];
      pos[pi][k].resize(L.dim);
      sgn[pi][k].resize(L.dim);
      FqMatrix P(F, L.dim, L.dim);
      for (size_t bi = 0; bi < L.tuples.size(); ++bi) {
        const std::vector<int>& K = L.tuples[bi];
        std::vector<int> PK(n);
        for (uint32_t i = 0; i < n; ++i) PK[i] = K[sv[i]];
        size_t off2 = L.offsets[block_of(L, PK)];
        std::vector<size_t> bd = block_dims(K), bd2 = block_dims(PK);
        FqElt sf = sc.eval(sp, K) > 0 ? FqElt(1) : F.neg(1);
        std::vector<size_t> r(n, 0), r2(n);
        do {
          for (uint32_t i = 0; i < n; ++i) r2[i] = r[sv[i]];
          size_t col = L.offsets[bi] + multi_rank(r, bd);
          size_t row = off2 + multi_rank(r2, bd2);
          pos[pi][k][col] = row;
          sgn[pi][k][col] = sf;
          P(row, col) = sf;
        } while (next_multi(r, bd));
      }
      mats.push_back(std::move(P));
    }
    out.action.push_back(std::move(mats));
  }

  // d of d vanishes
  for (size_t j = 1; j < out.diff.size(); ++j)
    if (!out.diff[j - 1].mul(out.diff[j]).is_zero())
      throw std::logic_error("tensor power differential does not square to zero");

  // every signed permutation commutes with the differential
  for (size_t pi = 0; pi < perms.size(); ++pi)
    for (int k = 1; k < NT; ++k) {
      const FqMatrix& D = out.diff[k - 1];
      const auto& pk = pos[pi][k];
      std::vector<size_t> ipk(pk.size());
      for (size_t c = 0; c < pk.size(); ++c) ipk[pk[c]] = c;
      FqMatrix L(F, D.rows(), D.cols()), R(F, D.rows(), D.cols());
      for (size_t r = 0; r < D.rows(); ++r)
        for (size_t c = 0; c < D.cols(); ++c) {
          FqElt v = D(r, c);
          if (!v) continue;
          // L = P D scatters rows; R = D P gathers columns, so the
          // entry lands where the inverse permutation sends it
          L(pos[pi][k - 1][r], c) = F.mul(sgn[pi][k - 1][r], v);
          R(r, ipk[c]) = F.mul(sgn[pi][k][ipk[c]], v);
        }
      if (!(L == R))
        throw std::logic_error(
            "signed permutation does not commute with the differential");
    }

  return out;
}

TensorPowerComplex tensor_power_complex(const GradedComplex& x, uint32_t n) {
  return tensor_power_complex(x, n, all_perms(n));
}

WreathComplex wreath_complex(const GradedComplex& x, const WreathPair& wp,
                             size_t cap) {
  for (auto& t : x.terms)
    if (t.left != wp.a || t.right != wp.a2)
      throw std::invalid_argument("complex sides do not match the wreath pair");
  uint32_t n = wp.left.n;
  const auto& perms = wp.left.wg.perms;
  size_t s = perms.size();
  const Fq& F = x.terms[0].field();
  int lo = x.lo;

  TensorPowerComplex tpc = tensor_power_complex(x, n, perms);
  for (auto& L : tpc.layout)
    if (double(L.dim) * double(s) > double(cap))
      throw DimensionCap("wreath complex term dimension exceeds the cap");

  auto sinv = invert_perms(perms);
  auto ctab = comp_table(perms);
  size_t da = wp.left.da, db = wp.right.da;
  size_t DW = wp.left.dim, DW2 = wp.right.dim;
  SignCocycle sc = sign_cocycle(n);
  size_t NT = tpc.layout.size();

  std::vector<std::vector<size_t>> atup(DW / s), btup(DW2 / s);
  {
    std::vector<size_t> adims(n, da), t(n, 0);
    size_t r = 0;
    do {
      atup[r++] = t;
    } while (next_multi(t, adims));
  }
  {
    std::vector<size_t> bdims(n, db), t(n, 0);
    size_t r = 0;
    do {
      btup[r++] = t;
    } while (next_multi(t, bdims));
  }

  auto block_dims = [&](const std::vector<int>& degs) {
    std::vector<size_t> d(n);
    for (uint32_t i = 0; i < n; ++i) d[i] = x.term(degs[i]).dim;
    return d;
  };
  auto block_of = [&](const TermLayout& L, const std::vector<int>& degs) {
    auto it = std::lower_bound(L.tuples.begin(), L.tuples.end(), degs);
    if (it == L.tuples.end() || *it != degs)
      throw std::logic_error("degree tuple is missing from the layout");
    return size_t(it - L.tuples.begin());
  };

  std::vector<GradedBimodule> terms;
  std::vector<FqMatrix> diffs;
  for (size_t k = 0; k < NT; ++k) {
    const TermLayout& L = tpc.layout[k];
    size_t dim = L.dim * s;
    size_t nb = L.tuples.size();
    std::vector<std::vector<size_t>> bdims(nb);
    for (size_t bi = 0; bi < nb; ++bi) bdims[bi] = block_dims(L.tuples[bi]);
    // block and in-block offset per tensor coordinate
    std::vector<size_t> zblock(L.dim), zrel(L.dim);
    for (size_t bi = 0; bi < nb; ++bi) {
      size_t bdim = multi_total(bdims[bi]);
      for (size_t r = 0; r < bdim; ++r) {
        zblock[L.offsets[bi] + r] = bi;
        zrel[L.offsets[bi] + r] = r;
      }
    }

    std::vector<SparseVec> lact(DW * dim), ract(DW2 * dim);
    for (size_t a = 0; a < DW; ++a) {
      uint32_t sx = uint32_t(a % s);
      const auto& t = atup[a / s];
      const auto& sv = sinv[sx];
      const auto& sp = perms[sx];
      for (size_t u = 0; u < dim; ++u) {
        uint32_t tu = uint32_t(u % s);
        size_t z = u / s;
        size_t bi = zblock[z];
        const std::vector<int>& K = L.tuples[bi];
        std::vector<size_t> r = decode_multi(zrel[z], bdims[bi]);
        std::vector<int> PK(n);
        for (uint32_t i = 0; i < n; ++i) PK[i] = K[sv[i]];
        size_t obi = block_of(L, PK);
        FqElt sf = sc.eval(sp, K) > 0 ? FqElt(1) : F.neg(1);
        SparseVec acc = {{0, sf}};
        for (uint32_t i = 0; i < n; ++i) {
          const GradedBimodule& tm = x.term(K[sv[i]]);
          acc = sp_kron2(F, acc, tm.lact[t[i] * tm.dim + r[sv[i]]], tm.dim);
        }
        SparseVec out;
        out.reserve(acc.size());
        for (auto& [idx, c] : acc)
          out.push_back(
              {uint32_t((L.offsets[obi] + idx) * s + ctab[sx][tu]), c});
        lact[a * dim + u] = std::move(out);
      }
    }
    for (size_t y = 0; y < DW2; ++y) {
      uint32_t sy = uint32_t(y % s);
      const auto& t = btup[y / s];
      for (size_t u = 0; u < dim; ++u) {
        uint32_t tu = uint32_t(u % s);
        const auto& tv = sinv[tu];
        size_t z = u / s;
        size_t bi = zblock[z];
        const std::vector<int>& K = L.tuples[bi];
        std::vector<size_t> r = decode_multi(zrel[z], bdims[bi]);
        SparseVec acc = {{0, 1}};
        for (uint32_t i = 0; i < n; ++i) {
          const GradedBimodule& tm = x.term(K[i]);
          acc = sp_kron2(F, acc, tm.ract[t[tv[i]] * tm.dim + r[i]], tm.dim);
        }
        SparseVec out;
        out.reserve(acc.size());
        for (auto& [idx, c] : acc)
          out.push_back(
              {uint32_t((L.offsets[bi] + idx) * s + ctab[tu][sy]), c});
        ract[y * dim + u] = std::move(out);
      }
    }

    std::vector<Subspace> comp;
    comp.reserve(wp.left.wg.grp.order());
    for (uint32_t w = 0; w < wp.left.wg.grp.order(); ++w) {
      auto gt = wp.left.wg.tuple_of(w);
      uint32_t sig = wp.left.wg.sigma_of(w);
      std::vector<FqVec> rows;
      for (size_t bi = 0; bi < nb; ++bi) {
        const std::vector<int>& K = L.tuples[bi];
        std::vector<const FqMatrix*> mats;
        for (uint32_t i = 0; i < n; ++i)
          mats.push_back(&x.term(K[i]).comp[gt[i]].basis());
        for (FqVec& v : kron_rows(F, mats)) {
          FqVec fullv(dim, 0);
          for (size_t idx = 0; idx < v.size(); ++idx)
            fullv[(L.offsets[bi] + idx) * s + sig] = v[idx];
          rows.push_back(std::move(fullv));
        }
      }
      comp.push_back(Subspace::span(F, rows, dim));
    }

    terms.push_back(bimodule_over_c(wp.left.gr, wp.right.gr, wp.joint, dim,
                                    std::move(lact), std::move(ract),
                                    std::move(comp)));
    if (k) {
      const FqMatrix& D = tpc.diff[k - 1];
      FqMatrix full(F, D.rows() * s, D.cols() * s);
      for (size_t r = 0; r < D.rows(); ++r)
        for (size_t c = 0; c < D.cols(); ++c) {
          FqElt v = D(r, c);
          if (!v) continue;
          for (uint32_t sg = 0; sg < s; ++sg) full(r * s + sg, c * s + sg) = v;
        }
      diffs.push_back(std::move(full));
    }
  }

  GradedComplex total = make_complex(int(n) * lo, std::move(terms),
                                     std::move(diffs));

  // termwise isomorphisms from the induced complex
  std::vector<const FqMatrix*> Rb;
  std::vector<const std::vector<size_t>*> Rp;
  for (auto& t : x.terms) {
    Rb.push_back(&t.comp[0].basis());
    Rp.push_back(&t.comp[0].pivot_cols());
  }
  std::vector<std::vector<ZBlock>> zbs(NT);
  std::vector<BuiltBalanced> built;
  for (size_t k = 0; k < NT; ++k) {
    const TermLayout& L = tpc.layout[k];
    size_t zoff = 0;
    for (size_t bi = 0; bi < L.tuples.size(); ++bi) {
      ZBlock b;
      b.degs = L.tuples[bi];
      for (uint32_t i = 0; i < n; ++i) {
        size_t ti = size_t(b.degs[i] - lo);
        b.slot.push_back(SlotSpace{&x.terms[ti], Rb[ti], Rp[ti]});
        b.zdims.push_back(Rb[ti]->rows());
      }
      b.zoff = zoff;
      b.zdim = multi_total(b.zdims);
      b.toff = L.offsets[bi];
      zoff += b.zdim;
      zbs[k].push_back(std::move(b));
    }
    built.push_back(balanced_left_iso(wp, zbs[k], total.terms[k], sc));
  }

  // the isomorphisms commute with the differentials: the domain carries
  // the Koszul differential on the identity components
  for (size_t k = 1; k < NT; ++k) {
    size_t Zk = 0, Zk1 = 0;
    for (auto& b : zbs[k]) Zk += b.zdim;
    for (auto& b : zbs[k - 1]) Zk1 += b.zdim;
    FqMatrix domD(F, DW * Zk1, DW * Zk);
    for (size_t bi = 0; bi < zbs[k].size(); ++bi) {
      const ZBlock& b = zbs[k][bi];
      if (b.zdim == 0) continue;
      for (uint32_t i = 0; i < n; ++i) {
        if (b.degs[i] <= lo) continue;
        int par = 0;
        for (uint32_t j = 0; j < i; ++j) par += b.degs[j];
        FqElt sgn = (par % 2 + 2) % 2 == 0 ? FqElt(1) : F.neg(1);
        std::vector<int> K2 = b.degs;
        --K2[i];
        // locate the target block
        const ZBlock* ob = nullptr;
        for (auto& cand : zbs[k - 1])
          if (cand.degs == K2) ob = &cand;
        if (!ob) throw std::logic_error("missing differential target block");
        // coordinates of d on the identity rows of slot i
        size_t src_deg = size_t(b.degs[i] - lo);
        std::vector<SparseVec> dact(b.zdims[i]);
        for (size_t q = 0; q < b.zdims[i]; ++q) {
          FqVec img = x.d(b.degs[i]).mul_col(Rb[src_deg]->row(q));
          dact[q] = rref_coords(F, *Rb[src_deg - 1], *Rp[src_deg - 1], img);
        }
        std::vector<size_t> r(n, 0);
        size_t zr = 0;
        do {
          for (auto& [q, c] : dact[r[i]]) {
            std::vector<size_t> r2 = r;
            r2[i] = q;
            size_t row = ob->zoff + multi_rank(r2, ob->zdims);
            size_t col = b.zoff + zr;
            for (size_t w = 0; w < DW; ++w)
              domD(w * Zk1 + row, w * Zk + col) =
                  F.add(domD(w * Zk1 + row, w * Zk + col), F.mul(sgn, c));
          }
          ++zr;
        } while (next_multi(r, b.zdims));
      }
    }
    FqMatrix lhs = built[k - 1].full.mul(domD);
    FqMatrix rhs = total.diff[k - 1].mul(built[k].full);
    if (!(lhs == rhs))
      throw std::logic_error(
          "induced maps do not commute with the differentials");
  }

  WreathComplex out{std::move(total), std::move(tpc), {}};
  for (auto& bb : built) out.induced.push_back(std::move(bb.out));
  return out;
}

}  // namespace bf
