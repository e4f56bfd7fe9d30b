#include "bf/algebra.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace bf {

namespace {

FqElt sp_get(const SparseVec& v, uint32_t idx) {
  auto it = std::lower_bound(
      v.begin(), v.end(), idx,
      [](const std::pair<uint32_t, FqElt>& p, uint32_t i) { return p.first < i; });
  return (it != v.end() && it->first == idx) ? it->second : 0;
}

}  // namespace

Algebra Algebra::from_structure(const Fq& F, std::vector<SparseVec> products,
                                size_t dim, FqVec unit,
                                std::vector<std::string> labels,
                                std::vector<FqVec> gens) {
  if (products.size() != dim * dim || unit.size() != dim)
    throw std::invalid_argument("structure constant shape mismatch");
  for (auto& v : products) {
    if (!std::is_sorted(v.begin(), v.end()))
      throw std::invalid_argument("unsorted product expansion");
    for (auto& [k, c] : v)
      if (k >= dim || c == 0 || c >= F.q())
        throw std::invalid_argument("bad product entry");
  }
  Algebra A;
  A.F_ = &F;
  A.d_ = dim;
  A.products_ = std::move(products);
  A.unit_ = std::move(unit);
  if (labels.empty()) {
    labels.resize(dim);
    for (size_t i = 0; i < dim; ++i) labels[i] = "b" + std::to_string(i);
  }
  if (labels.size() != dim) throw std::invalid_argument("bad label count");
  A.labels_ = std::move(labels);
  if (gens.empty())
    for (size_t i = 0; i < dim; ++i) gens.push_back(unit_vec(dim, i));
  A.gens_ = std::move(gens);

  for (size_t i = 0; i < dim; ++i) {
    FqVec e = unit_vec(dim, i);
    if (A.mul(A.unit_, e) != e || A.mul(e, A.unit_) != e)
      throw std::invalid_argument("unit fails");
  }
  auto check = [&](uint32_t i, uint32_t j, uint32_t k) {
    FqVec l = A.mul(A.mul(unit_vec(dim, i), unit_vec(dim, j)), unit_vec(dim, k));
    FqVec r = A.mul(unit_vec(dim, i), A.mul(unit_vec(dim, j), unit_vec(dim, k)));
    if (l != r) throw std::invalid_argument("product not associative");
  };
  if (dim <= 64) {
    for (uint32_t i = 0; i < dim; ++i)
      for (uint32_t j = 0; j < dim; ++j)
        for (uint32_t k = 0; k < dim; ++k) check(i, j, k);
  } else {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<uint32_t> d(0, uint32_t(dim) - 1);
    for (int t = 0; t < 20000; ++t) check(d(rng), d(rng), d(rng));
  }
  return A;
}

Algebra Algebra::group_algebra(const Fq& F, const Group& G) {
  size_t n = G.order();
  std::vector<SparseVec> products(n * n);
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      products[a * n + b] = {{G.mul(a, b), 1}};
  std::vector<std::string> labels(n);
  for (uint32_t a = 0; a < n; ++a) labels[a] = G.name(a);
  std::vector<FqVec> gens;
  for (uint32_t g : generating_set(G)) gens.push_back(unit_vec(n, g));
  return from_structure(F, std::move(products), n, unit_vec(n, 0),
                        std::move(labels), std::move(gens));
}

FqVec Algebra::mul(const FqVec& a, const FqVec& b) const {
  if (a.size() != d_ || b.size() != d_)
    throw std::invalid_argument("element size mismatch");
  FqVec out(d_, 0);
  for (uint32_t i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (uint32_t j = 0; j < d_; ++j) {
      if (b[j] == 0) continue;
      FqElt c = F_->mul(a[i], b[j]);
      for (auto& [k, s] : product(i, j))
        out[k] = F_->add(out[k], F_->mul(c, s));
    }
  }
  return out;
}

FqVec Algebra::power(const FqVec& a, uint64_t k) const {
  if (k == 0) throw std::invalid_argument("power must be positive");
  FqVec acc;
  FqVec base = a;
  while (k) {
    if (k & 1) acc = acc.empty() ? base : mul(acc, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return acc;
}

FqMatrix Algebra::left_mult(const FqVec& a) const {
  FqMatrix M(*F_, d_, d_);
  for (uint32_t j = 0; j < d_; ++j) {
    if (a[j] == 0) continue;
    for (uint32_t i = 0; i < d_; ++i)
      for (auto& [k, s] : product(j, i))
        M(k, i) = F_->add(M(k, i), F_->mul(a[j], s));
  }
  return M;
}

FqMatrix Algebra::right_mult(const FqVec& a) const {
  FqMatrix M(*F_, d_, d_);
  for (uint32_t j = 0; j < d_; ++j) {
    if (a[j] == 0) continue;
    for (uint32_t i = 0; i < d_; ++i)
      for (auto& [k, s] : product(i, j))
        M(k, i) = F_->add(M(k, i), F_->mul(a[j], s));
  }
  return M;
}

bool Algebra::is_commutative() const {
  for (uint32_t i = 0; i < d_; ++i)
    for (uint32_t j = i + 1; j < d_; ++j)
      if (product(i, j) != product(j, i)) return false;
  return true;
}

bool Algebra::is_idempotent(const FqVec& e) const { return mul(e, e) == e; }

bool Algebra::is_central(const FqVec& z) const {
  for (auto& g : gens_)
    if (mul(z, g) != mul(g, z)) return false;
  return true;
}

FqVec SubAlgebraView::restrict(const FqVec& parent_vec) const {
  FqVec c(basis_rows.rows());
  for (size_t i = 0; i < c.size(); ++i) c[i] = parent_vec[pivots[i]];
  if (extend(c) != parent_vec)
    throw std::invalid_argument("vector outside subalgebra span");
  return c;
}

FqVec SubAlgebraView::extend(const FqVec& sub_vec) const {
  return basis_rows.mul_row(sub_vec);
}

bool SubAlgebraView::contains(const FqVec& parent_vec) const {
  FqVec c(basis_rows.rows());
  for (size_t i = 0; i < c.size(); ++i) c[i] = parent_vec[pivots[i]];
  return extend(c) == parent_vec;
}

SubAlgebraView subalgebra(const Algebra& A, const std::vector<FqVec>& span_set,
                          const FqVec& unit_vec_) {
  const Fq& F = A.field();
  Subspace S = Subspace::span(F, span_set, A.dim());
  SubAlgebraView V;
  V.basis_rows = S.basis();
  V.pivots = S.pivot_cols();
  size_t r = S.dim();
  std::vector<SparseVec> products(r * r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      FqVec prod = A.mul(V.basis_rows.row(i), V.basis_rows.row(j));
      if (!V.contains(prod))
        throw std::invalid_argument("span not multiplicatively closed");
      products[i * r + j] = sparse_of(V.restrict(prod));
    }
  std::vector<std::string> labels(r);
  for (size_t i = 0; i < r; ++i) labels[i] = "s" + std::to_string(i);
  V.alg = Algebra::from_structure(F, std::move(products), r,
                                  V.restrict(unit_vec_), std::move(labels), {});
  return V;
}

SubAlgebraView corner(const Algebra& A, const FqVec& e) {
  if (!A.is_idempotent(e)) throw std::invalid_argument("not an idempotent");
  std::vector<FqVec> span_set;
  for (size_t i = 0; i < A.dim(); ++i)
    span_set.push_back(A.mul(A.mul(e, unit_vec(A.dim(), i)), e));
  return subalgebra(A, span_set, e);
}

FqMatrix centralizer_basis(const Algebra& A, const std::vector<FqVec>& S) {
  const Fq& F = A.field();
  size_t d = A.dim();
  FqMatrix C(F, S.size() * d, d);
  for (size_t t = 0; t < S.size(); ++t) {
    FqMatrix D = A.left_mult(S[t]).sub(A.right_mult(S[t]));
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) C(t * d + i, j) = D(i, j);
  }
  return Subspace::row_space(kernel(C)).basis();
}

FqMatrix center_basis(const Algebra& A) {
  return centralizer_basis(A, A.gens());
}

SubAlgebraView center_view(const Algebra& A) {
  FqMatrix Z = center_basis(A);
  std::vector<FqVec> rows;
  for (size_t i = 0; i < Z.rows(); ++i) rows.push_back(Z.row(i));
  return subalgebra(A, rows, A.unit());
}

SubAlgebraView centralizer_view(const Algebra& A,
                                const std::vector<FqVec>& S) {
  FqMatrix Z = centralizer_basis(A, S);
  std::vector<FqVec> rows;
  for (size_t i = 0; i < Z.rows(); ++i) rows.push_back(Z.row(i));
  return subalgebra(A, rows, A.unit());
}

FqVec QuotientAlgebraView::project(const FqVec& parent_vec) const {
  FqVec r = ideal.reduce(parent_vec);
  FqVec out(free_cols.size());
  for (size_t i = 0; i < free_cols.size(); ++i) out[i] = r[free_cols[i]];
  return out;
}

FqVec QuotientAlgebraView::section(const FqVec& quot_vec) const {
  FqVec out(ideal.ambient(), 0);
  for (size_t i = 0; i < free_cols.size(); ++i) out[free_cols[i]] = quot_vec[i];
  return out;
}

QuotientAlgebraView quotient_algebra(const Algebra& A,
                                     const FqMatrix& ideal_rows) {
  const Fq& F = A.field();
  QuotientAlgebraView Q;
  Q.ideal = Subspace::row_space(ideal_rows);
  for (size_t i = 0; i < Q.ideal.dim(); ++i) {
    FqVec u = Q.ideal.basis().row(i);
    for (auto& g : A.gens())
      if (!Q.ideal.contains(A.mul(g, u)) || !Q.ideal.contains(A.mul(u, g)))
        throw std::invalid_argument("rows do not span a two-sided ideal");
  }
  Q.free_cols = Q.ideal.free_cols();
  size_t r = Q.free_cols.size();
  std::vector<SparseVec> products(r * r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      FqVec prod = A.mul(unit_vec(A.dim(), Q.free_cols[i]),
                         unit_vec(A.dim(), Q.free_cols[j]));
      products[i * r + j] = sparse_of(Q.project(prod));
    }
  std::vector<std::string> labels(r);
  for (size_t i = 0; i < r; ++i)
    labels[i] = "[" + A.labels()[Q.free_cols[i]] + "]";
  std::vector<FqVec> gens;
  for (auto& g : A.gens()) gens.push_back(Q.project(g));
  Q.alg = Algebra::from_structure(F, std::move(products), r,
                                  Q.project(A.unit()), std::move(labels),
                                  std::move(gens));
  return Q;
}

Algebra tensor_algebra(const Algebra& A, const Algebra& B) {
  const Fq& F = A.field();
  if (!(F == B.field())) throw std::invalid_argument("field mismatch");
  size_t da = A.dim(), db = B.dim(), d = da * db;
  std::vector<SparseVec> products(d * d);
  for (uint32_t i1 = 0; i1 < da; ++i1)
    for (uint32_t j1 = 0; j1 < db; ++j1)
      for (uint32_t i2 = 0; i2 < da; ++i2)
        for (uint32_t j2 = 0; j2 < db; ++j2) {
          SparseVec out;
          for (auto& [ka, ca] : A.product(i1, i2))
            for (auto& [kb, cb] : B.product(j1, j2))
              out.emplace_back(ka * db + kb, F.mul(ca, cb));
          std::sort(out.begin(), out.end());
          products[size_t(i1 * db + j1) * d + (i2 * db + j2)] =
              std::move(out);
        }
  FqVec unit(d, 0);
  for (uint32_t i = 0; i < da; ++i)
    for (uint32_t j = 0; j < db; ++j)
      unit[i * db + j] = F.mul(A.unit()[i], B.unit()[j]);
  std::vector<std::string> labels(d);
  for (uint32_t i = 0; i < da; ++i)
    for (uint32_t j = 0; j < db; ++j)
      labels[i * db + j] = A.labels()[i] + "|" + B.labels()[j];
  std::vector<FqVec> gens;
  for (auto& g : A.gens()) {
    FqVec v(d, 0);
    for (uint32_t i = 0; i < da; ++i)
      for (uint32_t j = 0; j < db; ++j)
        v[i * db + j] = F.mul(g[i], B.unit()[j]);
    gens.push_back(v);
  }
  for (auto& g : B.gens()) {
    FqVec v(d, 0);
    for (uint32_t i = 0; i < da; ++i)
      for (uint32_t j = 0; j < db; ++j)
        v[i * db + j] = F.mul(A.unit()[i], g[j]);
    gens.push_back(v);
  }
  return Algebra::from_structure(F, std::move(products), d, std::move(unit),
                                 std::move(labels), std::move(gens));
}

Algebra opposite(const Algebra& A) {
  size_t d = A.dim();
  std::vector<SparseVec> products(d * d);
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) products[i * d + j] = A.product(j, i);
  std::vector<FqVec> gens = A.gens();
  return Algebra::from_structure(A.field(), std::move(products), d, A.unit(),
                                 A.labels(), std::move(gens));
}

FqPoly min_poly_rel(const Algebra& A, const FqVec& x, const FqVec& e) {
  const Fq& F = A.field();
  size_t d = A.dim();
  std::vector<FqVec> pows{e};
  FqVec cur = x;
  for (size_t k = 1; k <= d + 1; ++k) {
    FqMatrix M(F, d, pows.size());
    for (size_t i = 0; i < d; ++i)
      for (size_t t = 0; t < pows.size(); ++t) M(i, t) = pows[t][i];
    FqMatrix b(F, d, 1);
    for (size_t i = 0; i < d; ++i) b(i, 0) = cur[i];
    Solution s = solve_all(M, b);
    if (s.ok) {
      FqPoly f(k + 1, 0);
      f[k] = 1;
      for (size_t t = 0; t < k; ++t) f[t] = F.neg(s.particular(t, 0));
      return f;
    }
    pows.push_back(cur);
    cur = A.mul(cur, x);
  }
  throw std::logic_error("no minimal polynomial found");
}

FqPoly min_poly(const Algebra& A, const FqVec& x) {
  return min_poly_rel(A, x, A.unit());
}

FqVec apply_poly(const Algebra& A, const FqPoly& f, const FqVec& x,
                 const FqVec& e) {
  const Fq& F = A.field();
  FqVec r(A.dim(), 0);
  for (size_t i = f.size(); i-- > 0;) {
    r = A.mul(r, x);
    if (f[i] != 0) r = vec_axpy(F, r, f[i], e);
  }
  return r;
}

FqMatrix ideal_closure(const Algebra& A, const std::vector<FqVec>& gens) {
  const Fq& F = A.field();
  Subspace S = Subspace::span(F, gens, A.dim());
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t i = 0; i < S.dim() && !grew; ++i) {
      FqVec u = S.basis().row(i);
      for (auto& g : A.gens()) {
        for (FqVec v : {A.mul(g, u), A.mul(u, g)}) {
          if (!S.contains(v)) {
            S = S.sum(Subspace::span(F, {v}, A.dim()));
            grew = true;
          }
        }
      }
    }
  }
  return S.basis();
}

bool is_nilpotent_space(const Algebra& A, const FqMatrix& rows) {
  const Fq& F = A.field();
  Subspace base = Subspace::row_space(rows);
  Subspace cur = base;
  for (size_t step = 0; step <= A.dim() + 1; ++step) {
    if (cur.dim() == 0) return true;
    std::vector<FqVec> prods;
    for (size_t i = 0; i < cur.dim(); ++i)
      for (size_t j = 0; j < base.dim(); ++j)
        prods.push_back(A.mul(cur.basis().row(i), base.basis().row(j)));
    Subspace next = Subspace::span(F, prods, A.dim());
    if (next == cur) return false;
    cur = next;
  }
  return false;
}

namespace {

FqMatrix radical_impl(const Algebra& A, bool verify) {
  const Fq& F = A.field();
  size_t d = A.dim();
  uint32_t p = F.p();

  // traces of left multiplication by each basis element
  FqVec tr(d, 0);
  for (uint32_t k = 0; k < d; ++k) {
    FqElt s = 0;
    for (uint32_t i = 0; i < d; ++i) s = F.add(s, sp_get(A.product(k, i), i));
    tr[k] = s;
  }
  // first stage: x with tr(L_{x y}) = 0 for all y
  FqMatrix C(F, d, d);
  for (uint32_t y = 0; y < d; ++y)
    for (uint32_t j = 0; j < d; ++j) {
      FqElt s = 0;
      for (auto& [k, c] : A.product(j, y)) s = F.add(s, F.mul(c, tr[k]));
      C(y, j) = s;
    }
  Subspace cur = Subspace::row_space(kernel(C));

  // later stages restrict by the t^(d - p^i) coefficient forms; those
  // are p^i-semilinear, so solve in the Frobenius-twisted coordinates
  // and untwist afterwards
  uint64_t pi = p;
  for (uint32_t i = 1; pi <= d; ++i, pi *= p) {
    size_t r = cur.dim();
    if (r == 0) break;
    FqMatrix Ci(F, r, r);
    for (size_t y = 0; y < r; ++y)
      for (size_t j = 0; j < r; ++j) {
        FqVec z = A.mul(cur.basis().row(j), cur.basis().row(y));
        FqPoly cp = charpoly(A.left_mult(z));
        Ci(y, j) = cp[d - pi];
      }
    FqMatrix K = kernel(Ci);
    uint32_t back = (F.m() - (i % F.m())) % F.m();
    std::vector<FqVec> rows;
    for (size_t t = 0; t < K.rows(); ++t) {
      FqVec w = K.row(t);
      FqVec x(d, 0);
      for (size_t j = 0; j < r; ++j) {
        FqElt c = F.frobenius(w[j], back);
        if (c != 0) x = vec_axpy(F, x, c, cur.basis().row(j));
      }
      rows.push_back(std::move(x));
    }
    cur = Subspace::span(F, rows, d);
  }

  if (verify) {
    for (size_t i = 0; i < cur.dim(); ++i) {
      FqVec u = cur.basis().row(i);
      for (auto& g : A.gens())
        if (!cur.contains(A.mul(g, u)) || !cur.contains(A.mul(u, g)))
          throw std::logic_error("radical check failed: not an ideal");
    }
    if (cur.dim() > 0 && !is_nilpotent_space(A, cur.basis()))
      throw std::logic_error("radical check failed: not nilpotent");
    QuotientAlgebraView Q = quotient_algebra(A, cur.basis());
    if (radical_impl(Q.alg, false).rows() != 0)
      throw std::logic_error("radical check failed: quotient not semisimple");
  }
  return cur.basis();
}

std::vector<FqVec> primitive_idempotents_comm(const Algebra& C) {
  const Fq& F = C.field();
  std::vector<FqVec> E{C.unit()};
  for (uint32_t t = 0; t < C.dim(); ++t) {
    FqVec z = unit_vec(C.dim(), t);
    std::vector<FqVec> next;
    for (auto& e : E) {
      FqVec u = C.mul(z, e);
      FqPoly mu = min_poly_rel(C, u, e);
      auto fs = poly_factor(F, mu);
      for (auto& [g, mult] : fs) {
        (void)g;
        if (mult != 1)
          throw std::logic_error("semisimple splitting hit a repeated factor");
      }
      if (fs.size() <= 1) {
        next.push_back(e);
        continue;
      }
      FqVec sum(C.dim(), 0);
      for (auto& [f, mult] : fs) {
        (void)mult;
        FqPoly g = poly_divmod(F, mu, f).first;
        FqPoly h = poly_invmod(F, g, f);
        FqPoly gh = poly_divmod(F, poly_mul(F, g, h), mu).second;
        FqVec ei = apply_poly(C, gh, u, e);
        if (!C.is_idempotent(ei))
          throw std::logic_error("splitting produced a non-idempotent");
        sum = vec_add(F, sum, ei);
        next.push_back(ei);
      }
      if (sum != e)
        throw std::logic_error("splitting lost part of the identity");
    }
    E = std::move(next);
  }
  for (auto& e : E)
    for (uint32_t t = 0; t < C.dim(); ++t) {
      FqVec u = C.mul(unit_vec(C.dim(), t), e);
      if (!poly_is_irreducible(F, min_poly_rel(C, u, e)))
        throw std::logic_error("component failed to split to a field");
    }
  return E;
}

}  // namespace

FqMatrix radical(const Algebra& A) { return radical_impl(A, true); }

std::vector<FqVec> blocks(const Algebra& A) {
  const Fq& F = A.field();
  SubAlgebraView Z = center_view(A);
  FqMatrix Jz = radical_impl(Z.alg, true);
  QuotientAlgebraView Q = quotient_algebra(Z.alg, Jz);
  auto prims = primitive_idempotents_comm(Q.alg);
  std::vector<FqVec> out;
  for (auto& eb : prims) {
    FqVec e = Q.section(eb);
    bool lifted = false;
    for (int it = 0; it < 64 && !lifted; ++it) {
      if (Z.alg.is_idempotent(e)) {
        lifted = true;
        break;
      }
      if (F.p() == 2) {
        e = Z.alg.mul(e, e);
      } else {
        FqVec e2 = Z.alg.mul(e, e), e3 = Z.alg.mul(e2, e);
        e = vec_sub(F, vec_scale(F, F.from_int(3), e2),
                    vec_scale(F, F.from_int(2), e3));
      }
    }
    if (!lifted) throw std::logic_error("idempotent failed to lift");
    out.push_back(Z.extend(e));
  }
  FqVec s(A.dim(), 0);
  for (auto& b : out) {
    if (!A.is_idempotent(b) || !A.is_central(b))
      throw std::logic_error("block candidate not a central idempotent");
    s = vec_add(F, s, b);
  }
  if (s != A.unit())
    throw std::logic_error("block idempotents do not sum to 1");
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (!vec_is_zero(A.mul(out[i], out[j])))
        throw std::logic_error("block idempotents not orthogonal");
  std::sort(out.begin(), out.end());
  return out;
}

size_t principal_block(const Fq& F, const std::vector<FqVec>& blks) {
  size_t found = blks.size();
  for (size_t i = 0; i < blks.size(); ++i) {
    FqElt s = 0;
    for (FqElt c : blks[i]) s = F.add(s, c);
    if (s == 1) {
      if (found != blks.size())
        throw std::logic_error("two blocks with nonzero augmentation");
      found = i;
    } else if (s != 0) {
      throw std::logic_error("augmentation of a block is not 0 or 1");
    }
  }
  if (found == blks.size())
    throw std::logic_error("no block with augmentation 1");
  return found;
}

}  // namespace bf
