#include "bf/graded.hpp"

#include <algorithm>
#include <random>

namespace bf {

namespace {

std::vector<FqVec> subspace_rows(const Subspace& S) {
  std::vector<FqVec> rows;
  for (size_t i = 0; i < S.dim(); ++i) rows.push_back(S.basis().row(i));
  return rows;
}

// span of all pairwise products of two subspaces
Subspace subspace_product(const Algebra& A, const Subspace& U,
                          const Subspace& V) {
  std::vector<FqVec> prods;
  for (size_t i = 0; i < U.dim(); ++i)
    for (size_t j = 0; j < V.dim(); ++j)
      prods.push_back(A.mul(U.basis().row(i), V.basis().row(j)));
  return Subspace::span(A.field(), prods, A.dim());
}

std::optional<FqVec> try_unit(const Grading& gr, const FqVec& u,
                              uint32_t deg) {
  FqMatrix L = gr.alg.left_mult(u);
  auto Li = inverse(L);
  if (!Li) return std::nullopt;
  FqVec v = Li->mul_col(gr.alg.unit());
  if (!gr.comp[gr.grade.inv(deg)].contains(v))
    throw std::logic_error("homogeneous inverse left its expected degree");
  if (gr.alg.mul(v, u) != gr.alg.unit())
    throw std::logic_error("one sided unit in a finite dimensional algebra");
  return v;
}

}  // namespace

void verify_grading(const Grading& gr) {
  const Algebra& A = gr.alg;
  if (gr.comp.size() != gr.grade.order())
    throw std::invalid_argument("one component per degree required");
  size_t total = 0;
  std::vector<FqVec> all;
  for (auto& c : gr.comp) {
    if (c.ambient() != A.dim())
      throw std::invalid_argument("component ambient mismatch");
    total += c.dim();
    for (auto& r : subspace_rows(c)) all.push_back(r);
  }
  if (total != A.dim() ||
      Subspace::span(A.field(), all, A.dim()).dim() != A.dim())
    throw std::invalid_argument("components do not direct-sum to the algebra");
  if (!gr.comp[0].contains(A.unit()))
    throw std::invalid_argument("unit outside the identity component");
  for (uint32_t x = 0; x < gr.grade.order(); ++x)
    for (uint32_t y = 0; y < gr.grade.order(); ++y) {
      const Subspace& target = gr.comp[gr.grade.mul(x, y)];
      for (size_t i = 0; i < gr.comp[x].dim(); ++i)
        for (size_t j = 0; j < gr.comp[y].dim(); ++j)
          if (!target.contains(A.mul(gr.comp[x].basis().row(i),
                                     gr.comp[y].basis().row(j))))
            throw std::invalid_argument(
                "component product escaped its degree");
    }
}

Grading trivial_grading(Algebra A) {
  Grading gr;
  gr.grade = Group::cyclic(1);
  gr.comp = {Subspace::full(A.field(), A.dim())};
  gr.alg = std::move(A);
  return gr;
}

BlockExtension grade_by_quotient(const Algebra& kG, const Group& G,
                                 const std::vector<uint32_t>& N,
                                 const FqVec& e) {
  const Fq& F = kG.field();
  if (kG.dim() != G.order() || e.size() != G.order())
    throw std::invalid_argument("group algebra shape mismatch");
  std::vector<bool> inN(G.order(), false);
  for (uint32_t g : N) inN[g] = true;
  for (uint32_t g = 0; g < G.order(); ++g)
    if (e[g] != 0 && !inN[g])
      throw std::invalid_argument("idempotent not supported on the subgroup");
  if (!kG.is_idempotent(e))
    throw std::invalid_argument("not an idempotent");
  for (uint32_t g : N) {
    FqVec gv = unit_vec(kG.dim(), g);
    if (kG.mul(gv, e) != kG.mul(e, gv))
      throw std::invalid_argument("not central in the subgroup span");
  }
  for (uint32_t g = 0; g < G.order(); ++g) {
    FqVec gv = unit_vec(kG.dim(), g);
    if (kG.mul(gv, e) != kG.mul(e, gv))
      throw NotInvariant("idempotent moves under conjugation");
  }

  BlockExtension be;
  be.quot = quotient(G, N);
  std::vector<FqVec> span_set;
  for (uint32_t g = 0; g < G.order(); ++g)
    span_set.push_back(kG.mul(e, unit_vec(kG.dim(), g)));
  be.view = subalgebra(kG, span_set, e);

  be.gr.alg = be.view.alg;
  be.gr.grade = be.quot.group;
  for (auto& coset : be.quot.cosets) {
    std::vector<FqVec> rows;
    for (uint32_t g : coset)
      rows.push_back(be.view.restrict(kG.mul(e, unit_vec(kG.dim(), g))));
    be.gr.comp.push_back(
        Subspace::span(F, rows, be.gr.alg.dim()));
  }
  verify_grading(be.gr);
  return be;
}

Grading tensor_grading(const Grading& a, const Grading& b) {
  Grading gr;
  gr.alg = tensor_algebra(a.alg, b.alg);
  gr.grade = direct_product(a.grade, b.grade);
  const Fq& F = gr.alg.field();
  size_t db = b.alg.dim();
  for (uint32_t x = 0; x < a.grade.order(); ++x)
    for (uint32_t y = 0; y < b.grade.order(); ++y) {
      std::vector<FqVec> rows;
      for (size_t i = 0; i < a.comp[x].dim(); ++i)
        for (size_t j = 0; j < b.comp[y].dim(); ++j) {
          FqVec u = a.comp[x].basis().row(i);
          FqVec v = b.comp[y].basis().row(j);
          FqVec w(gr.alg.dim(), 0);
          for (size_t s = 0; s < u.size(); ++s) {
            if (u[s] == 0) continue;
            for (size_t t = 0; t < v.size(); ++t)
              if (v[t] != 0) w[s * db + t] = F.mul(u[s], v[t]);
          }
          rows.push_back(std::move(w));
        }
      gr.comp.push_back(Subspace::span(F, rows, gr.alg.dim()));
    }
  verify_grading(gr);
  return gr;
}

CrossedUnits crossed_product_check(const Grading& gr) {
  const Fq& F = gr.alg.field();
  CrossedUnits cu;
  cu.unit.resize(gr.grade.order());
  cu.unit_inv.resize(gr.grade.order());
  for (uint32_t x = 0; x < gr.grade.order(); ++x) {
    const Subspace& C = gr.comp[x];
    if (C.dim() == 0)
      throw NotCrossedProduct("zero component at degree " +
                              gr.grade.name(x));
    std::optional<FqVec> found;
    for (size_t i = 0; i < C.dim() && !found; ++i) {
      FqVec u = C.basis().row(i);
      if (auto v = try_unit(gr, u, x)) {
        cu.unit[x] = u;
        cu.unit_inv[x] = *v;
        found = u;
      }
    }
    double sz = 1;
    for (size_t i = 0; i < C.dim(); ++i) sz *= F.q();
    if (!found && sz <= 4096) {
      FqVec coeff(C.dim(), 0);
      bool more = true;
      while (more && !found) {
        FqVec u = C.basis().mul_row(coeff);
        if (!vec_is_zero(u)) {
          if (auto v = try_unit(gr, u, x)) {
            cu.unit[x] = u;
            cu.unit_inv[x] = *v;
            found = u;
          }
        }
        more = false;
        for (size_t i = 0; i < coeff.size(); ++i) {
          if (++coeff[i] < F.q()) {
            more = true;
            break;
          }
          coeff[i] = 0;
        }
      }
    } else if (!found) {
      std::mt19937_64 rng(0xb10cf04d + x);
      std::uniform_int_distribution<uint32_t> d(0, F.q() - 1);
      for (int t = 0; t < 5000 && !found; ++t) {
        FqVec coeff(C.dim());
        for (auto& c : coeff) c = d(rng);
        FqVec u = C.basis().mul_row(coeff);
        if (vec_is_zero(u)) continue;
        if (auto v = try_unit(gr, u, x)) {
          cu.unit[x] = u;
          cu.unit_inv[x] = *v;
          found = u;
        }
      }
    }
    if (!found)
      throw NotCrossedProduct("no invertible element found at degree " +
                              gr.grade.name(x));
  }
  return cu;
}

Subspace graded_radical(const Grading& gr) {
  const Fq& F = gr.alg.field();
  CrossedUnits cu = crossed_product_check(gr);
  SubAlgebraView B = subalgebra(gr.alg, subspace_rows(gr.comp[0]),
                                gr.alg.unit());
  FqMatrix Jb = radical(B.alg);
  std::vector<FqVec> jb;
  for (size_t i = 0; i < Jb.rows(); ++i) jb.push_back(B.extend(Jb.row(i)));

  std::vector<FqVec> left, right;
  for (auto& j : jb)
    for (uint32_t x = 0; x < gr.grade.order(); ++x) {
      left.push_back(gr.alg.mul(j, cu.unit[x]));
      right.push_back(gr.alg.mul(cu.unit[x], j));
    }
  Subspace Jgr = Subspace::span(F, left, gr.alg.dim());
  if (!(Jgr == Subspace::span(F, right, gr.alg.dim())))
    throw std::logic_error("left and right graded radicals differ");

  for (auto& r : subspace_rows(Jgr))
    for (auto& g : gr.alg.gens())
      if (!Jgr.contains(gr.alg.mul(g, r)) ||
          !Jgr.contains(gr.alg.mul(r, g)))
        throw std::logic_error("graded radical is not an ideal");
  size_t graded_dim = 0;
  for (auto& c : gr.comp) graded_dim += Jgr.intersect(c).dim();
  if (graded_dim != Jgr.dim())
    throw std::logic_error("graded radical is not graded");
  Subspace meet = Jgr.intersect(gr.comp[0]);
  Subspace JbS = Subspace::span(F, jb, gr.alg.dim());
  if (!(meet == JbS))
    throw std::logic_error(
        "graded radical meets the identity component wrongly");
  return Jgr;
}

std::vector<uint32_t> dade_group(const Grading& gr) {
  std::vector<uint32_t> out;
  for (uint32_t x = 0; x < gr.grade.order(); ++x) {
    Subspace prod =
        subspace_product(gr.alg, gr.comp[x], gr.comp[gr.grade.inv(x)]);
    if (prod == gr.comp[0]) out.push_back(x);
  }
  for (uint32_t a : out) {
    bool invok = false, mulok = true;
    for (uint32_t b : out) {
      if (gr.grade.inv(a) == b) invok = true;
      if (std::find(out.begin(), out.end(), gr.grade.mul(a, b)) == out.end())
        mulok = false;
    }
    if (!invok || !mulok)
      throw std::logic_error("full-product degrees do not form a subgroup");
  }
  return out;
}

CbarResult cbar(const Grading& gr) {
  const Fq& F = gr.alg.field();
  CbarResult R;
  R.cab = centralizer_view(gr.alg, subspace_rows(gr.comp[0]));

  // the centralizer inherits the grading by intersection
  std::vector<Subspace> comp_c;
  Subspace cab_space = Subspace::row_space(R.cab.basis_rows);
  size_t total = 0;
  for (auto& c : gr.comp) {
    Subspace meet = cab_space.intersect(c);
    std::vector<FqVec> rows;
    for (auto& r : subspace_rows(meet)) rows.push_back(R.cab.restrict(r));
    comp_c.push_back(Subspace::span(F, rows, R.cab.alg.dim()));
    total += comp_c.back().dim();
  }
  if (total != R.cab.alg.dim())
    throw std::logic_error("centralizer is not graded by intersection");

  // graded part of the radical: componentwise meet, a graded two-sided
  // ideal (the centralizer need not be a crossed product)
  Subspace J = Subspace::row_space(radical(R.cab.alg));
  std::vector<FqVec> jrows;
  for (auto& c : comp_c)
    for (auto& r : subspace_rows(J.intersect(c))) jrows.push_back(r);
  Subspace Jgr = Subspace::span(F, jrows, R.cab.alg.dim());
  R.quot = quotient_algebra(R.cab.alg, Jgr.basis());

  // grade the quotient by images; the support must be the Dade subgroup
  // of the centralizer's own grading (the ambient components can multiply
  // onto the identity component even when the centralizer's do not)
  std::vector<Subspace> comp_q;
  std::vector<uint32_t> support;
  for (uint32_t x = 0; x < gr.grade.order(); ++x) {
    std::vector<FqVec> rows;
    for (auto& r : subspace_rows(comp_c[x])) rows.push_back(R.quot.project(r));
    comp_q.push_back(Subspace::span(F, rows, R.quot.alg.dim()));
    if (comp_q.back().dim() > 0) support.push_back(x);
  }
  Grading grc;
  grc.alg = R.cab.alg;
  grc.grade = gr.grade;
  grc.comp = comp_c;
  R.dade = dade_group(grc);
  if (support != R.dade)
    throw std::logic_error(
        "support of the reduced centralizer is not the Dade subgroup");

  R.cbar.alg = R.quot.alg;
  R.cbar.grade = sub_group(gr.grade, R.dade);
  for (uint32_t x : R.dade) R.cbar.comp.push_back(comp_q[x]);
  verify_grading(R.cbar);
  crossed_product_check(R.cbar);

  // conjugation action by homogeneous units, pushed to the quotient
  CrossedUnits cu = crossed_product_check(gr);
  auto action_of = [&](const std::vector<FqVec>& units,
                       const std::vector<FqVec>& invs, uint32_t x) {
    FqMatrix M(F, R.cbar.alg.dim(), R.cbar.alg.dim());
    for (size_t i = 0; i < R.cbar.alg.dim(); ++i) {
      FqVec c = R.cab.extend(R.quot.section(unit_vec(R.cbar.alg.dim(), i)));
      FqVec img = gr.alg.mul(gr.alg.mul(units[x], c), invs[x]);
      FqVec q = R.quot.project(R.cab.restrict(img));
      for (size_t k = 0; k < q.size(); ++k) M(k, i) = q[k];
    }
    return M;
  };
  for (uint32_t x = 0; x < gr.grade.order(); ++x)
    R.action.push_back(action_of(cu.unit, cu.unit_inv, x));

  // independence of the unit choice, where the identity component has
  // radical to perturb by
  SubAlgebraView B = subalgebra(gr.alg, subspace_rows(gr.comp[0]),
                                gr.alg.unit());
  FqMatrix Jb = radical(B.alg);
  if (Jb.rows() > 0) {
    std::vector<FqVec> u2(gr.grade.order()), v2(gr.grade.order());
    FqVec w = vec_add(F, gr.alg.unit(), B.extend(Jb.row(0)));
    FqMatrix Lw = gr.alg.left_mult(w);
    FqVec winv = inverse(Lw)->mul_col(gr.alg.unit());
    for (uint32_t x = 0; x < gr.grade.order(); ++x) {
      u2[x] = gr.alg.mul(cu.unit[x], w);
      v2[x] = gr.alg.mul(winv, cu.unit_inv[x]);
    }
    for (uint32_t x = 0; x < gr.grade.order(); ++x)
      if (!(action_of(u2, v2, x) == R.action[x]))
        throw std::logic_error("action depends on the unit choice");
  }

  // automorphisms, action law, and degree twisting on the quotient
  auto dade_pos = [&](uint32_t g) {
    auto it = std::find(R.dade.begin(), R.dade.end(), g);
    if (it == R.dade.end())
      throw std::logic_error("degree conjugation left the Dade subgroup");
    return uint32_t(it - R.dade.begin());
  };
  size_t d = R.cbar.alg.dim();
  for (uint32_t x = 0; x < gr.grade.order(); ++x) {
    const FqMatrix& M = R.action[x];
    if (M.mul_col(R.cbar.alg.unit()) != R.cbar.alg.unit())
      throw std::logic_error("action does not fix the unit");
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        FqVec lhs = M.mul_col(
            R.cbar.alg.mul(unit_vec(d, i), unit_vec(d, j)));
        FqVec rhs = R.cbar.alg.mul(M.mul_col(unit_vec(d, i)),
                                   M.mul_col(unit_vec(d, j)));
        if (lhs != rhs)
          throw std::logic_error("action is not by algebra maps");
      }
    for (uint32_t y = 0; y < gr.grade.order(); ++y) {
      FqMatrix c1 = R.action[gr.grade.mul(x, y)];
      FqMatrix c2 = M.mul(R.action[y]);
      if (!(c1 == c2)) throw std::logic_error("action law fails");
    }
    for (size_t h = 0; h < R.dade.size(); ++h) {
      uint32_t tw = gr.grade.conj(x, R.dade[h]);
      uint32_t pos = dade_pos(tw);
      for (size_t i = 0; i < R.cbar.comp[h].dim(); ++i)
        if (!R.cbar.comp[pos].contains(
                M.mul_col(R.cbar.comp[h].basis().row(i))))
          throw std::logic_error("action does not twist degrees correctly");
    }
  }
  return R;
}

GradedMapReport verify_graded_hom(const FqMatrix& f, const Grading& src,
                                  const Grading& dst,
                                  const std::vector<FqMatrix>* src_action,
                                  const std::vector<FqMatrix>* dst_action,
                                  bool require_bijective) {
  GradedMapReport rep;
  auto fail = [&](std::string what, std::string wit) {
    rep.ok = false;
    rep.violation = std::move(what);
    rep.witness = std::move(wit);
    return rep;
  };
  if (src.grade.order() != dst.grade.order())
    return fail("grading groups differ", "orders " +
                                             std::to_string(src.grade.order()) +
                                             " vs " +
                                             std::to_string(dst.grade.order()));
  if (f.rows() != dst.alg.dim() || f.cols() != src.alg.dim())
    return fail("shape mismatch", "matrix is " + std::to_string(f.rows()) +
                                      "x" + std::to_string(f.cols()));
  if (require_bijective &&
      (src.alg.dim() != dst.alg.dim() || rank(f) != src.alg.dim()))
    return fail("not bijective", "rank " + std::to_string(rank(f)));
  if (f.mul_col(src.alg.unit()) != dst.alg.unit())
    return fail("unit not preserved", "image of 1");
  // f(g x) = f(g) f(x) for generators g and all x; with linearity and
  // the unit this forces multiplicativity on the whole algebra
  for (size_t t = 0; t < src.alg.gens().size(); ++t) {
    const FqVec& g = src.alg.gens()[t];
    FqMatrix lhs = f.mul(src.alg.left_mult(g));
    FqMatrix rhs = dst.alg.left_mult(f.mul_col(g)).mul(f);
    if (!(lhs == rhs))
      return fail("not multiplicative", "generator " + std::to_string(t));
  }
  for (uint32_t x = 0; x < src.grade.order(); ++x)
    for (size_t i = 0; i < src.comp[x].dim(); ++i)
      if (!dst.comp[x].contains(f.mul_col(src.comp[x].basis().row(i))))
        return fail("grade not preserved",
                    "degree " + src.grade.name(x) + ", basis vector " +
                        std::to_string(i));
  if (src_action && dst_action) {
    if (src_action->size() != dst_action->size())
      return fail("action groups differ", "sizes");
    for (size_t x = 0; x < src_action->size(); ++x) {
      FqMatrix lhs = f.mul((*src_action)[x]);
      FqMatrix rhs = (*dst_action)[x].mul(f);
      if (!(lhs == rhs))
        return fail("not equivariant", "acting element " + std::to_string(x));
    }
  }
  return rep;
}

GradedMapReport verify_graded_iso(const FqMatrix& f, const Grading& src,
                                  const Grading& dst,
                                  const std::vector<FqMatrix>* src_action,
                                  const std::vector<FqMatrix>* dst_action) {
  return verify_graded_hom(f, src, dst, src_action, dst_action, true);
}

}  // namespace bf
