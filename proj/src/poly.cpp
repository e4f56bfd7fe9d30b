#include "bf/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bf {

FqPoly poly_trim(FqPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

FqPoly poly_add(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  return poly_trim(std::move(c));
}

FqPoly poly_sub(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  return poly_trim(std::move(c));
}

FqPoly poly_mul(const Fq& F, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  return poly_trim(std::move(c));
}

FqPoly poly_scale(const Fq& F, FqElt c, const FqPoly& a) {
  FqPoly out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = F.mul(c, a[i]);
  return poly_trim(std::move(out));
}

FqPoly poly_monic(const Fq& F, FqPoly a) {
  a = poly_trim(std::move(a));
  if (a.empty() || a.back() == 1) return a;
  return poly_scale(F, F.inv(a.back()), a);
}

std::pair<FqPoly, FqPoly> poly_divmod(const Fq& F, FqPoly a,
                                      const FqPoly& b) {
  if (b.empty()) throw std::invalid_argument("polynomial division by zero");
  FqPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  FqElt li = F.inv(b.back());
  while (a.size() >= b.size()) {
    FqElt c = F.mul(a.back(), li);
    size_t shift = a.size() - b.size();
    if (c != 0) {
      q[shift] = c;
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    }
    a.pop_back();
    a = poly_trim(std::move(a));
    if (a.size() < b.size()) break;
  }
  return {poly_trim(std::move(q)), poly_trim(std::move(a))};
}

FqPoly poly_gcd(const Fq& F, FqPoly a, FqPoly b) {
  while (!b.empty()) {
    a = poly_divmod(F, std::move(a), b).second;
    std::swap(a, b);
  }
  return poly_monic(F, std::move(a));
}

FqPoly poly_powmod(const Fq& F, FqPoly base, uint64_t e, const FqPoly& mod) {
  FqPoly r{1};
  base = poly_divmod(F, std::move(base), mod).second;
  while (e) {
    if (e & 1) r = poly_divmod(F, poly_mul(F, r, base), mod).second;
    base = poly_divmod(F, poly_mul(F, base, base), mod).second;
    e >>= 1;
  }
  return r;
}

FqPoly poly_invmod(const Fq& F, const FqPoly& a, const FqPoly& m) {
  // extended Euclid: r0 = m, r1 = a mod m
  FqPoly r0 = m, r1 = poly_divmod(F, a, m).second;
  FqPoly t0, t1{1};
  while (!r1.empty()) {
    auto [q, r2] = poly_divmod(F, r0, r1);
    FqPoly t2 = poly_sub(F, t0, poly_mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (poly_deg(r0) != 0)
    throw std::invalid_argument("not invertible modulo m");
  return poly_divmod(F, poly_scale(F, F.inv(r0[0]), t0), m).second;
}

FqElt poly_eval(const Fq& F, const FqPoly& f, FqElt x) {
  FqElt v = 0;
  for (size_t i = f.size(); i-- > 0;) v = F.add(F.mul(v, x), f[i]);
  return v;
}

FqPoly poly_derivative(const Fq& F, const FqPoly& f) {
  FqPoly d;
  for (size_t i = 1; i < f.size(); ++i)
    d.push_back(F.mul(F.from_int(int64_t(i)), f[i]));
  return poly_trim(std::move(d));
}

namespace {

// f monic squarefree of degree >= 1
void berlekamp(const Fq& F, const FqPoly& f, std::vector<FqPoly>& out) {
  size_t d = f.size() - 1;
  if (d == 1) {
    out.push_back(f);
    return;
  }
  FqMatrix Q(F, d, d);
  for (size_t i = 0; i < d; ++i) {
    FqPoly xiq = poly_powmod(F, FqPoly{0, 1}, uint64_t(i) * F.q(), f);
    for (size_t j = 0; j < xiq.size(); ++j) Q(i, j) = xiq[j];
    Q(i, i) = F.sub(Q(i, i), 1);
  }
  FqMatrix K = kernel(Q.transpose());
  if (K.rows() == 1) {
    out.push_back(f);
    return;
  }
  // first non-constant vector of the Frobenius-fixed subalgebra
  FqPoly v;
  for (size_t t = 0; t < K.rows(); ++t) {
    FqPoly cand = poly_trim(K.row(t));
    if (poly_deg(cand) >= 1) {
      v = cand;
      break;
    }
  }
  for (FqElt c = 0; c < F.q(); ++c) {
    FqPoly g = poly_gcd(F, f, poly_sub(F, v, FqPoly{c}));
    if (poly_deg(g) >= 1 && g.size() < f.size()) {
      berlekamp(F, g, out);
      berlekamp(F, poly_monic(F, poly_divmod(F, f, g).first), out);
      return;
    }
  }
  throw std::logic_error("berlekamp split failed");
}

void factor_rec(const Fq& F, FqPoly f, uint32_t mult,
                std::map<FqPoly, uint32_t>& acc) {
  f = poly_monic(F, std::move(f));
  if (poly_deg(f) < 1) return;
  FqPoly d = poly_derivative(F, f);
  if (d.empty()) {
    // f = g(x^p); the p-th root of a coefficient is a^(p^(m-1))
    uint32_t p = F.p();
    FqPoly g;
    for (size_t i = 0; i < f.size(); i += p)
      g.push_back(F.frobenius(f[i], F.m() - 1));
    factor_rec(F, poly_trim(std::move(g)), mult * p, acc);
    return;
  }
  FqPoly s = poly_gcd(F, f, d);
  if (poly_deg(s) >= 1) {
    factor_rec(F, s, mult, acc);
    factor_rec(F, poly_divmod(F, f, s).first, mult, acc);
    return;
  }
  std::vector<FqPoly> irr;
  berlekamp(F, f, irr);
  for (auto& g : irr) acc[g] += mult;
}

}  // namespace

std::vector<std::pair<FqPoly, uint32_t>> poly_factor(const Fq& F, FqPoly f) {
  f = poly_trim(std::move(f));
  if (f.empty()) throw std::invalid_argument("factor of zero polynomial");
  std::map<FqPoly, uint32_t> acc;
  factor_rec(F, std::move(f), 1, acc);
  std::vector<std::pair<FqPoly, uint32_t>> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size())
      return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

bool poly_is_irreducible(const Fq& F, const FqPoly& f) {
  if (poly_deg(f) < 1) return false;
  auto fs = poly_factor(F, f);
  return fs.size() == 1 && fs[0].second == 1;
}

bool poly_is_squarefree(const Fq& F, const FqPoly& f) {
  for (auto& [g, m] : poly_factor(F, f)) {
    (void)g;
    if (m > 1) return false;
  }
  return true;
}

FqPoly charpoly(const FqMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("not square");
  const Fq& F = M.field();
  size_t n = M.rows();
  if (n == 0) return {1};
  FqMatrix H = M;
  // similarity reduction to upper Hessenberg form
  for (size_t j = 0; j + 2 < n; ++j) {
    size_t piv = 0;
    bool found = false;
    for (size_t i = j + 1; i < n; ++i)
      if (H(i, j) != 0) {
        piv = i;
        found = true;
        break;
      }
    if (!found) continue;
    if (piv != j + 1) {
      for (size_t c = 0; c < n; ++c) std::swap(H(piv, c), H(j + 1, c));
      for (size_t r = 0; r < n; ++r) std::swap(H(r, piv), H(r, j + 1));
    }
    FqElt iv = F.inv(H(j + 1, j));
    for (size_t i = j + 2; i < n; ++i) {
      FqElt t = F.mul(H(i, j), iv);
      if (t == 0) continue;
      for (size_t c = 0; c < n; ++c) H(i, c) = F.sub(H(i, c), F.mul(t, H(j + 1, c)));
      for (size_t r = 0; r < n; ++r) H(r, j + 1) = F.add(H(r, j + 1), F.mul(t, H(r, i)));
    }
  }
  // p_k = (t - H[k-1][k-1]) p_{k-1}
  //       - sum_i H[i-1][k-1] (prod_{j=i+1..k} H[j-1][j-2]) p_{i-1}
  std::vector<FqPoly> p(n + 1);
  p[0] = {1};
  for (size_t k = 1; k <= n; ++k) {
    FqPoly cur(p[k - 1].size() + 1, 0);
    for (size_t i = 0; i < p[k - 1].size(); ++i) cur[i + 1] = p[k - 1][i];
    cur = poly_sub(F, cur, poly_scale(F, H(k - 1, k - 1), p[k - 1]));
    FqElt prod = 1;
    for (size_t i = k - 1; i >= 1; --i) {
      prod = F.mul(prod, H(i, i - 1));
      if (prod == 0) break;
      FqElt coef = F.mul(H(i - 1, k - 1), prod);
      if (coef != 0) cur = poly_sub(F, cur, poly_scale(F, coef, p[i - 1]));
    }
    p[k] = std::move(cur);
  }
  FqPoly out = p[n];
  out.resize(n + 1, 0);  // keep the full degree even if trim dropped zeros
  return out;
}

}  // namespace bf
