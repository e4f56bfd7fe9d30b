#include "bf/fq.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>

namespace bf {

namespace {

constexpr uint64_t kMaxQ = 1u << 20;
constexpr uint32_t kMaxDeg = 8;

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  // extended Euclid, p prime, a != 0 mod p
  int64_t t = 0, nt = 1;
  int64_t r = int64_t(p), nr = int64_t(a % p);
  while (nr != 0) {
    int64_t quot = r / nr;
    std::swap(t -= quot * nt, nt);
    std::swap(r -= quot * nr, nr);
  }
  return uint64_t(t < 0 ? t + int64_t(p) : t);
}

// dense little-endian polynomials over GF(p), trimmed
using Poly = std::vector<uint64_t>;

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  ptrim(c);
  return c;
}

Poly pmod(Poly a, const Poly& f, uint64_t p) {
  // f monic
  while (a.size() >= f.size()) {
    uint64_t lead = a.back();
    size_t shift = a.size() - f.size();
    if (lead != 0)
      for (size_t i = 0; i < f.size(); ++i)
        a[shift + i] = (a[shift + i] + (p - f[i] % p) % p * lead) % p;
    a.pop_back();
    ptrim(a);
    if (a.size() < f.size()) break;
  }
  ptrim(a);
  return a;
}

Poly ppowmod(Poly base, uint64_t e, const Poly& f, uint64_t p) {
  Poly r{1};
  base = pmod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = pmod(pmul(r, base, p), f, p);
    base = pmod(pmul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

Poly psub(Poly a, const Poly& b, uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  ptrim(a);
  return a;
}

Poly pgcd(Poly a, Poly b, uint64_t p) {
  while (!b.empty()) {
    // normalize b monic before reducing
    uint64_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = c * li % p;
    a = pmod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

std::vector<uint64_t> prime_divisors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_irreducible(const Poly& f, uint64_t p, uint32_t m) {
  if (m == 1) return true;
  Poly x{0, 1};
  uint64_t pm = 1;
  for (uint32_t i = 0; i < m; ++i) pm *= p;
  if (!psub(ppowmod(x, pm, f, p), pmod(x, f, p), p).empty()) return false;
  for (uint64_t r : prime_divisors(m)) {
    uint64_t pk = 1;
    for (uint32_t i = 0; i < m / r; ++i) pk *= p;
    Poly g = psub(ppowmod(x, pk, f, p), pmod(x, f, p), p);
    Poly d = pgcd(f, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace

NotPrime::NotPrime(uint64_t p)
    : std::invalid_argument("not a prime: " + std::to_string(p)) {}

DegreeOutOfRange::DegreeOutOfRange(uint64_t p, uint64_t m)
    : std::invalid_argument("field size out of range: p=" + std::to_string(p) +
                            " m=" + std::to_string(m)) {}

const Fq& Fq::get(uint32_t p, uint32_t m) {
  static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<Fq>> cache;
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<Fq>(new Fq(p, m))).first;
  return *it->second;
}

Fq::Fq(uint32_t p, uint32_t m) : p_(p), m_(m) {
  if (!is_prime(p)) throw NotPrime(p);
  if (m < 1 || m > kMaxDeg) throw DegreeOutOfRange(p, m);
  uint64_t q = 1;
  for (uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxQ) throw DegreeOutOfRange(p, m);
  }
  q_ = uint32_t(q);

  ppow_.resize(m + 1);
  ppow_[0] = 1;
  for (uint32_t i = 1; i <= m; ++i) ppow_[i] = ppow_[i - 1] * p;

  // smallest-code irreducible monic modulus
  for (uint32_t code = 0; code < q_; ++code) {
    Poly f(m + 1, 0);
    uint32_t c = code;
    for (uint32_t i = 0; i < m; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[m] = 1;
    if (is_irreducible(f, p, m)) {
      mod_.assign(f.begin(), f.end());
      break;
    }
  }

  // multiplicative generator: smallest code whose order is q-1
  uint64_t n = q_ - 1;
  if (n == 1) {
    gen_ = 1;
  } else {
    auto divs = prime_divisors(n);
    gen_ = 0;
    for (FqElt cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (uint64_t r : divs) {
        FqElt acc = 1, base = cand;
        uint64_t e = n / r;
        while (e) {
          if (e & 1) acc = slow_mul(acc, base);
          base = slow_mul(base, base);
          e >>= 1;
        }
        if (acc == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen_ = cand;
        break;
      }
    }
  }

  exp_.resize(2 * n);
  log_.assign(q_, 0);
  exp_[0] = 1;
  for (uint64_t i = 1; i < n; ++i) exp_[i] = slow_mul(exp_[i - 1], gen_);
  for (uint64_t i = 0; i < n; ++i) {
    log_[exp_[i]] = uint32_t(i);
    exp_[i + n] = exp_[i];
  }

  if (q_ <= 256) {
    add_table_.resize(size_t(q_) * q_);
    for (FqElt a = 0; a < q_; ++a)
      for (FqElt b = 0; b < q_; ++b) {
        uint32_t s = 0, x = a, y = b;
        for (uint32_t i = 0; i < m_; ++i) {
          s += (x % p_ + y % p_) % p_ * ppow_[i];
          x /= p_;
          y /= p_;
        }
        add_table_[size_t(a) * q_ + b] = s;
      }
  }
}

FqElt Fq::slow_mul(FqElt a, FqElt b) const {
  Poly pa(m_), pb(m_);
  uint32_t x = a, y = b;
  for (uint32_t i = 0; i < m_; ++i) {
    pa[i] = x % p_;
    pb[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  ptrim(pa);
  ptrim(pb);
  Poly f(mod_.begin(), mod_.end());
  Poly c = pmod(pmul(pa, pb, p_), f, p_);
  uint32_t code = 0;
  for (size_t i = 0; i < c.size(); ++i) code += uint32_t(c[i]) * ppow_[i];
  return code;
}

FqElt Fq::add(FqElt a, FqElt b) const {
  if (!add_table_.empty()) return add_table_[size_t(a) * q_ + b];
  uint32_t s = 0, x = a, y = b;
  for (uint32_t i = 0; i < m_; ++i) {
    s += (x % p_ + y % p_) % p_ * ppow_[i];
    x /= p_;
    y /= p_;
  }
  return s;
}

FqElt Fq::neg(FqElt a) const {
  uint32_t s = 0, x = a;
  for (uint32_t i = 0; i < m_; ++i) {
    s += (p_ - x % p_) % p_ * ppow_[i];
    x /= p_;
  }
  return s;
}

FqElt Fq::sub(FqElt a, FqElt b) const { return add(a, neg(b)); }

FqElt Fq::mul(FqElt a, FqElt b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[size_t(log_[a]) + log_[b]];
}

FqElt Fq::inv(FqElt a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return exp_[size_t(q_) - 1 - log_[a]];
}

FqElt Fq::div(FqElt a, FqElt b) const { return mul(a, inv(b)); }

FqElt Fq::pow(FqElt a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  uint64_t n = q_ - 1;
  return exp_[uint64_t(log_[a]) * (e % n) % n];
}

FqElt Fq::frobenius(FqElt a, uint32_t k) const {
  if (a == 0) return 0;
  uint64_t n = q_ - 1;
  uint64_t e = 1;
  for (uint32_t i = 0; i < k % m_; ++i) e = e * p_ % n;
  return exp_[uint64_t(log_[a]) * e % n];
}

FqElt Fq::trace_to_prime(FqElt a) const {
  FqElt t = 0;
  for (uint32_t i = 0; i < m_; ++i) t = add(t, frobenius(a, i));
  return t;
}

FqElt Fq::from_int(int64_t n) const {
  int64_t r = n % int64_t(p_);
  if (r < 0) r += p_;
  return FqElt(r);
}

std::vector<uint32_t> Fq::digits(FqElt a) const {
  std::vector<uint32_t> d(m_);
  for (uint32_t i = 0; i < m_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

FqElt Fq::from_digits(const std::vector<uint32_t>& d) const {
  if (d.size() > m_) throw std::invalid_argument("too many digits");
  FqElt a = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] >= p_) throw std::invalid_argument("digit out of range");
    a += d[i] * ppow_[i];
  }
  return a;
}

FieldEmbedding::FieldEmbedding(const Fq& small, const Fq& big)
    : s_(&small), b_(&big) {
  if (small.p() != big.p() || big.m() % small.m() != 0)
    throw std::invalid_argument("no field embedding");
  // root of the small modulus in the big field, smallest code first
  const auto& f = small.modulus();
  FqElt root = 0;
  bool found = false;
  for (FqElt t = 0; t < big.q() && !found; ++t) {
    FqElt v = 0;
    for (size_t i = f.size(); i-- > 0;)
      v = big.add(big.mul(v, t), big.from_int(f[i]));
    if (v == 0) {
      root = t;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("modulus has no root in big field");
  img_.resize(small.q());
  for (FqElt a = 0; a < small.q(); ++a) {
    auto d = small.digits(a);
    FqElt v = 0;
    for (size_t i = d.size(); i-- > 0;)
      v = big.add(big.mul(v, root), big.from_int(d[i]));
    img_[a] = v;
  }
}

}  // namespace bf
