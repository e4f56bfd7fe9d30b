#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bf {

// Element of GF(p^m), encoded as an integer in [0, p^m).  The code
// sum c_i p^i stands for the residue of sum c_i x^i in GF(p)[x]/(f),
// digits little-endian.  All arithmetic goes through an Fq instance;
// codes from different fields must not be mixed.
using FqElt = uint32_t;

struct NotPrime : std::invalid_argument {
  explicit NotPrime(uint64_t p);
};

struct DegreeOutOfRange : std::invalid_argument {
  explicit DegreeOutOfRange(uint64_t p, uint64_t m);
};

class Fq {
public:
  // Cached, one instance per (p, m).  References stay valid for the
  // lifetime of the process.
  static const Fq& get(uint32_t p, uint32_t m = 1);

  uint32_t p() const { return p_; }
  uint32_t m() const { return m_; }
  uint32_t q() const { return q_; }

  // Monic modulus c_0..c_m (c_m = 1), little-endian.  Chosen as the
  // irreducible whose non-leading coefficients form the smallest code,
  // so the same (p, m) always yields the same field presentation.
  const std::vector<uint32_t>& modulus() const { return mod_; }

  // Smallest code that generates the multiplicative group.
  FqElt generator() const { return gen_; }

  FqElt add(FqElt a, FqElt b) const;
  FqElt sub(FqElt a, FqElt b) const;
  FqElt neg(FqElt a) const;
  FqElt mul(FqElt a, FqElt b) const;
  FqElt inv(FqElt a) const;
  FqElt div(FqElt a, FqElt b) const;
  FqElt pow(FqElt a, uint64_t e) const;

  // a -> a^(p^k)
  FqElt frobenius(FqElt a, uint32_t k = 1) const;

  // Absolute trace down to GF(p); the result is a constant (its only
  // nonzero digit is the degree-0 one).
  FqElt trace_to_prime(FqElt a) const;

  // n mod p as a constant of the field.
  FqElt from_int(int64_t n) const;

  std::vector<uint32_t> digits(FqElt a) const;
  FqElt from_digits(const std::vector<uint32_t>& d) const;

  bool operator==(const Fq& o) const { return p_ == o.p_ && m_ == o.m_; }

private:
  Fq(uint32_t p, uint32_t m);

  uint32_t p_, m_, q_;
  std::vector<uint32_t> mod_;
  FqElt gen_;
  std::vector<uint32_t> ppow_;       // p^0..p^m
  std::vector<FqElt> exp_;           // size 2(q-1), exp_[i] = gen^i
  std::vector<uint32_t> log_;        // log_[exp_[i]] = i, i < q-1
  std::vector<FqElt> add_table_;     // q*q, only when q <= 256

  FqElt slow_mul(FqElt a, FqElt b) const;
};

// GF(p^m) -> GF(p^(m*s)), the homomorphism sending the class of x to
// the smallest-code root of the small modulus in the big field.
class FieldEmbedding {
public:
  FieldEmbedding(const Fq& small, const Fq& big);
  const Fq& small() const { return *s_; }
  const Fq& big() const { return *b_; }
  FqElt operator()(FqElt a) const { return img_[a]; }

private:
  const Fq* s_;
  const Fq* b_;
  std::vector<FqElt> img_;
};

}  // namespace bf
