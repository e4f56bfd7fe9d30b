#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bf/fq.hpp"
#include "bf/matrix.hpp"

namespace bf {

// univariate polynomial over Fq, little-endian coefficients, trimmed
// (the zero polynomial is the empty vector)
using FqPoly = std::vector<FqElt>;

FqPoly poly_trim(FqPoly a);
inline bool poly_is_zero(const FqPoly& a) { return a.empty(); }
// degree of the zero polynomial is reported as -1
inline int poly_deg(const FqPoly& a) { return int(a.size()) - 1; }

FqPoly poly_add(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly poly_sub(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly poly_mul(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly poly_scale(const Fq& F, FqElt c, const FqPoly& a);
FqPoly poly_monic(const Fq& F, FqPoly a);
std::pair<FqPoly, FqPoly> poly_divmod(const Fq& F, FqPoly a, const FqPoly& b);
FqPoly poly_gcd(const Fq& F, FqPoly a, FqPoly b);  // monic (or zero)
FqPoly poly_powmod(const Fq& F, FqPoly base, uint64_t e, const FqPoly& mod);
// inverse of a modulo m, gcd(a, m) = 1
FqPoly poly_invmod(const Fq& F, const FqPoly& a, const FqPoly& m);
FqElt poly_eval(const Fq& F, const FqPoly& f, FqElt x);
FqPoly poly_derivative(const Fq& F, const FqPoly& f);

// monic irreducible factors with multiplicities, sorted by degree then
// by coefficient codes; deterministic (Berlekamp with constants tried
// in code order)
std::vector<std::pair<FqPoly, uint32_t>> poly_factor(const Fq& F, FqPoly f);
bool poly_is_irreducible(const Fq& F, const FqPoly& f);
bool poly_is_squarefree(const Fq& F, const FqPoly& f);

// det(tI - M), monic of degree rows(M), by Hessenberg reduction
FqPoly charpoly(const FqMatrix& M);

}  // namespace bf
