#pragma once

#include "modreg/bigfloat.hpp"

namespace modreg::mpfield {

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for
// integer s >= -1, x > 0. Closed form for s >= 1, E_1 for s = 0, and the
// recursion Gamma(s+1,x) = s Gamma(s,x) + x^s e^{-x} for s = -1.
Real incomplete_gamma(long s, const Real& x);

// Gamma(a, x) for arbitrary real a (used by the continued Mellin transform
// at shifted arguments); x > 0.
Real incomplete_gamma_real(const Real& a, const Real& x);

// Exponential integral E_1(x), x > 0.
Real expint_e1(const Real& x);

// Bloch-Wigner dilogarithm D(z) = Im Li_2(z) + arg(1-z) log|z|, extended by
// D(0) = D(1) = 0; odd under conjugation, D(1/z) = -D(z).
Real bloch_wigner(const Complex& z);

// Zagier's single-valued polylogarithm, in the normalization
//   P_m(z) = Re_m( sum_{k=0}^{m-1} 2^k B_k / k! * log^k|z| * Li_{m-k}(z) ),
// Re_m = Re for odd m and Im for even m, B_1 = -1/2.  Returns
// Lhat_m(z) = P_m(z) for odd m and i*P_m(z) for even m, so the value lies in
// (2 pi i)^{m-1} R; Lhat_2 = i*D and Lhat_m(1/z) = (-1)^{m-1} Lhat_m(z).
Complex svp(long m, const Complex& z);

// Polylogarithm Li_m(z), principal branch, any z with |z| <= 1 or beyond via
// the inversion used internally by svp. Exposed for oracle tests.
Complex polylog(long m, const Complex& z);

// B_2(x) = x^2 - x + 1/6, exact.
mpq_class bernoulli_poly2(const mpq_class& x);

// Bernoulli number B_k (B_1 = -1/2), exact, cached.
const mpq_class& bernoulli(unsigned k);

}  // namespace modreg::mpfield
