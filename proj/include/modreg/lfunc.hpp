#pragma once

#include "modreg/classp.hpp"
#include "modreg/qexp.hpp"

#include <string>
#include <vector>

namespace modreg::lfunc {

using mpfield::Complex;
using mpfield::Real;

struct EllipticCurveQ {
  std::string label;      // isogeny-class label, e.g. "11a"
  long conductor = 0;
  long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;  // minimal Weierstrass model
  int epsilon = 0;        // functional-equation sign, 0 = not yet determined

  long ap(long p) const;                    // trace of Frobenius (point counting)
  std::vector<long> an(long count) const;   // a_1 .. a_count by multiplicativity
  mpz_class discriminant() const;
};

// built-in table of isogeny classes of conductor <= 50; "11a3" resolves to
// the class "11a" (the L-function is an isogeny invariant)
const std::vector<EllipticCurveQ>& curve_table();
EllipticCurveQ curve_by_label(const std::string& label);

// numeric root number via split-point invariance of the completed-L series
int determine_epsilon(const EllipticCurveQ& E);

// completed Lambda(s) = N^{s/2} (2 pi)^{-s} Gamma(s) L(E, s) by the
// incomplete-gamma series with split point y = T/sqrt(N)
Real lambda_completed(const EllipticCurveQ& E, const Real& s, int epsilon, const Real& T);

// L'(E, -1) = -sqrt(N) Lambda(-1) / (2 pi)
Real lprime_minus1_elliptic(const EllipticCurveQ& E);

// weight-1 Eisenstein data: coefficients of 2N * s~_x up to q^{K}
std::vector<long> stilde_scaled(long N, long x, long K);
qseries::QExpansion eisenstein_expansion(long N, long x, long K);

struct EisensteinL {
  Real lprime;          // L'(s~_a s~_b, -1)
  Complex fricke_const; // constant term of f|W_N (reported for cross-checking)
  Real fe_residual;     // functional-equation verification residual
};

EisensteinL lprime_minus1_eisenstein(long N, long a, long b, long digits);

// Dirichlet-series value L(f, s) for f = s~_a s~_b by raw partial sums
// (absolutely convergent for s >= 4; used as an oracle at s = 8)
Real eisenstein_dirichlet(long N, long a, long b, long s, long terms);

// class-P data of phi(y) = f(iy) for f = s~_a s~_b (both-side expansions);
// exposed for the consistency tests
classp::ClassPFun eisenstein_classp(long N, long a, long b, long digits, EisensteinL* info = nullptr);

// m((1+x)(1+y)+z) by Jensen's formula and 2-d quadrature
Real mahler_measure_boyd(long digits10 = 12);

}  // namespace modreg::lfunc
