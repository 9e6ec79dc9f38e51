#pragma once

#include "modreg/bigfloat.hpp"

#include <vector>

namespace modreg::classp {

using mpfield::Complex;
using mpfield::Real;

// One asymptotic half: sum_{j=0}^{jmax} y^j sum_{n=0}^{len-1} a[j][n] e^{-2 pi n y / N}.
// The same shape serves at both ends; the 0-side stores the expansion of
// phi(1/y).
struct PHalf {
  long N = 1;
  std::vector<std::vector<Complex>> a;  // a[j][n]

  static constexpr long kJCap = 6;

  static PHalf zero(long N, long len, long jmax = 0);
  long jmax() const { return static_cast<long>(a.size()) - 1; }
  long len() const { return a.empty() ? 0 : static_cast<long>(a[0].size()); }

  const Complex& at(long j, long n) const;
  void set(long j, long n, const Complex& c);
  void add_to(long j, long n, const Complex& c);

  void iadd(const PHalf& o, const Complex& scale);
  void iadd(const PHalf& o) { iadd(o, Complex(1L)); }
  void scale(const Complex& s);
  void shift_j(long k);  // multiply by y^k
  Complex eval(const Real& y) const;

  PHalf derivative() const;             // d/dy termwise
  PHalf primitive_termwise() const;     // antiderivative, zero integration constant
  Real max_n0() const;                  // max_j |a[j][0]|
  void clear_n0();                      // zero all constant-in-n terms
  void trim();                          // drop top j rows that are entirely zero
};

PHalf mul(const PHalf& x, const PHalf& y);

// phi with expansions at infinity (inf) and at 0 (zero = expansion of
// phi(1/y)), both in the PHalf shape.
struct ClassPFun {
  PHalf inf, zero;

  long level() const { return inf.N; }
  Complex eval(const Real& y) const;  // uses the side matching y >= 1
  bool integrable(Real* worst = nullptr) const;  // a0^{(j)} = 0, b0^{(j>=1)} = 0
};

ClassPFun add(const ClassPFun& f, const ClassPFun& g);
ClassPFun mul(const ClassPFun& f, const ClassPFun& g);
ClassPFun differentiate(const ClassPFun& f);

// termwise antiderivative; throws "no primitive in P" naming the offending
// (n, j) when some b_n^{(0)} or b_n^{(1)} is nonzero. The infinity-side
// integration constant is c_inf; the 0-side constant is then fixed by
// matching the two sides at y = 1.
ClassPFun primitive(const ClassPFun& f, const Complex& c_inf = Complex(0L));

struct MellinValue {
  Complex value;
  Real tail_bound;
};

// int_0^inf phi(y) dy via the incomplete-gamma series; requires exact-zero
// non-integrable constants (callers assert-and-clear them first).
MellinValue mellin_value(const ClassPFun& f);

// analytic continuation M(phi, s) = int_0^inf phi(y) y^{s-1} dy; poles at
// s = -j (infinity-side constants) and s = +j (0-side constants) are refused.
Complex mellin_s(const ClassPFun& f, const Complex& s);
Complex mellin_s_derivative(const ClassPFun& f, const Complex& s);

// upper incomplete gamma for complex a, x > 0 (series + continued fraction);
// used by the continued Mellin transform away from the real axis
Complex incomplete_gamma_complex(const Complex& a, const Real& x);
Complex lgamma_complex(const Complex& z);

}  // namespace modreg::classp
