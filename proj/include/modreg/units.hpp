#pragma once

#include "modreg/qexp.hpp"

#include <array>
#include <map>
#include <vector>

namespace modreg::units {

using mpfield::Complex;
using mpfield::Real;
using qseries::QExpansion;

struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return Mat2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  long det() const { return a * d - b * c; }
  bool operator==(const Mat2&) const = default;
};

inline Mat2 mat_sigma() { return Mat2{0, -1, 1, 0}; }
inline Mat2 mat_tau() { return Mat2{0, -1, 1, -1}; }

// row-vector action (x1, x2) gamma mod N
std::pair<long, long> index_act(long N, std::pair<long, long> x, const Mat2& g);

// canonical representative of {x, -x} in [0,N)^2
std::pair<long, long> canonical_pm(long N, long x1, long x2);

// zeta * prod g_x^{e_x} over canonical +-class keys. theta is the exact
// rational angle of the constant; unit_slash drops it (phase_exact = false),
// downstream consumers of slashed expressions use only |v| and d arg v.
struct UnitExpr {
  long N = 1;
  mpq_class theta = 0;
  bool phase_exact = true;
  std::map<std::pair<long, long>, mpq_class> e;

  void add_term(std::pair<long, long> key, const mpq_class& exponent);
};

// ordered quadruple of distinct +-classes; u = [wp_a, wp_b, wp_c, wp_d]
struct CrossRatioUnit {
  long N = 1;
  std::array<std::pair<long, long>, 4> q;
  bool operator==(const CrossRatioUnit&) const = default;
  bool operator<(const CrossRatioUnit& o) const { return q < o.q; }
};

CrossRatioUnit make_cross_ratio(long N, std::array<std::pair<long, long>, 4> quad);
bool is_distinct(const CrossRatioUnit& u);
// 1 - u(a,b,c,d) = u(a,c,b,d)
CrossRatioUnit complementary(const CrossRatioUnit& u);
CrossRatioUnit slash(const CrossRatioUnit& u, const Mat2& g);
UnitExpr unit_slash(const UnitExpr& v, const Mat2& g);

// E_{a1,a2} for an arbitrary integer lift (a1,a2), not congruent to (0,0):
// q^{B2(r1/N)/2} times the double product, times the root of unity fixed by
// the shift relations. Coefficients exact at the fixed embedding
// zeta_N = e^{2 pi i / N}.
QExpansion siegel_expansion(long N, long a1, long a2, long order);

// exact expression of the cross-ratio through Siegel units
UnitExpr cross_ratio_as_units(const CrossRatioUnit& u);

// q-expansion of u via the eight-factor E-product (binomial accumulation)
QExpansion cross_ratio_expansion(const CrossRatioUnit& u, long order);

// q-expansion of a UnitExpr with integer exponents (throws otherwise)
QExpansion unit_expansion(const UnitExpr& v, long order);

// Weierstrass division value wp_a / (2 pi i)^2 as a q-expansion; a != 0
QExpansion wp_expansion(long N, long a1, long a2, long order);

// ---- cusps of X1(N) (mod +-Gamma1(N)) ----
struct Cusp {
  long p = 1, q = 0;  // p/q in lowest terms, q >= 0; (1,0) = infinity
  bool operator==(const Cusp&) const = default;
};

bool cusp_equiv_gamma1(long N, const Cusp& x, const Cusp& y);
std::vector<Cusp> gamma1_cusps(long N);
long cusp_width_gamma1(long N, const Cusp& c);
Mat2 cusp_matrix(const Cusp& c);  // gamma with gamma(infinity) = c

// order of v at infinity as a power of q (not q^{1/N}):
// sum_x e_x B2({x1/N})/2
mpq_class order_at_infinity(const UnitExpr& v);

struct CuspOrder {
  Cusp cusp;
  long width = 1;
  mpq_class order;  // in the local parameter of X1(N)
};

// divisor on X1(N); valid for Gamma1-invariant expressions (all indices of
// the form (0,*), or cross-ratio units of such)
std::vector<CuspOrder> order_at_cusps(long N, const UnitExpr& v);
mpq_class degree_plus(long N, const UnitExpr& v);

// value of u at the cusp gamma(infinity) under the embedding zeta -> zeta^t
struct CuspValue {
  int kind = 0;  // 0 finite, -1 the unit vanishes, +1 pole
  Complex value;
};
CuspValue cusp_value(const CrossRatioUnit& u, const Mat2& gamma, long t);

long mason_bound(long genus, long s);
long genus_x1(long N);
long num_cusps_x1(long N);

}  // namespace modreg::units
