#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <stdexcept>
#include <utility>

namespace modreg::mpfield {

// Working precision (bits) for newly created values. A computation context
// sets it once up front; values keep the precision they were created with
// and binary operations promote to the larger operand precision.
long default_prec();
void set_default_prec(long bits);

struct ScopedPrec {
  long saved;
  explicit ScopedPrec(long bits) : saved(default_prec()) { set_default_prec(bits); }
  ~ScopedPrec() { set_default_prec(saved); }
  ScopedPrec(const ScopedPrec&) = delete;
  ScopedPrec& operator=(const ScopedPrec&) = delete;
};

class Real {
public:
  mpfr_t v;

  Real() { mpfr_init2(v, default_prec()); mpfr_set_zero(v, 1); }
  Real(long x) { mpfr_init2(v, default_prec()); mpfr_set_si(v, x, MPFR_RNDN); }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(unsigned long x) { mpfr_init2(v, default_prec()); mpfr_set_ui(v, x, MPFR_RNDN); }
  Real(double x) { mpfr_init2(v, default_prec()); mpfr_set_d(v, x, MPFR_RNDN); }
  Real(const mpq_class& q) { mpfr_init2(v, default_prec()); mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN); }
  Real(const mpz_class& z) { mpfr_init2(v, default_prec()); mpfr_set_z(v, z.get_mpz_t(), MPFR_RNDN); }
  explicit Real(const std::string& s) {
    mpfr_init2(v, default_prec());
    if (mpfr_set_str(v, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real: cannot parse '" + s + "'");
  }

  static Real with_prec(long bits) { Real r(Uninit{}); mpfr_init2(r.v, bits); mpfr_set_zero(r.v, 1); return r; }

  Real(const Real& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_swap(v, o.v); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v, o.v); return *this; }
  ~Real() { mpfr_clear(v); }

  long prec() const { return mpfr_get_prec(v); }
  double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v) != 0; }
  bool is_nan() const { return mpfr_nan_p(v) != 0; }
  bool is_finite() const { return mpfr_number_p(v) != 0; }
  int sign() const { return mpfr_sgn(v); }

  // decimal string at full precision (or the given number of digits)
  std::string str(size_t digits = 0) const;

  Real& operator+=(const Real& o) { mpfr_add(v, v, o.v, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v, v, o.v, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v, v, o.v, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v, v, o.v, MPFR_RNDN); return *this; }
  Real& operator*=(long x) { mpfr_mul_si(v, v, x, MPFR_RNDN); return *this; }
  Real& operator/=(long x) { mpfr_div_si(v, v, x, MPFR_RNDN); return *this; }
  Real& neg() { mpfr_neg(v, v, MPFR_RNDN); return *this; }

private:
  struct Uninit {};
  explicit Real(Uninit) {}
  friend Real make_result(const Real&, const Real&);
};

inline Real make_result(const Real& a, const Real& b) {
  long p = std::max(mpfr_get_prec(a.v), mpfr_get_prec(b.v));
  return Real::with_prec(p);
}

inline Real operator+(const Real& a, const Real& b) { Real r = make_result(a, b); mpfr_add(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline Real operator-(const Real& a, const Real& b) { Real r = make_result(a, b); mpfr_sub(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline Real operator*(const Real& a, const Real& b) { Real r = make_result(a, b); mpfr_mul(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline Real operator/(const Real& a, const Real& b) { Real r = make_result(a, b); mpfr_div(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline Real operator-(const Real& a) { Real r(a); r.neg(); return r; }

inline Real operator*(const Real& a, long b) { Real r(a); r *= b; return r; }
inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator/(const Real& a, long b) { Real r(a); r /= b; return r; }

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v, b.v) != 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v, b.v) != 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v, b.v) != 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v, b.v) != 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v, b.v) != 0; }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }

inline Real abs(const Real& a) { Real r(a); mpfr_abs(r.v, r.v, MPFR_RNDN); return r; }
inline Real sqrt(const Real& a) { Real r(a); mpfr_sqrt(r.v, r.v, MPFR_RNDN); return r; }
inline Real exp(const Real& a) { Real r(a); mpfr_exp(r.v, r.v, MPFR_RNDN); return r; }
inline Real log(const Real& a) { Real r(a); mpfr_log(r.v, r.v, MPFR_RNDN); return r; }
inline Real sin(const Real& a) { Real r(a); mpfr_sin(r.v, r.v, MPFR_RNDN); return r; }
inline Real cos(const Real& a) { Real r(a); mpfr_cos(r.v, r.v, MPFR_RNDN); return r; }
inline Real tanh(const Real& a) { Real r(a); mpfr_tanh(r.v, r.v, MPFR_RNDN); return r; }
inline Real sinh(const Real& a) { Real r(a); mpfr_sinh(r.v, r.v, MPFR_RNDN); return r; }
inline Real cosh(const Real& a) { Real r(a); mpfr_cosh(r.v, r.v, MPFR_RNDN); return r; }
inline Real atan2(const Real& y, const Real& x) { Real r = make_result(y, x); mpfr_atan2(r.v, y.v, x.v, MPFR_RNDN); return r; }
inline Real pow(const Real& a, const Real& b) { Real r = make_result(a, b); mpfr_pow(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline Real pow_si(const Real& a, long e) { Real r(a); mpfr_pow_si(r.v, a.v, e, MPFR_RNDN); return r; }
inline Real floor(const Real& a) { Real r(a); mpfr_floor(r.v, r.v); return r; }
inline Real gamma(const Real& a) { Real r(a); mpfr_gamma(r.v, r.v, MPFR_RNDN); return r; }
inline Real zeta(const Real& a) { Real r(a); mpfr_zeta(r.v, r.v, MPFR_RNDN); return r; }
inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

Real pi(long prec_bits = 0);          // pi at the given (or default) precision
Real two_pi(long prec_bits = 0);
Real pow2(long e, long prec_bits = 0);  // 2^e, handy for tolerances

// acc += a*b with correct rounding per fma
inline void fma_acc(Real& acc, const Real& a, const Real& b) {
  mpfr_fma(acc.v, a.v, b.v, acc.v, MPFR_RNDN);
}
// acc -= a*b
inline void fms_acc(Real& acc, const Real& a, const Real& b) {
  mpfr_fms(acc.v, a.v, b.v, acc.v, MPFR_RNDN);
  mpfr_neg(acc.v, acc.v, MPFR_RNDN);
}

class Complex {
public:
  Real re, im;

  Complex() = default;
  Complex(const Real& r) : re(r) {}
  Complex(Real&& r) : re(std::move(r)) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(Real&& r, Real&& i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r) : re(r) {}
  Complex(int r) : re(static_cast<long>(r)) {}
  Complex(double r) : re(r) {}
  Complex(const mpq_class& q) : re(q) {}

  static Complex i_unit() { return Complex(Real(0L), Real(1L)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
  Complex& operator*=(long s) { re *= s; im *= s; return *this; }
  Complex& operator/=(long s) { re /= s; im /= s; return *this; }

  std::string str(size_t digits = 0) const;
};

inline Complex operator+(Complex a, const Complex& b) { a += b; return a; }
inline Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
inline Complex operator*(Complex a, const Real& s) { a *= s; return a; }
inline Complex operator*(const Real& s, Complex a) { a *= s; return a; }

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real norm2(const Complex& z) { Real r = z.re * z.re; fma_acc(r, z.im, z.im); return r; }
inline Real abs(const Complex& z) { return sqrt(norm2(z)); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex exp(const Complex& z);
Complex log(const Complex& z);   // principal branch
Complex pow_si(const Complex& z, long e);
inline Complex times_i(const Complex& z) { return Complex(-z.im, z.re); }

// acc += a*b (4 fma/fms, no heap churn beyond one thread-local scratch)
void addmul(Complex& acc, const Complex& a, const Complex& b);
// acc -= a*b
void submul(Complex& acc, const Complex& a, const Complex& b);

// e^{2 pi i theta} for exact rational theta
Complex unit_phase(const mpq_class& theta);

}  // namespace modreg::mpfield
