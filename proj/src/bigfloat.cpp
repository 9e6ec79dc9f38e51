#include "modreg/bigfloat.hpp"

#include <atomic>
#include <cstdio>
#include <vector>

namespace modreg::mpfield {

namespace {
std::atomic<long> g_prec{192};
}

long default_prec() { return g_prec.load(std::memory_order_relaxed); }
void set_default_prec(long bits) {
  if (bits < 64) throw std::invalid_argument("precision below 64 bits");
  g_prec.store(bits, std::memory_order_relaxed);
}

std::string Real::str(size_t digits) const {
  if (digits == 0) digits = static_cast<size_t>(prec() * 0.30103) + 2;
  char fmt[32];
  std::snprintf(fmt, sizeof fmt, "%%.%zuRg", digits);
  char* out = nullptr;
  mpfr_asprintf(&out, fmt, v);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::string Complex::str(size_t digits) const {
  return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).str(digits) + "*I";
}

Real pi(long prec_bits) {
  if (prec_bits == 0) prec_bits = default_prec();
  Real r = Real::with_prec(prec_bits);
  mpfr_const_pi(r.v, MPFR_RNDN);
  return r;
}

Real two_pi(long prec_bits) {
  Real r = pi(prec_bits);
  r *= 2;
  return r;
}

Real pow2(long e, long prec_bits) {
  if (prec_bits == 0) prec_bits = default_prec();
  Real r = Real::with_prec(prec_bits);
  mpfr_set_si(r.v, 1, MPFR_RNDN);
  mpfr_mul_2si(r.v, r.v, e, MPFR_RNDN);
  return r;
}

Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}

Complex operator*(const Complex& a, const Complex& b) {
  Real re = a.re * b.re;
  fms_acc(re, a.im, b.im);  // re = a.re*b.re - a.im*b.im
  Real im = a.re * b.im;
  fma_acc(im, a.im, b.re);
  return Complex(std::move(re), std::move(im));
}

Complex operator/(const Complex& a, const Complex& b) {
  Real n = norm2(b);
  Real re = a.re * b.re;
  fma_acc(re, a.im, b.im);
  Real im = a.im * b.re;
  fms_acc(im, a.re, b.im);
  re /= n;
  im /= n;
  return Complex(std::move(re), std::move(im));
}

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  Real s = Real::with_prec(z.im.prec());
  Real c = Real::with_prec(z.im.prec());
  mpfr_sin_cos(s.v, c.v, z.im.v, MPFR_RNDN);
  return Complex(m * c, m * s);
}

Complex log(const Complex& z) {
  Real r = norm2(z);
  mpfr_log(r.v, r.v, MPFR_RNDN);
  r /= 2;
  return Complex(std::move(r), arg(z));
}

Complex pow_si(const Complex& z, long e) {
  if (e == 0) return Complex(1L);
  bool inv = e < 0;
  unsigned long n = inv ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  Complex acc(1L), base = z;
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  if (inv) return Complex(1L) / acc;
  return acc;
}

void addmul(Complex& acc, const Complex& a, const Complex& b) {
  mpfr_fma(acc.re.v, a.re.v, b.re.v, acc.re.v, MPFR_RNDN);
  static thread_local Real t;
  mpfr_mul(t.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_sub(acc.re.v, acc.re.v, t.v, MPFR_RNDN);
  mpfr_fma(acc.im.v, a.re.v, b.im.v, acc.im.v, MPFR_RNDN);
  mpfr_fma(acc.im.v, a.im.v, b.re.v, acc.im.v, MPFR_RNDN);
}

void submul(Complex& acc, const Complex& a, const Complex& b) {
  mpfr_fms(acc.re.v, a.re.v, b.re.v, acc.re.v, MPFR_RNDN);
  mpfr_neg(acc.re.v, acc.re.v, MPFR_RNDN);
  static thread_local Real t;
  mpfr_mul(t.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_add(acc.re.v, acc.re.v, t.v, MPFR_RNDN);
  mpfr_fms(acc.im.v, a.re.v, b.im.v, acc.im.v, MPFR_RNDN);
  mpfr_neg(acc.im.v, acc.im.v, MPFR_RNDN);
  mpfr_fms(acc.im.v, a.im.v, b.re.v, acc.im.v, MPFR_RNDN);
  mpfr_neg(acc.im.v, acc.im.v, MPFR_RNDN);
}

Complex unit_phase(const mpq_class& theta) {
  // reduce mod 1 so the angle stays small
  mpq_class t = theta;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  t -= mpq_class(fl);
  Real ang = two_pi();
  Real tt(t);
  ang *= tt;
  Real s = Real::with_prec(ang.prec()), c = Real::with_prec(ang.prec());
  mpfr_sin_cos(s.v, c.v, ang.v, MPFR_RNDN);
  return Complex(std::move(c), std::move(s));
}

}  // namespace modreg::mpfield
