#include "modreg/special.hpp"

#include <cmath>
#include <map>
#include <vector>
#include <stdexcept>

namespace modreg::mpfield {

Real expint_e1(const Real& x) {
  if (!(x.sign() > 0)) throw std::invalid_argument("expint_e1: x must be > 0");
  Real t = -x;
  mpfr_eint(t.v, t.v, MPFR_RNDN);  // Ei(-x) = -E1(x)
  t.neg();
  return t;
}

Real incomplete_gamma(long s, const Real& x) {
  if (!(x.sign() > 0)) throw std::invalid_argument("incomplete_gamma: x must be > 0");
  if (s < -1) throw std::invalid_argument("incomplete_gamma: s >= -1 required");
  if (s == 0) return expint_e1(x);
  if (s == -1) {
    // Gamma(0,x) = -Gamma(-1,x) + e^{-x}/x
    Real r = exp(-x) / x;
    r -= expint_e1(x);
    return r;
  }
  // s >= 1: Gamma(s,x) = (s-1)! e^{-x} sum_{k=0}^{s-1} x^k / k!
  Real sum(1L), term(1L);
  for (long k = 1; k < s; ++k) {
    term *= x;
    term /= k;
    sum += term;
  }
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(s - 1));
  Real r = exp(-x);
  r *= sum;
  r *= Real(fact);
  return r;
}

Real incomplete_gamma_real(const Real& a, const Real& x) {
  if (!(x.sign() > 0)) throw std::invalid_argument("incomplete_gamma_real: x must be > 0");
  Real r = make_result(a, x);
  mpfr_gamma_inc(r.v, a.v, x.v, MPFR_RNDN);
  return r;
}

const mpq_class& bernoulli(unsigned k) {
  static thread_local std::vector<mpq_class> cache;
  if (cache.empty()) {
    cache.push_back(mpq_class(1));
    cache.push_back(mpq_class(-1, 2));
  }
  while (cache.size() <= k) {
    unsigned m = cache.size();
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    mpq_class s(0);
    mpz_class binom;
    for (unsigned j = 0; j < m; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
      s += mpq_class(binom) * cache[j];
    }
    s /= mpq_class(-(long)(m + 1));
    s.canonicalize();
    cache.push_back(s);
  }
  return cache[k];
}

mpq_class bernoulli_poly2(const mpq_class& x) {
  mpq_class r = x * x - x + mpq_class(1, 6);
  r.canonicalize();
  return r;
}

namespace {

// zeta at integer arguments != 1, cached per precision
const Real& zeta_int(long n) {
  static thread_local std::map<std::pair<long, long>, Real> cache;
  long p = default_prec();
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Real z = Real::with_prec(p);
  mpfr_set_si(z.v, n, MPFR_RNDN);
  mpfr_zeta(z.v, z.v, MPFR_RNDN);
  return cache.emplace(key, std::move(z)).first->second;
}

// direct power series, |z| <= 3/4
Complex li_series(long m, const Complex& z) {
  long p = default_prec();
  Real eps = pow2(-p - 24);
  Complex acc = z, zk = z;
  unsigned long k = 2;
  while (true) {
    zk *= z;
    Complex term = zk;
    unsigned long km = 1;
    for (long i = 0; i < m; ++i) km *= k;
    term.re /= (long)km;
    term.im /= (long)km;
    acc += term;
    if (abs(zk) < eps) break;
    ++k;
    if (k > 100000) throw std::runtime_error("li_series: no convergence");
  }
  return acc;
}

// expansion around z = 1 in mu = log z, valid for |mu| < 2 pi:
//   Li_m(e^mu) = sum_{k>=0, k != m-1} zeta(m-k) mu^k / k!
//              + (H_{m-1} - log(-mu)) mu^{m-1} / (m-1)!
Complex li_log_expansion(long m, const Complex& z) {
  long p = default_prec();
  Complex mu = log(z);
  Real amu = abs(mu);
  Real ratio = amu / two_pi();
  if (!(ratio < Real(0.97))) throw std::runtime_error("li_log_expansion: |log z| too close to 2 pi");
  // k beyond which (|mu|/2pi)^k has decayed below target, with slack for the
  // polynomially growing zeta(negative) factors
  double rd = ratio.to_double();
  long kmax = static_cast<long>((p + 48) * 0.6931 / -std::log(rd)) + m + 8;

  Complex acc(0L);
  Complex muk(1L);  // mu^k / k!
  for (long k = 0; k <= kmax; ++k) {
    if (k > 0) {
      muk *= mu;
      muk /= k;
    }
    if (k == m - 1) continue;
    Complex term = muk;
    term *= zeta_int(m - k);
    acc += term;
  }
  // special term at k = m-1
  mpq_class h(0);
  for (long j = 1; j <= m - 1; ++j) h += mpq_class(1, j);
  Complex mup(1L);
  for (long k = 1; k <= m - 1; ++k) { mup *= mu; mup /= k; }
  Complex special = Complex(Real(h)) - log(-mu);
  special *= mup;
  acc += special;
  return acc;
}

// Li_m(z) for |z| <= 1 (z != 1), principal branch
Complex li_in_disk(long m, const Complex& z) {
  if (abs(z) <= Real(0.75)) return li_series(m, z);
  return li_log_expansion(m, z);
}

}  // namespace

Complex polylog(long m, const Complex& z) {
  if (m < 1) throw std::invalid_argument("polylog: m >= 1 required");
  if (z.is_zero()) return Complex(0L);
  if (m == 1) return -log(Complex(1L) - z);
  if (z.re == Real(1L) && z.im.is_zero()) return Complex(zeta_int(m));
  if (abs(z) <= Real(1L)) return li_in_disk(m, z);
  throw std::invalid_argument("polylog: |z| <= 1 required (callers invert first)");
}

Real bloch_wigner(const Complex& z) {
  if (z.im.is_zero()) return Real(0L);  // D vanishes on the real axis
  if (abs(z) > Real(1L)) {
    Complex w = Complex(1L) / z;
    return -bloch_wigner(w);
  }
  Complex li2 = li_in_disk(2, z);
  Real d = li2.im;
  Complex omz = Complex(1L) - z;
  fma_acc(d, arg(omz), log(abs(z)));
  return d;
}

Complex svp(long m, const Complex& z) {
  if (m < 2) throw std::invalid_argument("svp: m >= 2 required");
  if (z.is_zero()) return Complex(0L);
  if (z.im.is_zero() && z.re == Real(1L)) {
    if (m % 2 == 1) return Complex(zeta_int(m));
    return Complex(0L);
  }
  if (abs(z) > Real(1L)) {
    Complex w = Complex(1L) / z;
    Complex s = svp(m, w);
    if (m % 2 == 0) s = -s;  // Lhat_m(1/z) = (-1)^{m-1} Lhat_m(z)
    return s;
  }
  Real L = log(abs(z));
  // Li_{m-k}(z) for k = 0..m-1
  Complex acc(0L);
  Real Lk(1L);
  for (long k = 0; k <= m - 1; ++k) {
    if (k > 0) Lk *= L;
    long j = m - k;
    Complex lij = (j == 1) ? -log(Complex(1L) - z) : li_in_disk(j, z);
    mpq_class ck = bernoulli(static_cast<unsigned>(k));
    ck *= mpz_class(1) << k;
    mpz_class kfact;
    mpz_fac_ui(kfact.get_mpz_t(), static_cast<unsigned long>(k));
    ck /= mpq_class(kfact);
    ck.canonicalize();
    lij *= Real(ck);
    lij *= Lk;
    acc += lij;
  }
  if (m % 2 == 1) return Complex(acc.re);
  return Complex(Real(0L), acc.im);
}

}  // namespace modreg::mpfield
