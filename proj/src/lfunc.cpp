#include "modreg/lfunc.hpp"
#include "modreg/quadrature.hpp"
#include "modreg/special.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifndef MODREG_DATA_DIR
#define MODREG_DATA_DIR "data"
#endif

namespace modreg::lfunc {

using mpfield::incomplete_gamma;
using mpfield::incomplete_gamma_real;
using mpfield::pow2;
using mpfield::two_pi;

namespace {
long mod(long x, long N) {
  long r = x % N;
  return r < 0 ? r + N : r;
}
}  // namespace

mpz_class EllipticCurveQ::discriminant() const {
  mpz_class b2 = a1 * a1 + 4 * a2;
  mpz_class b4 = 2 * a4 + a1 * a3;
  mpz_class b6 = a3 * a3 + 4 * a6;
  mpz_class b8 = mpz_class(a1 * a1) * a6 + 4 * mpz_class(a2) * a6 - mpz_class(a1) * a3 * a4 +
                 mpz_class(a2) * a3 * a3 - mpz_class(a4) * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

long EllipticCurveQ::ap(long p) const {
  if (conductor % p == 0 || p == 2) {
    // brute-force count; on bad primes a_p = p - #E^{ns}(F_p)
    long count = 0, singular = 0;
    for (long x = 0; x < p; ++x)
      for (long y = 0; y < p; ++y) {
        long lhs = mod(y * y + a1 * x * y + a3 * y, p);
        long rhs = mod(x * x * x + a2 * x * x + a4 * x + a6, p);
        if (lhs != rhs) continue;
        ++count;
        long fy = mod(2 * y + a1 * x + a3, p);
        long fx = mod(a1 * y - (3 * x * x + 2 * a2 * x + a4), p);
        if (fy == 0 && fx == 0) ++singular;
      }
    if (conductor % p == 0) return p - (count - singular + 1);
    return p + 1 - (count + 1);
  }
  // good odd p: complete the square, a_p = -sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6)
  long b2 = mod(a1 * a1 + 4 * a2, p);
  long b4m = mod(2 * (2 * a4 + a1 * a3), p);
  long b6 = mod(a3 * a3 + 4 * a6, p);
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (long k = 1; k <= p / 2; ++k) chi[(k * k) % p] = 1;
  long s = 0;
  for (long x = 0; x < p; ++x) {
    long g = mod(((4 * x + b2) % p) * x % p * x % p + b4m * x + b6, p);
    s += chi[g];
  }
  return -s;
}

std::vector<long> EllipticCurveQ::an(long count) const {
  std::vector<long> a(count + 1, 0);
  if (count >= 1) a[1] = 1;
  std::vector<long> least(count + 1, 0);
  for (long p = 2; p <= count; ++p) {
    if (least[p]) continue;
    for (long m = p; m <= count; m += p)
      if (!least[m]) least[m] = p;
  }
  for (long n = 2; n <= count; ++n) {
    long p = least[n];
    long m = n, k = 0;
    while (m % p == 0) { m /= p; ++k; }
    if (m > 1) {
      a[n] = a[m] * a[n / m];
      continue;
    }
    // n = p^k
    if (k == 1) {
      a[n] = ap(p);
    } else if (conductor % p == 0) {
      a[n] = a[p] * a[n / p];
    } else {
      a[n] = a[p] * a[n / p] - p * a[n / (p * p)];
    }
  }
  return a;
}

namespace {
std::vector<EllipticCurveQ> load_table() {
  std::vector<EllipticCurveQ> out;
  const char* env = std::getenv("MODREG_DATA_DIR");
  std::string path = std::string(env ? env : MODREG_DATA_DIR) + "/curves.txt";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("curve table not found at " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    EllipticCurveQ E;
    if (ls >> E.label >> E.conductor >> E.a1 >> E.a2 >> E.a3 >> E.a4 >> E.a6) out.push_back(E);
  }
  return out;
}
}  // namespace

const std::vector<EllipticCurveQ>& curve_table() {
  static std::vector<EllipticCurveQ> table = load_table();
  return table;
}

EllipticCurveQ curve_by_label(const std::string& label) {
  // "11a3" resolves to the class "11a"; the L-function is isogeny-invariant
  std::string cls = label;
  size_t i = cls.size();
  while (i > 0 && isdigit((unsigned char)cls[i - 1])) --i;
  if (i > 0 && i < cls.size() && isalpha((unsigned char)cls[i - 1])) cls = cls.substr(0, i);
  for (const auto& E : curve_table())
    if (E.label == cls) return E;
  throw std::invalid_argument("curve label not in the conductor <= 50 table: " + label);
}

Real lambda_completed(const EllipticCurveQ& E, const Real& s, int epsilon, const Real& T) {
  Real rtN = sqrt(Real(E.conductor));
  long digits = static_cast<long>(mpfield::default_prec() * 0.301);
  double tmin = std::min(T.to_double(), 1.0 / T.to_double());
  long M = static_cast<long>(std::sqrt((double)E.conductor) * (digits + 8) * 2.303 /
                             (6.283 * tmin)) + 8;
  std::vector<long> a = E.an(M);
  Real total(0L);
  Real twos = Real(2L) - s;
  for (long n = 1; n <= M; ++n) {
    if (a[n] == 0) continue;
    Real ratio = rtN / (two_pi() * Real(n));
    Real x1 = two_pi() * Real(n) * T / rtN;
    Real x2 = two_pi() * Real(n) / (T * rtN);
    Real term = pow(ratio, s) * incomplete_gamma_real(s, x1);
    term += Real(epsilon) * pow(ratio, twos) * incomplete_gamma_real(twos, x2);
    total += Real(a[n]) * term;
  }
  return total;
}

int determine_epsilon(const EllipticCurveQ& E) {
  Real s(1.3);
  Real best_disc(0L);
  int best_eps = 0;
  Real other_disc(0L);
  for (int eps : {+1, -1}) {
    Real l1 = lambda_completed(E, s, eps, Real(1L));
    Real l2 = lambda_completed(E, s, eps, Real(1.21));
    Real disc = abs(l1 - l2);
    if (best_eps == 0 || disc < best_disc) {
      other_disc = best_disc;
      best_disc = disc;
      best_eps = eps;
    } else {
      other_disc = disc;
    }
  }
  Real tol = pow2(-(mpfield::default_prec() - 40));
  Real scale = max(Real(1L), abs(lambda_completed(E, s, best_eps, Real(1L))));
  if (!(best_disc < tol * scale) || !(other_disc > best_disc * Real(1000000L)))
    throw std::runtime_error("determine_epsilon: functional-equation sign not resolved for " + E.label);
  return best_eps;
}

Real lprime_minus1_elliptic(const EllipticCurveQ& E) {
  if (E.conductor > 50) throw std::invalid_argument("lprime_minus1_elliptic: conductor > 50");
  int eps = E.epsilon != 0 ? E.epsilon : determine_epsilon(E);
  Real lam = lambda_completed(E, Real(-1L), eps, Real(1L));
  return -sqrt(Real(E.conductor)) * lam / two_pi();
}

std::vector<long> stilde_scaled(long N, long x, long K) {
  x = mod(x, N);
  if (x == 0) throw std::invalid_argument("stilde: x must be nonzero mod N");
  std::vector<long> c(K + 1, 0);
  c[0] = N - 2 * x;
  for (long n = 1; n <= K; ++n) {
    long delta = 0;
    if (mod(n, N) == x) delta += 1;
    if (mod(-n, N) == x) delta -= 1;
    if (delta == 0) continue;
    for (long m = 1; m * n <= K; ++m) c[m * n] += 2 * N * delta;
  }
  return c;
}

qseries::QExpansion eisenstein_expansion(long N, long x, long K) {
  auto c = stilde_scaled(N, x, K);
  qseries::QExpansion s;
  s.level = 1;
  s.val = 0;
  s.order = K + 1;
  s.c.resize(K + 1);
  mpq_class inv(1, 2 * N);
  for (long k = 0; k <= K; ++k) s.c[k] = Complex(Real(mpq_class(c[k]) * inv));
  s.normalize();
  return s;
}

classp::ClassPFun eisenstein_classp(long N, long a, long b, long digits, EisensteinL* info) {
  using mpfield::Complex;
  long nh = static_cast<long>(N * (digits + 8) * 2.303 / 6.283) + 6;
  // Fourier inversion of h = f|W_N on the contour Im tau = y0
  double y0 = 10.0 * 2.303 / (6.283 * nh);
  long M = 1;
  while (M < (long)((digits + 12) * 2.303 / (6.283 * y0)) + nh + 16) M <<= 1;
  double im_min = y0 / (N * (0.25 + y0 * y0));
  long Kf = static_cast<long>((digits + 10) * 2.303 / (6.283 * im_min)) + 16;

  // coefficients of f = s~_a s~_b, scaled by (2N)^2
  auto ca = stilde_scaled(N, a, Kf);
  auto cb = stilde_scaled(N, b, Kf);
  std::vector<Real> cf(Kf + 1, Real(0L));
  {
    // int64 convolution in blocks to avoid overflow: |coeffs| <= 2N d(n)
    std::vector<long long> acc(Kf + 1, 0);
    for (long i = 0; i <= Kf; ++i) {
      if (ca[i] == 0) continue;
      for (long j = 0; i + j <= Kf; ++j) acc[i + j] += (long long)ca[i] * cb[j];
    }
    mpq_class scale(1, 4 * N * N);
    for (long k = 0; k <= Kf; ++k) cf[k] = Real(mpq_class((long)acc[k]) * scale);
  }

  // samples of h(x_j + i y0) = tau^{-2} f(-1/(N tau)) / N, then Fourier
  // inversion on the contour; cached per (N, a, b, digits)
  Real y0r(y0);
  std::vector<Complex> hn(nh + 1);
  std::string desc = "fricke_" + std::to_string(a) + "_" + std::to_string(b) + "_d" + std::to_string(digits);
  bool have = false;
  if (qseries::cache_enabled()) {
    if (auto hit = qseries::cache_load(desc, N, nh + 1, mpfield::default_prec())) {
      if (hit->len() == nh + 1 && hit->val == 0) {
        for (long n = 0; n <= nh; ++n) hn[n] = hit->c[n];
        have = true;
      }
    }
  }
  if (!have) {
    std::vector<Complex> h(M);
    for (long j = 0; j < M; ++j) {
      Complex tau(Real(mpq_class(j, M)) - Real(0.5), y0r);
      Complex w = Complex(Real(-1L)) / (tau * Real(N));
      Complex q = exp(mpfield::times_i(Complex(two_pi())) * w);
      Complex fv;
      for (long k = Kf; k >= 0; --k) {
        fv *= q;
        fv += Complex(cf[k]);
      }
      h[j] = fv / (tau * tau * Real(N));
    }
    // h-hat_n = e^{2 pi n y0} (1/M) sum_j h_j e^{-2 pi i n x_j}
    for (long n = 0; n <= nh; ++n) {
      Complex s;
      for (long j = 0; j < M; ++j) {
        // x_j = j/M - 1/2
        mpq_class xj(j, M);
        xj -= mpq_class(1, 2);
        s += h[j] * mpfield::unit_phase(mpq_class(-n) * xj);
      }
      s *= exp(two_pi() * Real(n) * y0r) / Real(M);
      hn[n] = s;
    }
    if (qseries::cache_enabled()) {
      qseries::QExpansion dump;
      dump.level = N;
      dump.val = 0;
      dump.order = nh + 1;
      dump.c = hn;
      qseries::cache_store(desc, dump, mpfield::default_prec());
    }
  }

  // verify the functional equation at a fresh point
  Real fe_res;
  {
    Complex tau(Real(0.137), Real(0.31));
    Complex w = Complex(Real(-1L)) / (tau * Real(N));
    Complex qf = exp(mpfield::times_i(Complex(two_pi())) * w);
    Complex fv;
    for (long k = Kf; k >= 0; --k) { fv *= qf; fv += Complex(cf[k]); }
    Complex qh = exp(mpfield::times_i(Complex(two_pi())) * tau);
    Complex hv;
    for (long n = nh; n >= 0; --n) { hv *= qh; hv += hn[n]; }
    Complex lhs = Real(N) * tau * tau * hv;
    fe_res = abs(lhs - fv) / max(Real(1L), abs(fv));
    Real tol = pow(Real(10L), Real((double)-(digits - 10)));
    if (!(fe_res < tol))
      throw std::runtime_error("eisenstein_classp: Fricke functional equation check failed");
  }

  classp::ClassPFun f;
  f.inf = classp::PHalf::zero(N, nh + 1, 0);
  for (long k = 0; k * N <= nh; ++k)
    if (k <= Kf) f.inf.a[0][k * N] = Complex(cf[k]);
  f.zero = classp::PHalf::zero(N, nh + 1, 2);
  for (long n = 0; n <= nh; ++n) f.zero.a[2][n] = -(hn[n] / Real(N));
  if (info) {
    info->fricke_const = hn[0];
    info->fe_residual = fe_res;
  }
  return f;
}

EisensteinL lprime_minus1_eisenstein(long N, long a, long b, long digits) {
  if (mod(a, N) == 0 || mod(b, N) == 0)
    throw std::invalid_argument("lprime_minus1_eisenstein: a, b must be nonzero");
  EisensteinL out;
  classp::ClassPFun f = eisenstein_classp(N, a, b, digits, &out);
  // Lambda_f(s) = (2 pi)^{-s} Gamma(s) L(f, s) = M(phi, s); at s = -1 the
  // Gamma factor forces L(f,-1) = 0 and L'(f,-1) = -M(phi,-1)/(2 pi)
  Complex m = classp::mellin_s(f, Complex(Real(-1L)));
  Real guard = pow(Real(10L), Real((double)-(digits - 6)));
  if (!(abs(m.im) < guard * max(Real(1L), abs(m.re))))
    throw std::runtime_error("lprime_minus1_eisenstein: imaginary residual too large");
  out.lprime = -m.re / two_pi();
  return out;
}

Real eisenstein_dirichlet(long N, long a, long b, long s, long terms) {
  auto ca = stilde_scaled(N, a, terms);
  auto cb = stilde_scaled(N, b, terms);
  std::vector<long long> acc(terms + 1, 0);
  for (long i = 0; i <= terms; ++i) {
    if (ca[i] == 0) continue;
    for (long j = 0; i + j <= terms; ++j) acc[i + j] += (long long)ca[i] * cb[j];
  }
  Real total(0L);
  mpq_class scale(1, 4 * N * N);
  for (long n = terms; n >= 1; --n) {
    if (acc[n] == 0) continue;
    Real t(mpq_class((long)acc[n]) * scale);
    total += t / pow_si(Real(n), s);
  }
  return total;
}

Real mahler_measure_boyd(long digits10) {
  // m((1+x)(1+y)+z) = (4/pi^2) int_0^{u*} int_0^{v*(u)} log(4 cos u cos v) dv du
  // with v*(u) = acos(1/(4 cos u)) and u* = acos(1/4)
  mpfield::ScopedPrec guard(std::max<long>(192, digits10 * 6));
  Real tol = pow(Real(10L), Real((double)-(digits10 + 3)));
  Real quarter(0.25);
  Real ustar = atan2(sqrt(Real(1L) - quarter * quarter), quarter);  // acos(1/4)
  auto inner = [&](const Real& u) {
    Real cu = cos(u);
    Real arg = Real(1L) / (Real(4L) * cu);
    if (!(arg < Real(1L))) return Real(0L);
    Real vstar = atan2(sqrt(Real(1L) - arg * arg), arg);
    auto f = [&](const Real& v) { return log(Real(4L) * cu * cos(v)); };
    return mpfield::tanh_sinh(f, Real(0L), vstar, tol, 9);
  };
  Real outer = mpfield::tanh_sinh(inner, Real(0L), ustar, tol, 9);
  Real p = mpfield::pi();
  return Real(4L) * outer / (p * p);
}

}  // namespace modreg::lfunc
