#include "modreg/classp.hpp"
#include "modreg/special.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace modreg::classp {

using mpfield::addmul;
using mpfield::bernoulli;
using mpfield::pow2;
using mpfield::two_pi;

PHalf PHalf::zero(long N, long len, long jmax) {
  if (jmax > kJCap) throw std::invalid_argument("PHalf: j-degree cap exceeded");
  PHalf h;
  h.N = N;
  h.a.assign(jmax + 1, std::vector<Complex>(len));
  return h;
}

namespace {
const Complex kZero;
}

const Complex& PHalf::at(long j, long n) const {
  if (j < 0 || j >= static_cast<long>(a.size()) || n < 0 || n >= len()) return kZero;
  return a[j][n];
}

void PHalf::set(long j, long n, const Complex& c) {
  if (j > kJCap) throw std::invalid_argument("PHalf: j-degree cap exceeded");
  while (j >= static_cast<long>(a.size())) a.emplace_back(len());
  a[j][n] = c;
}

void PHalf::add_to(long j, long n, const Complex& c) {
  if (j > kJCap) throw std::invalid_argument("PHalf: j-degree cap exceeded");
  while (j >= static_cast<long>(a.size())) a.emplace_back(len());
  a[j][n] += c;
}

void PHalf::iadd(const PHalf& o, const Complex& scale) {
  if (o.N != N) throw std::invalid_argument("PHalf: level mismatch");
  long L = std::min(len(), o.len());
  if (len() == 0) {
    a.assign(1, std::vector<Complex>(o.len()));
    L = o.len();
  }
  while (a.size() < o.a.size()) a.emplace_back(len());
  for (long j = 0; j <= o.jmax(); ++j)
    for (long n = 0; n < L; ++n) addmul(a[j][n], scale, o.a[j][n]);
  // iadd keeps the shorter truncation: drop coefficients beyond L
  if (o.len() < len())
    for (auto& row : a) row.resize(L);
}

void PHalf::scale(const Complex& s) {
  for (auto& row : a)
    for (auto& c : row) c *= s;
}

void PHalf::shift_j(long k) {
  if (jmax() + k > kJCap) throw std::invalid_argument("PHalf: j-degree cap exceeded");
  for (long i = 0; i < k; ++i) a.insert(a.begin(), std::vector<Complex>(len()));
}

Complex PHalf::eval(const Real& y) const {
  Real w = exp(-two_pi() * y / Real(N));
  Complex total;
  for (long j = jmax(); j >= 0; --j) {
    Complex row;
    for (long n = len() - 1; n >= 0; --n) {
      row *= Complex(w);
      row += a[j][n];
    }
    total *= Complex(y);
    total += row;
  }
  return total;
}

PHalf PHalf::derivative() const {
  PHalf d = PHalf::zero(N, len(), std::max<long>(0, jmax()));
  Real lam = two_pi() / Real(N);
  for (long j = 0; j <= jmax(); ++j)
    for (long n = 0; n < len(); ++n) {
      const Complex& c = a[j][n];
      if (c.is_zero()) continue;
      if (j > 0) d.add_to(j - 1, n, c * Real(j));
      if (n > 0) d.add_to(j, n, c * (-lam * Real(n)));
    }
  d.trim();
  return d;
}

PHalf PHalf::primitive_termwise() const {
  PHalf p = PHalf::zero(N, len(), jmax());
  Real lam = two_pi() / Real(N);
  for (long j = 0; j <= jmax(); ++j)
    for (long n = 0; n < len(); ++n) {
      const Complex& c = a[j][n];
      if (c.is_zero()) continue;
      if (n == 0) {
        // int y^j dy = y^{j+1}/(j+1)
        p.add_to(j + 1, 0, c * Real(mpq_class(1, j + 1)));
      } else {
        // int y^j e^{-lam n y} dy = -e^{-lam n y} sum_{i=0}^{j} (j!/(j-i)!) y^{j-i} / (lam n)^{i+1}
        Real inv = Real(1L) / (lam * Real(n));
        Real factor = inv;  // (j)_i / (lam n)^{i+1} accumulated
        for (long i = 0; i <= j; ++i) {
          p.add_to(j - i, n, -(c * factor));
          if (i < j) factor *= Real(j - i) * inv;
        }
      }
    }
  p.trim();
  return p;
}

Real PHalf::max_n0() const {
  Real m(0L);
  for (long j = 0; j <= jmax(); ++j) m = max(m, abs(at(j, 0)));
  return m;
}

void PHalf::clear_n0() {
  for (auto& row : a)
    if (!row.empty()) row[0] = Complex(0L);
}

void PHalf::trim() {
  while (a.size() > 1) {
    bool allz = true;
    for (const auto& c : a.back())
      if (!c.is_zero()) { allz = false; break; }
    if (!allz) break;
    a.pop_back();
  }
}

PHalf mul(const PHalf& x, const PHalf& y) {
  if (x.N != y.N) throw std::invalid_argument("PHalf mul: level mismatch");
  long L = std::min(x.len(), y.len());
  long J = x.jmax() + y.jmax();
  if (J > PHalf::kJCap) throw std::invalid_argument("PHalf mul: j-degree cap exceeded");
  PHalf r = PHalf::zero(x.N, L, J);
  for (long j1 = 0; j1 <= x.jmax(); ++j1)
    for (long j2 = 0; j2 <= y.jmax(); ++j2) {
      auto& out = r.a[j1 + j2];
      const auto& ax = x.a[j1];
      const auto& ay = y.a[j2];
      for (long n1 = 0; n1 < L; ++n1) {
        if (ax[n1].is_zero()) continue;
        long top = L - n1;
        for (long n2 = 0; n2 < top; ++n2) addmul(out[n1 + n2], ax[n1], ay[n2]);
      }
    }
  r.trim();
  return r;
}

Complex ClassPFun::eval(const Real& y) const {
  if (y >= Real(1L)) return inf.eval(y);
  return zero.eval(Real(1L) / y);
}

bool ClassPFun::integrable(Real* worst) const {
  Real w(0L);
  for (long j = 0; j <= inf.jmax(); ++j) w = max(w, abs(inf.at(j, 0)));
  for (long j = 1; j <= zero.jmax(); ++j) w = max(w, abs(zero.at(j, 0)));
  if (worst) *worst = w;
  return w.is_zero();
}

ClassPFun add(const ClassPFun& f, const ClassPFun& g) {
  ClassPFun r = f;
  r.inf.iadd(g.inf);
  r.zero.iadd(g.zero);
  return r;
}

ClassPFun mul(const ClassPFun& f, const ClassPFun& g) {
  ClassPFun r;
  r.inf = mul(f.inf, g.inf);
  r.zero = mul(f.zero, g.zero);
  return r;
}

ClassPFun differentiate(const ClassPFun& f) {
  ClassPFun r;
  r.inf = f.inf.derivative();
  // with h(y) = phi(1/y): (phi')(1/y) = -y^2 h'(y)
  PHalf hz = f.zero.derivative();
  hz.shift_j(2);
  hz.scale(Complex(-1L));
  r.zero = hz;
  return r;
}

ClassPFun primitive(const ClassPFun& f, const Complex& c_inf) {
  for (long n = 0; n < f.zero.len(); ++n)
    for (long j = 0; j <= std::min<long>(1, f.zero.jmax()); ++j)
      if (!f.zero.at(j, n).is_zero()) {
        std::ostringstream os;
        os << "no primitive in P: zero-side coefficient (n=" << n << ", j=" << j << ") is nonzero";
        throw std::domain_error(os.str());
      }
  ClassPFun F;
  F.inf = f.inf.primitive_termwise();
  F.inf.add_to(0, 0, c_inf);
  // 0-side: H(y) = Phi(1/y) has H' = -y^{-2} h(y); h has only j >= 2 rows
  PHalf integrand = PHalf::zero(f.zero.N, f.zero.len(), std::max<long>(0, f.zero.jmax() - 2));
  for (long j = 2; j <= f.zero.jmax(); ++j)
    for (long n = 0; n < f.zero.len(); ++n) integrand.add_to(j - 2, n, -f.zero.at(j, n));
  F.zero = integrand.primitive_termwise();
  // match the two sides at y = 1
  Complex c0 = F.inf.eval(Real(1L)) - F.zero.eval(Real(1L));
  F.zero.add_to(0, 0, c0);
  return F;
}

namespace {

// crude envelope |a_n| <= C n^r from the top decade, inflated 100x
void envelope(const PHalf& h, Real& C, double& r) {
  long L = h.len();
  long lo1 = std::max<long>(1, (8 * L) / 10), lo2 = std::max<long>(1, (6 * L) / 10);
  Real m1(0L), m2(0L);
  for (long j = 0; j <= h.jmax(); ++j) {
    for (long n = lo1; n < L; ++n) m1 = max(m1, abs(h.at(j, n)));
    for (long n = lo2; n < lo1; ++n) m2 = max(m2, abs(h.at(j, n)));
  }
  if (m1.is_zero() || m2.is_zero() || lo1 <= lo2) {
    C = m1 + m2 + Real(1L);
    r = 3.0;
    return;
  }
  double ratio = (m1 / m2).to_double();
  r = std::log(std::max(ratio, 1e-30)) / std::log(double(lo1) / double(lo2));
  if (r < 0) r = 0;
  if (r > 8) r = 8;
  C = m1 * Real(100L) / pow(Real((double)lo1), Real(r));
}

Real tail_majorant(const PHalf& h, long jshift) {
  // each dropped term is |a_n| x^{-(j+jshift)} Gamma(j+jshift, x) with
  // x = 2 pi n / N; Gamma(m, x) <= 2 x^{m-1} e^{-x} once x >= 2(m-1), so the
  // term is <= 2 C n^r e^{-x}/x, summed by a geometric majorant
  Real C;
  double r;
  envelope(h, C, r);
  long L = std::max<long>(h.len(), 2);
  Real x0 = two_pi() * Real(L) / Real(h.N);
  Real rho = exp(-two_pi() / Real(h.N)) * pow(Real(1L) + Real(1L) / Real(L), Real(r));
  if (!(rho < Real(1L))) rho = Real(0.99);
  Real first = Real(2L) * C * pow(Real((double)L), Real(r)) * exp(-x0) / x0;
  (void)jshift;
  return first / (Real(1L) - rho);
}

}  // namespace

MellinValue mellin_value(const ClassPFun& f) {
  Real worst;
  if (!f.integrable(&worst)) {
    std::ostringstream os;
    os << "mellin_value: non-integrable input (constant-term residue " << worst.str(6) << ")";
    throw std::domain_error(os.str());
  }
  long N = f.level();
  Real lam = two_pi() / Real(N);
  Complex total = f.zero.at(0, 0);  // b_0^{(0)}
  for (long n = 1; n < f.inf.len(); ++n) {
    Real x = lam * Real(n);
    Real ratio = Real(1L) / x;  // N/(2 pi n)
    for (long j = 0; j <= f.inf.jmax(); ++j) {
      const Complex& c = f.inf.at(j, n);
      if (c.is_zero()) continue;
      total += c * (pow_si(ratio, j + 1) * mpfield::incomplete_gamma(j + 1, x));
    }
  }
  for (long n = 1; n < f.zero.len(); ++n) {
    Real x = lam * Real(n);
    Real ratio = Real(1L) / x;
    for (long j = 0; j <= f.zero.jmax(); ++j) {
      const Complex& c = f.zero.at(j, n);
      if (c.is_zero()) continue;
      total += c * (pow_si(ratio, j - 1) * mpfield::incomplete_gamma(j - 1, x));
    }
  }
  MellinValue mv;
  mv.value = total;
  mv.tail_bound = tail_majorant(f.inf, 1) + tail_majorant(f.zero, -1);
  return mv;
}

// ---------------- complex incomplete gamma ----------------

Complex lgamma_complex(const Complex& z) {
  using mpfield::Real;
  if (z.im.is_zero() && z.re.sign() > 0) {
    Real r = z.re;
    mpfr_lngamma(r.v, r.v, MPFR_RNDN);
    return Complex(r);
  }
  // shift until Re(w) is large, then Stirling
  long prec = mpfield::default_prec();
  Real target = Real(20L) + Real(prec) * Real(0.35);
  Complex w = z;
  Complex shift_log(0L);
  while (w.re < target) {
    shift_log += log(w);
    w += Complex(1L);
  }
  Complex lg = (w - Complex(Real(0.5))) * log(w) - w;
  lg += Complex(Real(0.5) * log(two_pi()));
  Complex winv = Complex(1L) / w;
  Complex wpow = winv;
  for (unsigned k = 1; k <= 80; ++k) {
    mpq_class coef = bernoulli(2 * k) / mpq_class(2 * k * (2 * k - 1));
    Complex term = wpow * Real(coef);
    lg += term;
    if (abs(term) < pow2(-prec - 16)) break;
    wpow *= winv * winv;
  }
  return lg - shift_log;
}

Complex incomplete_gamma_complex(const Complex& a, const Real& x) {
  if (!(x.sign() > 0)) throw std::invalid_argument("incomplete_gamma_complex: x must be > 0");
  if (a.im.is_zero()) return Complex(mpfield::incomplete_gamma_real(a.re, x));
  long prec = mpfield::default_prec();
  Real eps = pow2(-prec - 16);
  if (x < Real(4L) + abs(a)) {
    // Gamma(a) - x^a sum_k (-x)^k / (k! (a+k))
    Complex gam = exp(lgamma_complex(a));
    Complex sum;
    Complex term(1L);  // (-x)^k / k!
    for (long k = 0; k < 10000; ++k) {
      if (k > 0) {
        term *= Complex(-x);
        term /= k;
      }
      Complex piece = term / (a + Complex(Real((double)k)));
      sum += piece;
      if (abs(term) < eps && k > 4) break;
    }
    Complex xa = exp(a * log(Complex(x)));
    return gam - xa * sum;
  }
  // continued fraction (modified Lentz):
  // Gamma(a,x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - 2(2-a)/(...)))
  Complex tiny(Real(pow2(-prec - 60)));
  Complex b0 = Complex(x) + Complex(1L) - a;
  Complex fval = b0.is_zero() ? tiny : b0;
  Complex C = fval;
  Complex D(0L);
  Complex b = b0;
  for (long i = 1; i < 20000; ++i) {
    Complex an = Complex(Real((double)(-i))) * (Complex(Real((double)i)) - a);
    b += Complex(2L);
    D = b + an * D;
    if (abs(D) < tiny.re) D = tiny;
    C = b + an / C;
    if (abs(C) < tiny.re) C = tiny;
    D = Complex(1L) / D;
    Complex delta = C * D;
    fval *= delta;
    if (abs(delta - Complex(1L)) < eps) break;
  }
  return exp(Complex(-x) + a * log(Complex(x))) / fval;
}

Complex mellin_s(const ClassPFun& f, const Complex& s) {
  long N = f.level();
  long prec = mpfield::default_prec();
  Real lam = two_pi() / Real(N);
  Real pole_eps = pow2(-prec / 2);
  Complex total;
  // constant terms: -a0^{(j)}/(s+j) + b0^{(j)}/(s-j)
  for (long j = 0; j <= f.inf.jmax(); ++j) {
    const Complex& c = f.inf.at(j, 0);
    if (c.is_zero()) continue;
    Complex den = s + Complex(Real((double)j));
    if (abs(den) < pole_eps) throw std::domain_error("mellin_s: pole of the continuation at s = -j");
    total -= c / den;
  }
  for (long j = 0; j <= f.zero.jmax(); ++j) {
    const Complex& c = f.zero.at(j, 0);
    if (c.is_zero()) continue;
    Complex den = s - Complex(Real((double)j));
    if (abs(den) < pole_eps) throw std::domain_error("mellin_s: pole of the continuation at s = +j");
    total += c / den;
  }
  bool real_s = s.im.is_zero();
  auto gamma_shift = [&](const Complex& alpha, const Real& x) {
    if (real_s) return Complex(mpfield::incomplete_gamma_real(alpha.re, x));
    return incomplete_gamma_complex(alpha, x);
  };
  for (long n = 1; n < f.inf.len(); ++n) {
    Real x = lam * Real(n);
    Real lr = -log(x);  // log(N/2pi n)
    for (long j = 0; j <= f.inf.jmax(); ++j) {
      const Complex& c = f.inf.at(j, n);
      if (c.is_zero()) continue;
      Complex alpha = s + Complex(Real((double)j));
      total += c * exp(alpha * Complex(lr)) * gamma_shift(alpha, x);
    }
  }
  for (long n = 1; n < f.zero.len(); ++n) {
    Real x = lam * Real(n);
    Real lr = -log(x);
    for (long j = 0; j <= f.zero.jmax(); ++j) {
      const Complex& c = f.zero.at(j, n);
      if (c.is_zero()) continue;
      Complex alpha = Complex(Real((double)j)) - s;
      total += c * exp(alpha * Complex(lr)) * gamma_shift(alpha, x);
    }
  }
  return total;
}

Complex mellin_s_derivative(const ClassPFun& f, const Complex& s) {
  Real h = pow2(-mpfield::default_prec() / 3);
  Complex hp(h);
  Complex lo = mellin_s(f, s - hp), hi = mellin_s(f, s + hp);
  return (hi - lo) * Real(0.5) / h;
}

}  // namespace modreg::classp
