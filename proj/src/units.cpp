#include "modreg/units.hpp"
#include "modreg/special.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modreg::units {

using mpfield::unit_phase;
using qseries::QExpansion;

namespace {
long mod(long x, long N) {
  long r = x % N;
  return r < 0 ? r + N : r;
}
long floordiv(long x, long N) {
  long q = x / N;
  if (x % N != 0 && ((x < 0) != (N < 0))) --q;
  return q;
}
}  // namespace

std::pair<long, long> index_act(long N, std::pair<long, long> x, const Mat2& g) {
  return {mod(x.first * g.a + x.second * g.c, N), mod(x.first * g.b + x.second * g.d, N)};
}

std::pair<long, long> canonical_pm(long N, long x1, long x2) {
  x1 = mod(x1, N);
  x2 = mod(x2, N);
  std::pair<long, long> a{x1, x2}, b{mod(-x1, N), mod(-x2, N)};
  return std::min(a, b);
}

void UnitExpr::add_term(std::pair<long, long> key, const mpq_class& exponent) {
  auto it = e.find(key);
  if (it == e.end()) {
    if (exponent != 0) e.emplace(key, exponent);
    return;
  }
  it->second += exponent;
  if (it->second == 0) e.erase(it);
}

CrossRatioUnit make_cross_ratio(long N, std::array<std::pair<long, long>, 4> quad) {
  CrossRatioUnit u;
  u.N = N;
  for (int i = 0; i < 4; ++i) u.q[i] = canonical_pm(N, quad[i].first, quad[i].second);
  return u;
}

bool is_distinct(const CrossRatioUnit& u) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (u.q[i] == u.q[j]) return false;
  return true;
}

CrossRatioUnit complementary(const CrossRatioUnit& u) {
  CrossRatioUnit v = u;
  std::swap(v.q[1], v.q[2]);
  return v;
}

CrossRatioUnit slash(const CrossRatioUnit& u, const Mat2& g) {
  CrossRatioUnit v;
  v.N = u.N;
  for (int i = 0; i < 4; ++i) {
    auto moved = index_act(u.N, u.q[i], g);
    v.q[i] = canonical_pm(u.N, moved.first, moved.second);
  }
  return v;
}

UnitExpr unit_slash(const UnitExpr& v, const Mat2& g) {
  UnitExpr w;
  w.N = v.N;
  w.theta = 0;
  w.phase_exact = false;
  for (const auto& [key, ex] : v.e) {
    auto moved = index_act(v.N, key, g);
    w.add_term(canonical_pm(v.N, moved.first, moved.second), ex);
  }
  return w;
}

QExpansion siegel_expansion(long N, long a1, long a2, long order) {
  long k = floordiv(a1, N);
  long r1 = a1 - k * N;
  long r2 = mod(a2, N);
  if (r1 == 0 && r2 == 0) throw std::invalid_argument("siegel_expansion: index (0,0)");
  std::string desc;
  if (qseries::cache_enabled()) {
    desc = "siegelE_" + std::to_string(a1) + "_" + std::to_string(a2);
    if (auto hit = qseries::cache_load(desc, N, order, mpfield::default_prec())) return *hit;
  }
  Complex zp = unit_phase(mpq_class(r2, N));
  Complex zm = conj(zp);
  QExpansion s;
  if (r1 == 0) {
    Complex lead = Complex(1L) - zp;
    s = QExpansion::constant(N, lead, order);
  } else {
    s = QExpansion::constant(N, Complex(1L), order);
  }
  // (1 - q^{n + r1/N} zeta^{r2}), n >= 0, skipping the constant factor
  for (long n = (r1 == 0 ? 1 : 0);; ++n) {
    long kk = n * N + r1;
    if (kk >= order) break;
    if (kk == 0) continue;
    s.mul_binomial(kk, -zp);
  }
  // (1 - q^{n - r1/N} zeta^{-r2}), n >= 1
  for (long n = 1;; ++n) {
    long kk = n * N - r1;
    if (kk >= order) break;
    if (kk <= 0) continue;
    s.mul_binomial(kk, -zm);
  }
  s.mu = mpfield::bernoulli_poly2(mpq_class(r1, N)) / 2;
  s.mu.canonicalize();
  // (-zeta^{-a2})^k from the shift relation
  if (k != 0) {
    mpq_class theta = mpq_class(k, 2) - mpq_class(k * r2, N);
    s = qseries::scale(s, unit_phase(theta));
  }
  if (!desc.empty()) qseries::cache_store(desc, s, mpfield::default_prec());
  return s;
}

namespace {

// product of E_{lift} over integer lifts (exponent +1 each), accumulated
// binomial by binomial; the root-of-unity constant is returned as an exact
// angle and NOT multiplied in.
struct EProduct {
  QExpansion series;
  mpq_class mu = 0;
  mpq_class theta = 0;
};

EProduct e_product(long N, const std::vector<std::pair<long, long>>& lifts, long order) {
  EProduct P;
  P.series = QExpansion::constant(N, Complex(1L), order);
  for (auto [x1, x2] : lifts) {
    long k = floordiv(x1, N);
    long r1 = x1 - k * N;
    long r2 = mod(x2, N);
    if (r1 == 0 && r2 == 0) throw std::invalid_argument("e_product: index (0,0)");
    P.theta += mpq_class(k, 2) - mpq_class(k * r2, N);
    P.mu += mpfield::bernoulli_poly2(mpq_class(r1, N)) / 2;
    Complex zp = unit_phase(mpq_class(r2, N));
    Complex zm = conj(zp);
    if (r1 == 0) {
      Complex lead = Complex(1L) - zp;
      P.series = qseries::scale(P.series, lead);
    }
    for (long n = (r1 == 0 ? 1 : 0);; ++n) {
      long kk = n * N + r1;
      if (kk >= order) break;
      if (kk == 0) continue;
      P.series.mul_binomial(kk, -zp);
    }
    for (long n = 1;; ++n) {
      long kk = n * N - r1;
      if (kk >= order) break;
      if (kk <= 0) continue;
      P.series.mul_binomial(kk, -zm);
    }
  }
  P.mu.canonicalize();
  P.theta.canonicalize();
  return P;
}

void eight_indices(const CrossRatioUnit& u, std::vector<std::pair<long, long>>& num,
                   std::vector<std::pair<long, long>>& den) {
  auto [a, b, c, d] = u.q;
  num = {{c.first + a.first, c.second + a.second},
         {c.first - a.first, c.second - a.second},
         {d.first + b.first, d.second + b.second},
         {d.first - b.first, d.second - b.second}};
  den = {{c.first + b.first, c.second + b.second},
         {c.first - b.first, c.second - b.second},
         {d.first + a.first, d.second + a.second},
         {d.first - a.first, d.second - a.second}};
}

}  // namespace

UnitExpr cross_ratio_as_units(const CrossRatioUnit& u) {
  if (!is_distinct(u)) throw std::invalid_argument("cross_ratio_as_units: quadruple not distinct");
  std::vector<std::pair<long, long>> num, den;
  eight_indices(u, num, den);
  UnitExpr v;
  v.N = u.N;
  long N = u.N;
  auto absorb = [&](std::pair<long, long> lift, int sgn) {
    long k = floordiv(lift.first, N);
    long r1 = lift.first - k * N;
    long r2 = mod(lift.second, N);
    // E_lift = (-zeta^{-r2})^k g_{r1,r2}
    mpq_class th = mpq_class(k, 2) - mpq_class(k * r2, N);
    auto key = canonical_pm(N, r1, r2);
    if (key != std::make_pair(r1, r2)) {
      // g_{r} = -zeta^{-key_2} g_{key} with r = -key
      th += mpq_class(1, 2) - mpq_class(key.second, N);
    }
    v.theta += sgn * th;
    v.add_term(key, mpq_class(sgn));
  };
  for (auto& x : num) absorb(x, +1);
  for (auto& x : den) absorb(x, -1);
  // reduce theta mod 1
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.theta.get_num_mpz_t(), v.theta.get_den_mpz_t());
  v.theta -= mpq_class(fl);
  v.theta.canonicalize();
  return v;
}

QExpansion cross_ratio_expansion(const CrossRatioUnit& u, long order) {
  if (!is_distinct(u)) throw std::invalid_argument("cross_ratio_expansion: quadruple not distinct");
  std::vector<std::pair<long, long>> num, den;
  eight_indices(u, num, den);
  EProduct Pn = e_product(u.N, num, order);
  EProduct Pd = e_product(u.N, den, order);
  Pn.series.mu = Pn.mu;
  Pd.series.mu = Pd.mu;
  QExpansion r = qseries::div(Pn.series, Pd.series);
  r = qseries::scale(r, unit_phase(Pn.theta - Pd.theta));
  r.fold_mu();
  if (r.mu != 0) throw std::runtime_error("cross_ratio_expansion: non-integral total valuation");
  return r;
}

QExpansion unit_expansion(const UnitExpr& v, long order) {
  std::vector<std::pair<long, long>> num, den;
  for (const auto& [key, ex] : v.e) {
    if (ex.get_den() != 1) throw std::invalid_argument("unit_expansion: non-integer exponent");
    long n = ex.get_num().get_si();
    for (long i = 0; i < std::abs(n); ++i) (n > 0 ? num : den).push_back(key);
  }
  EProduct Pn = e_product(v.N, num, order);
  EProduct Pd = e_product(v.N, den, order);
  Pn.series.mu = Pn.mu;
  Pd.series.mu = Pd.mu;
  QExpansion r = qseries::div(Pn.series, Pd.series);
  mpq_class th = Pn.theta - Pd.theta;
  if (v.phase_exact) th += v.theta;
  r = qseries::scale(r, unit_phase(th));
  return r;
}

QExpansion wp_expansion(long N, long a1, long a2, long order) {
  a1 = mod(a1, N);
  a2 = mod(a2, N);
  if (a1 == 0 && a2 == 0) throw std::invalid_argument("wp_expansion: index (0,0)");
  QExpansion s = QExpansion::constant(N, Complex(mpq_class(1, 12)), order);
  auto add_at = [&](long k, const Complex& c) {
    if (k >= 0 && k < order) s.c[k] += c;  // s is dense with val = 0
  };
  // q_z/(1-q_z)^2 = sum_{k>=1} k q_z^k  (a1 > 0), else the constant value
  if (a1 == 0) {
    Complex z = unit_phase(mpq_class(a2, N));
    Complex om = Complex(1L) - z;
    Complex cst = z / (om * om);
    s.c[0] += cst;
  } else {
    for (long k = 1; k * a1 < order; ++k) {
      Complex z = unit_phase(mpq_class(k * a2, N));
      z *= Real(k);
      add_at(k * a1, z);
    }
  }
  // sum_{m>=1} [ q^m q_z/(1-..)^2 + q^m/q_z/(1-..)^2 - 2 q^m/(1-q^m)^2 ]
  for (long m = 1; m * N - a1 < order; ++m) {
    long e1 = m * N + a1;
    for (long k = 1; k * e1 < order; ++k) {
      Complex z = unit_phase(mpq_class(k * a2, N));
      z *= Real(k);
      add_at(k * e1, z);
    }
    long e2 = m * N - a1;
    if (e2 > 0) {
      for (long k = 1; k * e2 < order; ++k) {
        Complex z = unit_phase(mpq_class(-k * a2, N));
        z *= Real(k);
        add_at(k * e2, z);
      }
    }
    for (long k = 1; k * m * N < order; ++k) {
      Complex z(Real(-2L * k));
      add_at(k * m * N, z);
    }
  }
  s.normalize();
  return s;
}

// ---------------- cusps ----------------

namespace {
long gcdl(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }
}

bool cusp_equiv_gamma1(long N, const Cusp& x, const Cusp& y) {
  long g = gcdl(x.q, N);
  if (g == 0) g = N;
  auto test = [&](long e) {
    return mod(y.q - e * x.q, N) == 0 && mod(y.p - e * x.p, g) == 0;
  };
  return test(1) || test(-1);
}

std::vector<Cusp> gamma1_cusps(long N) {
  std::vector<Cusp> out;
  auto seen = [&](const Cusp& c) {
    for (const auto& o : out)
      if (cusp_equiv_gamma1(N, o, c)) return true;
    return false;
  };
  for (long qb = 0; qb < N; ++qb) {
    for (long pb = 0; pb < N; ++pb) {
      if (std::gcd(std::gcd(pb, qb), N) != 1) continue;
      long q = (qb == 0) ? N : qb;
      long p = -1;
      for (long t = 0; t < 4 * N; ++t) {
        long cand = pb + t * N;
        if (gcdl(cand, q) == 1) { p = cand; break; }
      }
      if (p < 0) continue;
      Cusp c{p, q};
      if (!seen(c)) out.push_back(c);
    }
  }
  // infinity class: (1,0) is equivalent to 1/N, already covered above, but
  // normalize so an explicit (1,0) compares equal via cusp_equiv_gamma1.
  return out;
}

namespace {
// s, t with a s + b t = gcd(a, b)
void ext_gcd(long a, long b, long& g, long& s, long& t) {
  long s0 = 1, s1 = 0, t0 = 0, t1 = 1, a0 = a, a1 = b;
  while (a1 != 0) {
    long q = a0 / a1;
    long tmp = a0 - q * a1; a0 = a1; a1 = tmp;
    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  g = a0; s = s0; t = t0;
}
}  // namespace

Mat2 cusp_matrix(const Cusp& c) {
  // gamma = [[p, x],[q, y]] with p y - q x = 1
  long g, s, t;
  ext_gcd(c.p, c.q, g, s, t);
  if (g != 1 && g != -1) throw std::invalid_argument("cusp_matrix: p/q not in lowest terms");
  if (g < 0) { s = -s; t = -t; }
  Mat2 m{c.p, -t, c.q, s};
  if (m.det() != 1) throw std::runtime_error("cusp_matrix: failed to build unimodular lift");
  return m;
}

long cusp_width_gamma1(long N, const Cusp& c) {
  Mat2 g = cusp_matrix(c);
  long p = g.a, q = g.c;
  for (long h = 1; h <= N; ++h) {
    if (mod(q * q * h, N) != 0) continue;
    bool plus = mod(p * q * h, N) == 0;
    bool minus = mod(p * q * h - 2, N) == 0 && mod(p * q * h + 2, N) == 0;
    if (plus || minus) return h;
  }
  throw std::runtime_error("cusp_width_gamma1: no width <= N");
}

mpq_class order_at_infinity(const UnitExpr& v) {
  mpq_class s = 0;
  for (const auto& [key, ex] : v.e)
    s += ex * mpfield::bernoulli_poly2(mpq_class(key.first, v.N)) / 2;
  s.canonicalize();
  return s;
}

std::vector<CuspOrder> order_at_cusps(long N, const UnitExpr& v) {
  std::vector<CuspOrder> out;
  for (const auto& c : gamma1_cusps(N)) {
    CuspOrder co;
    co.cusp = c;
    co.width = cusp_width_gamma1(N, c);
    UnitExpr w = unit_slash(v, cusp_matrix(c));
    co.order = order_at_infinity(w) * co.width;
    co.order.canonicalize();
    out.push_back(std::move(co));
  }
  return out;
}

mpq_class degree_plus(long N, const UnitExpr& v) {
  mpq_class s = 0;
  for (const auto& co : order_at_cusps(N, v))
    if (co.order > 0) s += co.order;
  s.canonicalize();
  return s;
}

CuspValue cusp_value(const CrossRatioUnit& u, const Mat2& gamma, long t) {
  CrossRatioUnit w = slash(u, gamma);
  if (!is_distinct(w)) throw std::invalid_argument("cusp_value: quadruple not distinct");
  std::vector<std::pair<long, long>> num, den;
  eight_indices(w, num, den);
  long N = u.N;
  mpq_class valn = 0, theta = 0;
  std::vector<std::pair<long, int>> leads;  // (r2, sign) of (1 - zeta^{r2}) factors
  auto absorb = [&](std::pair<long, long> lift, int sgn) {
    long k = floordiv(lift.first, N);
    long r1 = lift.first - k * N;
    long r2 = mod(lift.second, N);
    theta += sgn * (mpq_class(k, 2) - mpq_class(k * r2, N));
    valn += sgn * mpfield::bernoulli_poly2(mpq_class(r1, N)) / 2;
    if (r1 == 0) leads.emplace_back(r2, sgn);
  };
  for (auto& x : num) absorb(x, +1);
  for (auto& x : den) absorb(x, -1);
  valn.canonicalize();
  CuspValue cv;
  if (valn > 0) { cv.kind = -1; return cv; }
  if (valn < 0) { cv.kind = +1; return cv; }
  // embed the exact constant via zeta -> zeta^t
  theta.canonicalize();
  mpq_class half(1, 2);
  mpq_class th = theta;
  // theta = s/2 + j/N with s in {0,1}
  long s = 0;
  mpq_class jq = th * N;
  jq.canonicalize();
  if (jq.get_den() != 1) {
    s = 1;
    jq = (th - half) * N;
    jq.canonicalize();
    if (jq.get_den() != 1) throw std::runtime_error("cusp_value: constant not in mu_2N");
  }
  mpq_class jt = jq * t;
  mpq_class embedded = mpq_class(s, 2) + jt / N;
  Complex value = unit_phase(embedded);
  for (auto [r2, sgn] : leads) {
    Complex f = Complex(1L) - unit_phase(mpq_class(mod(r2 * t, N), N));
    if (sgn > 0)
      value *= f;
    else
      value = value / f;
  }
  cv.kind = 0;
  cv.value = value;
  return cv;
}

long mason_bound(long genus, long s) { return 2 * genus - 2 + s; }

long num_cusps_x1(long N) {
  if (N == 1) return 1;
  if (N == 2) return 2;
  if (N == 3) return 2;
  if (N == 4) return 3;
  long s = 0;
  for (long d = 1; d <= N; ++d) {
    if (N % d) continue;
    auto phi = [](long n) {
      long r = n;
      for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
          r -= r / p;
          while (n % p == 0) n /= p;
        }
      if (n > 1) r -= r / n;
      return r;
    };
    s += phi(d) * phi(N / d);
  }
  return s / 2;
}

long genus_x1(long N) {
  if (N <= 4) return 0;
  // index of +-Gamma1(N) in PSL2(Z)
  long mu = N * N;
  long n = N;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      mu = mu / (p * p) * (p * p - 1);
      while (n % p == 0) n /= p;
    }
  if (n > 1) mu = mu / (n * n) * (n * n - 1);
  mu /= 2;
  long einf = num_cusps_x1(N);
  // g = 1 + mu/12 - einf/2 (no elliptic points for N >= 5)
  mpq_class g = 1 + mpq_class(mu, 12) - mpq_class(einf, 2);
  g.canonicalize();
  if (g.get_den() != 1) throw std::runtime_error("genus_x1: non-integral genus");
  return g.get_num().get_si();
}

}  // namespace modreg::units
