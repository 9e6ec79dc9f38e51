#include "modreg/regulator.hpp"
#include "modreg/special.hpp"

#include <cmath>
#include <stdexcept>

namespace modreg::regulator {

using classp::mul;
using mpfield::bernoulli;
using mpfield::pow2;
using mpfield::two_pi;
using mpfield::unit_phase;

namespace {
long mellin_len(long N, long digits) {
  return static_cast<long>(N * (digits + 18) * 2.302585 / 6.283185) + 10;
}

// 2^k B_k / k! as an exact rational
mpq_class bern_coef(long k) {
  mpq_class c = bernoulli(static_cast<unsigned>(k));
  c *= mpz_class(1) << k;
  mpz_class kf;
  mpz_fac_ui(kf.get_mpz_t(), static_cast<unsigned long>(k));
  c /= mpq_class(kf);
  c.canonicalize();
  return c;
}
}  // namespace

Context::Context(long N, long digits) : N_(N), digits_(digits), len_(mellin_len(N, digits)) {}

const Context::LogData& Context::log_data(std::pair<long, long> key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = logcache_.find(key);
  if (it != logcache_.end()) return it->second;
  // log E_{r} = 2 pi i mu tau + log(lead) - sum_{factors} sum_m (c^m/m) q^{km/N}
  LogData d;
  long r1 = key.first, r2 = key.second;
  d.mu = mpfield::bernoulli_poly2(mpq_class(r1, N_)) / 2;
  d.mu.canonicalize();
  d.coef.assign(len_, Complex());
  Complex zp = unit_phase(mpq_class(r2, N_));
  Complex zm = conj(zp);
  if (r1 == 0) {
    d.log_lead = log(Complex(1L) - zp);
  } else {
    d.log_lead = Complex(0L);
  }
  auto factor = [&](long kk, const Complex& c) {
    // log(1 - c q^{kk/N}) = -sum_m (c^m / m) q^{kk m / N}
    Complex cm(1L);
    for (long m = 1; m * kk < len_; ++m) {
      cm *= c;
      Complex t = cm;
      t /= m;
      d.coef[m * kk] -= t;
    }
  };
  for (long n = (r1 == 0 ? 1 : 0); n * N_ + r1 < len_; ++n)
    if (n * N_ + r1 > 0) factor(n * N_ + r1, zp);
  for (long n = 1; n * N_ - r1 < len_; ++n)
    if (n * N_ - r1 > 0) factor(n * N_ - r1, zm);
  return logcache_.emplace(key, std::move(d)).first->second;
}

PHalf Context::logabs_half(const UnitExpr& v) const {
  PHalf h = PHalf::zero(N_, len_, 1);
  Real tp = two_pi();
  for (const auto& [key, ex] : v.e) {
    const LogData& d = log_data(key);
    Real e(ex);
    // -2 pi mu y
    h.a[1][0] += Complex(-(tp * Real(d.mu)) * e);
    h.a[0][0] += Complex(d.log_lead.re * e);
    for (long n = 1; n < len_; ++n) h.a[0][n] += Complex(d.coef[n].re * e);
  }
  return h;
}

PHalf Context::dlogabs_half(const UnitExpr& v) const {
  PHalf h = PHalf::zero(N_, len_, 0);
  Real tp = two_pi();
  mpq_class mu_total = 0;
  for (const auto& [key, ex] : v.e) mu_total += ex * log_data(key).mu;
  mu_total.canonicalize();
  h.a[0][0] = Complex(-(tp * Real(mu_total)));
  if (mu_total == 0) h.a[0][0] = Complex(0L);  // exact zero, not a rounded one
  Real lam = tp / Real(N_);
  for (const auto& [key, ex] : v.e) {
    const LogData& d = log_data(key);
    Real e(ex);
    for (long n = 1; n < len_; ++n) h.a[0][n] += Complex(-(lam * Real(n)) * d.coef[n].re * e);
  }
  return h;
}

PHalf Context::darg_half(const UnitExpr& v) const {
  PHalf h = PHalf::zero(N_, len_, 0);
  Real lam = two_pi() / Real(N_);
  for (const auto& [key, ex] : v.e) {
    const LogData& d = log_data(key);
    Real e(ex);
    for (long n = 1; n < len_; ++n) h.a[0][n] += Complex(-(lam * Real(n)) * d.coef[n].im * e);
  }
  return h;
}

Complex Context::cusp_limit(const CrossRatioUnit& u) const {
  auto cv = units::cusp_value(u, Mat2{1, 0, 0, 1}, 1);
  if (cv.kind != 0) return Complex(0L);  // D and Lhat vanish at 0 and infinity
  return cv.value;
}

PHalf Context::alpha_half(const CrossRatioUnit& u) const {
  UnitExpr vu = units::cross_ratio_as_units(u);
  UnitExpr vc = units::cross_ratio_as_units(units::complementary(u));
  PHalf gu = logabs_half(vu), gc = logabs_half(vc);
  PHalf dgu = dlogabs_half(vu), dgc = dlogabs_half(vc);
  PHalf a = mul(gu, dgc);
  PHalf b = mul(gc, dgu);
  b.scale(Complex(-1L));
  a.iadd(b);
  // the constant rows must cancel: the y-row exactly, the 1-row by the
  // tame-symbol identity of the Steinberg pair; assert and clear
  Real worst = a.max_n0();
  Real tol = pow2(-(mpfield::default_prec() - 48));
  Real scale(1L);
  for (long n = 1; n < std::min<long>(a.len(), 8); ++n) scale = max(scale, abs(a.at(0, n)));
  if (worst > tol * scale)
    throw std::runtime_error("alpha_half: tame-symbol cancellation failed (expansion bug)");
  a.clear_n0();
  return a;
}

PHalf Context::bloch_half(const CrossRatioUnit& u) const {
  UnitExpr vu = units::cross_ratio_as_units(u);
  UnitExpr vc = units::cross_ratio_as_units(units::complementary(u));
  PHalf p = mul(logabs_half(vu), darg_half(vc));
  PHalf q = mul(logabs_half(vc), darg_half(vu));
  q.scale(Complex(-1L));
  p.iadd(q);
  PHalf D = p.primitive_termwise();
  D.add_to(0, 0, Complex(mpfield::bloch_wigner(cusp_limit(u))));
  return D;
}

PHalf Context::svp_half(const CrossRatioUnit& u, long m) const {
  if (m < 2 || m > 5) throw std::invalid_argument("svp_expansion: 2 <= m <= 5");
  if (m == 2) {
    PHalf D = bloch_half(u);
    D.scale(Complex::i_unit());
    return D;
  }
  UnitExpr vu = units::cross_ratio_as_units(u);
  UnitExpr vc = units::cross_ratio_as_units(units::complementary(u));
  PHalf gu = logabs_half(vu);
  PHalf dgu = dlogabs_half(vu);
  PHalf hu = darg_half(vu);
  // d Lhat_m(u) = i Lhat_{m-1}(u) darg u - c_{m-1} alpha(1-u,u) log^{m-2}|u|
  //               - sum_{k=2}^{m-2} c_k Lhat_{m-k}(u) log^{k-1}|u| dlog|u|
  PHalf prev = svp_half(u, m - 1);
  prev.scale(Complex::i_unit());
  PHalf d = mul(prev, hu);
  mpq_class cm = bern_coef(m - 1);
  if (cm != 0) {
    PHalf t = alpha_half(u);
    for (long i = 0; i < m - 2; ++i) t = mul(t, gu);
    t.scale(Complex(Real(-cm)));
    d.iadd(t);
  }
  for (long k = 2; k <= m - 2; ++k) {
    mpq_class ck = bern_coef(k);
    if (ck == 0) continue;
    PHalf t = svp_half(u, m - k);
    for (long i = 0; i < k - 1; ++i) t = mul(t, gu);
    t = mul(t, dgu);
    t.scale(Complex(Real(-ck)));
    d.iadd(t);
  }
  PHalf L = d.primitive_termwise();
  L.add_to(0, 0, mpfield::svp(m, cusp_limit(u)));
  return L;
}

namespace {
CrossRatioUnit slash_by(const CrossRatioUnit& u, const Mat2& g, Side side) {
  Mat2 m = g;
  if (side == Side::Zero) m = m * units::mat_sigma();
  return units::slash(u, m);
}
UnitExpr slash_by(const UnitExpr& v, const Mat2& g, Side side) {
  Mat2 m = g;
  if (side == Side::Zero) m = m * units::mat_sigma();
  return units::unit_slash(v, m);
}
}  // namespace

PHalf Context::logabs_expansion(const UnitExpr& v, Side side) const {
  return logabs_half(slash_by(v, Mat2{}, side));
}
PHalf Context::dlogabs_expansion(const UnitExpr& v, Side side) const {
  return dlogabs_half(slash_by(v, Mat2{}, side));
}
PHalf Context::darg_expansion(const UnitExpr& v, Side side) const {
  return darg_half(slash_by(v, Mat2{}, side));
}
PHalf Context::bloch_wigner_expansion(const CrossRatioUnit& u, Side side) const {
  return bloch_half(slash_by(u, Mat2{}, side));
}
PHalf Context::svp_expansion(const CrossRatioUnit& u, long m, Side side) const {
  return svp_half(slash_by(u, Mat2{}, side), m);
}

const Context::Bundle& Context::bundle(const CrossRatioUnit& u_slashed, long n) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = bundles_.find({u_slashed.q, n});
    if (it != bundles_.end()) return it->second;
  }
  Bundle b;
  if (n == 3) {
    b.darg_side = bloch_half(u_slashed);
    b.darg_side.scale(Complex(-1L));           // -D(u) d arg v
    b.log_side = alpha_half(u_slashed);
    b.log_side.scale(Complex(Real(mpq_class(-1, 3))));  // -(1/3) alpha(1-u,u) log|v|
  } else {
    if (n < 3 || n > 5) throw std::invalid_argument("rn2_form: 3 <= n <= 5");
    b.darg_side = svp_half(u_slashed, n - 1);
    b.darg_side.scale(Complex::i_unit());  // i Lhat_{n-1}(u) d arg v
    UnitExpr vu = units::cross_ratio_as_units(u_slashed);
    PHalf gu = logabs_half(vu);
    PHalf dgu = dlogabs_half(vu);
    PHalf acc = PHalf::zero(N_, len_, 0);
    mpq_class cm = bern_coef(n - 1);
    if (cm != 0) {
      PHalf t = alpha_half(u_slashed);
      for (long i = 0; i < n - 3; ++i) t = mul(t, gu);
      t.scale(Complex(Real(-cm)));
      acc.iadd(t);
    }
    for (long k = 2; k <= n - 2; ++k) {
      mpq_class ck = bern_coef(k);
      if (ck == 0) continue;
      PHalf t = svp_half(u_slashed, n - k);
      for (long i = 0; i < k - 2; ++i) t = mul(t, gu);
      t = mul(t, dgu);
      t.scale(Complex(Real(-ck)));
      acc.iadd(t);
    }
    b.log_side = acc;
  }
  std::lock_guard<std::mutex> lock(mu_);
  return bundles_.emplace(std::make_pair(u_slashed.q, n), std::move(b)).first->second;
}

ClassPFun Context::assemble(const std::vector<std::pair<mpq_class, CrossRatioUnit>>& terms,
                            const UnitExpr& v, const Mat2& gamma, long n) const {
  ClassPFun f;
  for (int s = 0; s < 2; ++s) {
    Side side = s == 0 ? Side::Infinity : Side::Zero;
    Mat2 g = gamma;
    if (side == Side::Zero) g = g * units::mat_sigma();
    PHalf Bd = PHalf::zero(N_, len_, 0);
    PHalf Bl = PHalf::zero(N_, len_, 0);
    for (const auto& [m, u] : terms) {
      const Bundle& bu = bundle(units::slash(u, g), n);
      Complex mc{Real(m)};
      Bd.iadd(bu.darg_side, mc);
      Bl.iadd(bu.log_side, mc);
    }
    UnitExpr vg = units::unit_slash(v, g);
    PHalf A = mul(Bd, darg_half(vg));
    A.iadd(mul(Bl, logabs_half(vg)));
    if (side == Side::Infinity) {
      f.inf = A;
    } else {
      A.shift_j(2);
      A.scale(Complex(-1L));
      f.zero = A;
    }
  }
  // absolute convergence: no constant rows may survive
  Real worst;
  if (!f.integrable(&worst)) {
    Real tol = pow2(-(mpfield::default_prec() - 48));
    if (worst > tol) throw std::runtime_error("regulator: non-integrable assembled form");
    f.inf.clear_n0();
    for (long j = 1; j <= f.zero.jmax(); ++j)
      if (!f.zero.a[j].empty()) f.zero.a[j][0] = Complex(0L);
  }
  return f;
}

FormOnGeodesic Context::r32_form(const mpq_class& m, const CrossRatioUnit& u, const UnitExpr& v,
                                 const Mat2& gamma) const {
  return rn2_form(m, u, v, gamma, 3);
}

FormOnGeodesic Context::rn2_form(const mpq_class& m, const CrossRatioUnit& u, const UnitExpr& v,
                                 const Mat2& gamma, long n) const {
  FormOnGeodesic F;
  F.weight = n;
  F.gamma = gamma;
  if (v.e.empty()) {
    F.phi.inf = PHalf::zero(N_, len_, 0);
    F.phi.zero = PHalf::zero(N_, len_, 0);
    return F;
  }
  F.phi = assemble({{m, u}}, v, gamma, n);
  return F;
}

Context::IntegralResult Context::integrate_symbol(const wedge::MotivicCocycle& xi,
                                                  const Mat2& gamma, long n) const {
  // group terms by tensor factor so each v costs two products per side
  std::map<std::map<wedge::Key, mpq_class>, std::vector<std::pair<mpq_class, CrossRatioUnit>>> groups;
  for (const auto& t : xi.terms) {
    if (t.v.is_zero() || t.m == 0) continue;
    groups[t.v.e].push_back({t.m, t.u});
  }
  Complex total;
  Real tails(0L);
  for (const auto& [ve, terms] : groups) {
    UnitExpr v;
    v.N = N_;
    v.phase_exact = false;
    v.e = ve;
    ClassPFun f = assemble(terms, v, gamma, n);
    auto mv = classp::mellin_value(f);
    total += mv.value;
    tails += mv.tail_bound;
  }
  IntegralResult r{total.re, abs(total.im), tails};
  return r;
}

Context::IntegralResult Context::integrate_cycle(const wedge::MotivicCocycle& xi, const Cycle& cycle,
                                                 long n) const {
  Complex total;
  Real tails(0L);
  for (const auto& [nj, gj] : cycle) {
    if (nj == 0) continue;
    std::map<std::map<wedge::Key, mpq_class>, std::vector<std::pair<mpq_class, CrossRatioUnit>>> groups;
    for (const auto& t : xi.terms) {
      if (t.v.is_zero() || t.m == 0) continue;
      groups[t.v.e].push_back({t.m, t.u});
    }
    for (const auto& [ve, terms] : groups) {
      UnitExpr v;
      v.N = N_;
      v.phase_exact = false;
      v.e = ve;
      ClassPFun f = assemble(terms, v, gj, n);
      auto mv = classp::mellin_value(f);
      total += mv.value * Real(nj);
      tails += mv.tail_bound;
    }
  }
  Real guard = pow(Real(10L), Real((double)-(digits_ - 5)));
  Real scale = max(Real(1L), abs(total.re));
  if (abs(total.im) > guard * scale)
    throw std::runtime_error("integrate_cycle: imaginary residual above tolerance");
  return IntegralResult{total.re, abs(total.im), tails};
}

}  // namespace modreg::regulator
