#include "modreg/qexp.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>

namespace modreg::qseries {

namespace {
const Complex kZero;

void require_same_level(const QExpansion& a, const QExpansion& b) {
  if (a.level != b.level) throw std::invalid_argument("qexp: level mismatch (rescale first)");
}
}  // namespace

const Complex& QExpansion::coeff(long k) const {
  if (k < val || k >= val + len()) return kZero;
  return c[k - val];
}

void QExpansion::normalize() {
  size_t lead = 0;
  while (lead < c.size() && c[lead].is_zero()) ++lead;
  if (lead == c.size()) {
    c.clear();
    val = order;
    return;
  }
  if (lead > 0) {
    c.erase(c.begin(), c.begin() + lead);
    val += static_cast<long>(lead);
  }
  if (val + len() > order) c.resize(order - val);
}

QExpansion QExpansion::zero(long N, long order) {
  QExpansion s;
  s.level = N;
  s.order = order;
  s.val = order;
  return s;
}

QExpansion QExpansion::constant(long N, const Complex& c0, long order) {
  if (order <= 0) return zero(N, order);
  QExpansion s;
  s.level = N;
  s.order = order;
  s.val = 0;
  s.c.assign(order, Complex());
  s.c[0] = c0;
  return s;
}

QExpansion QExpansion::monomial(long N, long k, const Complex& c0, long order) {
  QExpansion s;
  s.level = N;
  s.order = order;
  s.val = k;
  if (k < order) {
    s.c.assign(order - k, Complex());
    s.c[0] = c0;
  } else {
    s.val = order;
  }
  return s;
}

void QExpansion::mul_binomial(long k, const Complex& c0) {
  using mpfield::addmul;
  long n = len();
  for (long i = n - 1; i >= 0; --i) {
    if (i + k < n) addmul(c[i + k], c0, c[i]);
  }
}

void QExpansion::fold_mu() {
  mpq_class scaled = mu * level;
  scaled.canonicalize();
  if (scaled.get_den() == 1) {
    long shift = static_cast<long>(scaled.get_num().get_si());
    val += shift;
    order += shift;
    mu = 0;
  }
}

QExpansion add(const QExpansion& a, const QExpansion& b) {
  require_same_level(a, b);
  if (a.mu != b.mu && !a.is_zero() && !b.is_zero())
    throw std::invalid_argument("qexp add: mismatched q^mu prefactors");
  if (a.is_zero()) { QExpansion r = b; r.order = std::min(a.order, b.order); r.normalize(); return r; }
  if (b.is_zero()) { QExpansion r = a; r.order = std::min(a.order, b.order); r.normalize(); return r; }
  QExpansion r;
  r.level = a.level;
  r.mu = a.mu;
  r.order = std::min(a.order, b.order);
  r.val = std::min(a.val, b.val);
  if (r.val >= r.order) { r.val = r.order; return r; }
  r.c.assign(r.order - r.val, Complex());
  for (long k = a.val; k < std::min(a.val + a.len(), r.order); ++k) r.c[k - r.val] = a.coeff(k);
  for (long k = b.val; k < std::min(b.val + b.len(), r.order); ++k) r.c[k - r.val] += b.coeff(k);
  r.normalize();
  return r;
}

QExpansion sub(const QExpansion& a, const QExpansion& b) {
  QExpansion nb = b;
  for (auto& x : nb.c) x = -x;
  return add(a, nb);
}

QExpansion scale(const QExpansion& a, const Complex& s) {
  QExpansion r = a;
  for (auto& x : r.c) x *= s;
  r.normalize();
  return r;
}

QExpansion mul(const QExpansion& a, const QExpansion& b) {
  using mpfield::addmul;
  require_same_level(a, b);
  QExpansion r;
  r.level = a.level;
  r.mu = a.mu + b.mu;
  r.mu.canonicalize();
  if (a.is_zero() || b.is_zero()) {
    r.order = std::min(a.order + b.val, b.order + a.val);
    r.val = r.order;
    return r;
  }
  r.val = a.val + b.val;
  r.order = std::min(a.order + b.val, b.order + a.val);
  long n = r.order - r.val;
  if (n <= 0) { r.val = r.order; return r; }
  r.c.assign(n, Complex());
  long la = std::min<long>(a.len(), n);
  for (long i = 0; i < la; ++i) {
    if (a.c[i].is_zero()) continue;
    long jmax = std::min<long>(b.len(), n - i);
    for (long j = 0; j < jmax; ++j) addmul(r.c[i + j], a.c[i], b.c[j]);
  }
  r.normalize();
  return r;
}

QExpansion div(const QExpansion& a, const QExpansion& b) {
  using mpfield::submul;
  require_same_level(a, b);
  if (b.is_zero()) throw std::invalid_argument("qexp div: division by zero series");
  if (a.is_zero()) {
    QExpansion r;
    r.level = a.level;
    r.mu = a.mu - b.mu;
    r.mu.canonicalize();
    r.order = std::min(a.order, b.order) - b.val;
    r.val = r.order;
    return r;
  }
  long n = std::min(a.len(), b.len());
  n = std::min<long>(n, std::min(a.order - a.val, b.order - b.val));
  QExpansion r;
  r.level = a.level;
  r.mu = a.mu - b.mu;
  r.mu.canonicalize();
  r.val = a.val - b.val;
  r.order = r.val + n;
  r.c.assign(n, Complex());
  // long division against the unit-leading part of b
  std::vector<Complex> rem(a.c.begin(), a.c.begin() + n);
  const Complex& lead = b.c[0];
  for (long i = 0; i < n; ++i) {
    Complex q = rem[i] / lead;
    r.c[i] = q;
    if (q.is_zero()) continue;
    long jmax = std::min<long>(b.len(), n - i);
    for (long j = 1; j < jmax; ++j) submul(rem[i + j], q, b.c[j]);
  }
  r.normalize();
  return r;
}

QExpansion pow_rational(const QExpansion& a, const mpq_class& e) {
  using mpfield::addmul;
  if (a.is_zero()) {
    if (e > 0) return a;
    throw std::invalid_argument("qexp pow: zero series to non-positive power");
  }
  long n = a.len();
  // a = c0 q^{mu + val/N} (1 + t); (1+t)^e via the ODE (1+t) u' = e t' u
  Real er(e);
  QExpansion r;
  r.level = a.level;
  r.mu = (a.mu + mpq_class(a.val, a.level)) * e;
  r.mu.canonicalize();
  r.val = 0;
  r.order = a.order - a.val;
  Complex c0 = a.c[0];
  std::vector<Complex> t(n);  // t_k = a_k / c0, t_0 = 1
  for (long k = 0; k < n; ++k) t[k] = a.c[k] / c0;
  std::vector<Complex> u(n);
  u[0] = Complex(1L);
  for (long k = 1; k < n; ++k) {
    // k u_k = sum_{j=1}^{k} j t_j u_{k-j} * e - sum_{j=1}^{k-1} j u_j t_{k-j}
    Complex s;
    for (long j = 1; j <= k; ++j) {
      Complex tj = t[j];
      tj *= j;
      tj *= er;
      addmul(s, tj, u[k - j]);
    }
    for (long j = 1; j < k; ++j) {
      Complex uj = u[j];
      uj *= j;
      mpfield::submul(s, uj, t[k - j]);
    }
    s /= k;
    u[k] = s;
  }
  // principal-branch power of the leading coefficient
  Complex lead = mpfield::exp(mpfield::log(c0) * Real(e));
  r.c.resize(n);
  for (long k = 0; k < n; ++k) r.c[k] = u[k] * lead;
  QExpansion out = r;
  out.fold_mu();
  out.normalize();
  return out;
}

LogSeries log_series(const QExpansion& a) {
  using mpfield::submul;
  if (a.is_zero()) throw std::invalid_argument("log_series: zero series");
  LogSeries L;
  L.level = a.level;
  L.lin_tau = a.mu + mpq_class(a.val, a.level);
  L.lin_tau.canonicalize();
  L.log_lead = mpfield::log(a.c[0]);
  long n = a.len();
  // log(1 + t) with t = a/lead - 1: integrate t'/(1+t)
  std::vector<Complex> t(n);
  for (long k = 0; k < n; ++k) t[k] = a.c[k] / a.c[0];
  // w = t' / (1+t), with ' = d/d(q^{1/N}) up to the k-weighting below
  std::vector<Complex> w(n);
  for (long k = 1; k < n; ++k) {
    Complex s = t[k];
    s *= k;
    for (long j = 1; j < k; ++j) submul(s, w[j], t[k - j]);
    w[k] = s;
  }
  QExpansion tail;
  tail.level = a.level;
  tail.val = 1;
  tail.order = a.order - a.val;
  if (tail.order <= 1) { tail.val = tail.order; return L; }
  tail.c.assign(tail.order - 1, Complex());
  for (long k = 1; k < std::min<long>(n, tail.order); ++k) {
    tail.c[k - 1] = w[k];
    tail.c[k - 1] /= k;
  }
  tail.normalize();
  L.tail = std::move(tail);
  return L;
}

QExpansion exp_series(const QExpansion& t) {
  using mpfield::addmul;
  if (!t.is_zero() && (t.val < 1 || t.mu != 0))
    throw std::invalid_argument("exp_series: need zero constant term and mu = 0");
  long order = t.order;
  QExpansion r;
  r.level = t.level;
  r.val = 0;
  r.order = order;
  r.c.assign(order, Complex());
  r.c[0] = Complex(1L);
  for (long k = 1; k < order; ++k) {
    Complex s;
    for (long j = 1; j <= k; ++j) {
      Complex tj = t.coeff(j);
      if (tj.is_zero()) continue;
      tj *= j;
      addmul(s, tj, r.c[k - j]);
    }
    s /= k;
    r.c[k] = s;
  }
  return r;
}

EvalResult eval_at(const QExpansion& a, const Complex& tau) {
  using mpfield::exp;
  using mpfield::two_pi;
  if (!(tau.im.sign() > 0)) throw std::invalid_argument("eval_at: Im tau must be > 0");
  Complex i2pi(Real(0L), two_pi());
  Complex w = exp(i2pi * tau * Real(mpq_class(1, a.level)));
  Real aw = abs(w);
  EvalResult res;
  if (a.is_zero()) {
    res.value = Complex(0L);
    res.tail_bound = pow(aw, Real(static_cast<long>(a.order)));
    return res;
  }
  Complex acc;
  for (long i = a.len() - 1; i >= 0; --i) {
    acc *= w;
    acc += a.c[i];
  }
  // q^{val/N + mu}
  mpq_class texp = a.mu + mpq_class(a.val, a.level);
  Complex pre = exp(i2pi * tau * Real(texp));
  acc *= pre;
  res.value = acc;
  // envelope of the top decade of coefficients
  Real env(0L);
  long lo = std::max<long>(0, a.len() - std::max<long>(8, a.len() / 10));
  for (long i = lo; i < a.len(); ++i) env = mpfield::max(env, abs(a.c[i]));
  if (env.is_zero()) env = Real(1L);
  Real tail = env * pow(aw, Real(a.order)) / (Real(1L) - aw);
  tail *= abs(pre);
  res.tail_bound = tail;
  return res;
}

// ---------------- cache ----------------

namespace {
std::string sanitize(const std::string& s) {
  std::string out;
  for (char ch : s) out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') ? ch : '_';
  return out;
}
const char* cache_root() { return std::getenv("MODREG_CACHE_DIR"); }
}  // namespace

bool cache_enabled() { return cache_root() != nullptr; }

static std::string cache_path(const std::string& descriptor, long N, long order, long prec) {
  return std::string(cache_root()) + "/" + sanitize(descriptor) + "_N" + std::to_string(N) + "_K" +
         std::to_string(order) + "_P" + std::to_string(prec) + ".qx";
}

void cache_store(const std::string& descriptor, const QExpansion& s, long prec) {
  if (!cache_enabled()) return;
  std::filesystem::create_directories(cache_root());
  std::string path = cache_path(descriptor, s.level, s.order, prec);
  FILE* f = std::fopen((path + ".tmp").c_str(), "wb");
  if (!f) return;
  long header[5] = {0x71784d31, s.level, s.val, s.order, s.len()};
  std::fwrite(header, sizeof(long), 5, f);
  std::string mus = s.mu.get_str();
  long mlen = static_cast<long>(mus.size());
  std::fwrite(&mlen, sizeof(long), 1, f);
  std::fwrite(mus.data(), 1, mus.size(), f);
  for (const auto& z : s.c) {
    mpfr_fpif_export(f, const_cast<mpfr_ptr>(static_cast<mpfr_srcptr>(z.re.v)));
    mpfr_fpif_export(f, const_cast<mpfr_ptr>(static_cast<mpfr_srcptr>(z.im.v)));
  }
  std::fclose(f);
  std::filesystem::rename(path + ".tmp", path);
}

std::optional<QExpansion> cache_load(const std::string& descriptor, long N, long order, long prec) {
  if (!cache_enabled()) return std::nullopt;
  std::string path = cache_path(descriptor, N, order, prec);
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return std::nullopt;
  long header[5];
  if (std::fread(header, sizeof(long), 5, f) != 5 || header[0] != 0x71784d31) { std::fclose(f); return std::nullopt; }
  QExpansion s;
  s.level = header[1];
  s.val = header[2];
  s.order = header[3];
  long n = header[4];
  long mlen = 0;
  if (std::fread(&mlen, sizeof(long), 1, f) != 1 || mlen < 0 || mlen > 1 << 20) { std::fclose(f); return std::nullopt; }
  std::string mus(mlen, '\0');
  if (mlen && std::fread(mus.data(), 1, mlen, f) != static_cast<size_t>(mlen)) { std::fclose(f); return std::nullopt; }
  if (mlen) s.mu = mpq_class(mus);
  s.c.resize(n);
  for (long i = 0; i < n; ++i) {
    if (mpfr_fpif_import(s.c[i].re.v, f) != 0 || mpfr_fpif_import(s.c[i].im.v, f) != 0) {
      std::fclose(f);
      return std::nullopt;
    }
  }
  std::fclose(f);
  return s;
}

}  // namespace modreg::qseries
