#pragma once

#include "modreg/bigfloat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modreg::qseries {

using mpfield::Complex;
using mpfield::Real;

// Truncated Puiseux series in q^{1/N}: an optional prefactor q^mu with
// rational mu (not necessarily in (1/N)Z), then a dense coefficient run
// c[i] <-> q^{(val+i)/N}. Coefficients are valid for exponents < order
// (in 1/N units); arithmetic propagates the truncation.
struct QExpansion {
  long level = 1;
  long val = 0;
  long order = 0;
  mpq_class mu = 0;
  std::vector<Complex> c;

  bool is_zero() const { return c.empty(); }
  long len() const { return static_cast<long>(c.size()); }

  // coefficient of q^{(k/N)} * q^mu; k outside the stored window is 0
  const Complex& coeff(long k) const;

  void normalize();  // strip exact-zero leading coefficients, clamp to order

  static QExpansion zero(long N, long order);
  static QExpansion constant(long N, const Complex& c0, long order);
  static QExpansion monomial(long N, long k, const Complex& c0, long order);

  // in-place multiply by (1 + c0 q^{k/N}), k >= 1
  void mul_binomial(long k, const Complex& c0);

  // fold mu into the valuation when mu is an exact multiple of 1/N
  void fold_mu();
};

QExpansion add(const QExpansion& a, const QExpansion& b);
QExpansion sub(const QExpansion& a, const QExpansion& b);
QExpansion mul(const QExpansion& a, const QExpansion& b);
QExpansion div(const QExpansion& a, const QExpansion& b);
QExpansion scale(const QExpansion& a, const Complex& s);

// a^e for rational e; the leading coefficient's root is taken on the
// principal branch. mu and the valuation are scaled by e.
QExpansion pow_rational(const QExpansion& a, const mpq_class& e);

// log a = 2 pi i * lin_tau * tau + log_lead + tail(q^{1/N}), tail has zero
// constant term. The tau-linear part stays symbolic (it becomes the
// y-polynomial part of the asymptotic expansions along tau = iy).
struct LogSeries {
  long level = 1;
  mpq_class lin_tau = 0;   // coefficient of tau in log / (2 pi i)
  Complex log_lead;        // log of the leading coefficient, principal
  QExpansion tail;         // val >= 1, mu = 0
};

LogSeries log_series(const QExpansion& a);

// exp of a series with zero constant term (and mu = 0, val >= 1)
QExpansion exp_series(const QExpansion& t);

struct EvalResult {
  Complex value;
  Real tail_bound;
};

// numerical value sum c_k e^{2 pi i k tau / N} * e^{2 pi i mu tau};
// tail_bound estimates the truncation remainder from the top-decade
// coefficient envelope.
EvalResult eval_at(const QExpansion& a, const Complex& tau);

// ---- binary expansion cache (optimization only) ----
// enabled when MODREG_CACHE_DIR is set; results must be identical either way
bool cache_enabled();
std::optional<QExpansion> cache_load(const std::string& descriptor, long N, long order, long prec);
void cache_store(const std::string& descriptor, const QExpansion& s, long prec);

}  // namespace modreg::qseries
