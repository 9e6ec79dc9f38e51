#pragma once

// Test-side oracles, independent of the library's main computation paths:
// double-exponential quadrature and deterministic random value generators.

#include "modreg/bigfloat.hpp"

#include <functional>
#include <random>

namespace oracles {

using modreg::mpfield::Complex;
using modreg::mpfield::Real;

// tanh-sinh quadrature of f over [a, b]; handles endpoint log singularities.
// tol is an absolute target; refines the step until two levels agree.
inline Real tanh_sinh(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const Real& tol, int max_level = 11) {
  using namespace modreg::mpfield;
  Real half = Real(0.5);
  Real cen = (a + b) * half, rad = (b - a) * half;
  Real pihalf = pi() * half;
  Real eps = pow2(-default_prec() + 8);

  auto node_sum = [&](const Real& h, long stride, long start) {
    // sum over k = start, start+stride, ... of both +-k nodes
    Real s(0L);
    for (long k = start;; k += stride) {
      Real u = h * Real(k);
      Real sh = sinh(u);
      Real t = tanh(pihalf * sh);
      Real ch = cosh(pihalf * sh);
      Real w = pihalf * cosh(u) / (ch * ch);
      if (w < eps) break;
      Real onemt = Real(1L) - abs(t);
      if (onemt < eps) break;
      Real x1 = cen + rad * t;
      Real x2 = cen - rad * t;
      s += w * (f(x1) + f(x2));
      if (k > 40L << max_level) break;
    }
    return s;
  };

  Real h(1L);
  Real piw = pihalf;  // weight at u = 0: pi/2 / cosh(0)^2
  Real total = piw * f(cen) + node_sum(h, 1, 1);
  Real prev_est = total * h * rad;
  for (int lev = 1; lev <= max_level; ++lev) {
    h = h * half;
    total += node_sum(h, 2, 1);
    Real est = total * h * rad;
    if (abs(est - prev_est) < tol && lev >= 3) return est;
    prev_est = est;
  }
  return prev_est;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(gen);
  }
  long integer(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(gen);
  }
  Real real(double lo, double hi) { return Real(uniform(lo, hi)); }
  Complex complex_box(double lo, double hi) { return Complex(real(lo, hi), real(lo, hi)); }
};

}  // namespace oracles
