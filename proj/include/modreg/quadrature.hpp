#pragma once

#include "modreg/bigfloat.hpp"

#include <functional>

namespace modreg::mpfield {

// tanh-sinh quadrature over [a, b]; absolute target tol, refines the step
// until two levels agree. Handles endpoint log singularities.
inline Real tanh_sinh(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const Real& tol, int max_level = 11) {
  Real half(0.5);
  Real cen = (a + b) * half, rad = (b - a) * half;
  Real pihalf = pi() * half;
  Real eps = pow2(-default_prec() + 8);
  auto node_sum = [&](const Real& h, long stride, long start) {
    Real s(0L);
    for (long k = start;; k += stride) {
      Real u = h * Real(k);
      Real sh = sinh(u);
      Real t = tanh(pihalf * sh);
      Real ch = cosh(pihalf * sh);
      Real w = pihalf * cosh(u) / (ch * ch);
      if (w < eps) break;
      if (Real(1L) - abs(t) < eps) break;
      s += w * (f(cen + rad * t) + f(cen - rad * t));
      if (k > 40L << max_level) break;
    }
    return s;
  };
  Real h(1L);
  Real total = pihalf * f(cen) + node_sum(h, 1, 1);
  Real prev = total * h * rad;
  for (int lev = 1; lev <= max_level; ++lev) {
    h = h * half;
    total += node_sum(h, 2, 1);
    Real est = total * h * rad;
    if (abs(est - prev) < tol && lev >= 3) return est;
    prev = est;
  }
  return prev;
}

}  // namespace modreg::mpfield
