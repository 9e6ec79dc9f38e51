// timing probe for the series-arithmetic hot spot: dense multiplication vs
// binomial accumulation at the truncation lengths the acceptance runs use

#include "modreg/units.hpp"

#include <chrono>
#include <cstdio>
#include <random>

using namespace modreg;
using mpfield::Complex;
using mpfield::Real;

int main() {
  std::mt19937_64 rng(7);
  auto now = [] { return std::chrono::steady_clock::now(); };
  for (long K : {200L, 400L, 800L}) {
    long N = 11;
    qseries::QExpansion a = qseries::QExpansion::constant(N, Complex(1L), K);
    qseries::QExpansion b = a;
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (long i = 0; i < K; ++i) {
      a.c[i] = Complex(Real(d(rng)), Real(d(rng)));
      b.c[i] = Complex(Real(d(rng)), Real(d(rng)));
    }
    auto t0 = now();
    auto p = qseries::mul(a, b);
    auto t1 = now();
    auto q = qseries::div(a, b);
    auto t2 = now();
    units::CrossRatioUnit u = units::make_cross_ratio(
        N, {std::pair<long, long>{0, 1}, {0, 2}, {0, 3}, {1, 0}});
    auto e = units::cross_ratio_expansion(u, K);
    auto t3 = now();
    auto ms = [](auto d) { return std::chrono::duration<double, std::milli>(d).count(); };
    std::printf("K=%4ld  mul %8.2f ms   div %8.2f ms   cross-ratio(8 factors+div) %8.2f ms\n", K,
                ms(t1 - t0), ms(t2 - t1), ms(t3 - t2));
    (void)p;
    (void)q;
    (void)e;
  }
  return 0;
}
