#pragma once

#include "modreg/classp.hpp"
#include "modreg/units.hpp"
#include "modreg/wedge.hpp"

#include <map>
#include <mutex>

namespace modreg::regulator {

using classp::ClassPFun;
using classp::PHalf;
using mpfield::Complex;
using mpfield::Real;
using units::CrossRatioUnit;
using units::Mat2;
using units::UnitExpr;

enum class Side { Infinity, Zero };

// integer combination of matrices, each denoting the symbol {gamma 0, gamma oo}
using Cycle = std::vector<std::pair<long, Mat2>>;

struct FormOnGeodesic {
  ClassPFun phi;
  long weight = 3;  // the n of r_n(2)
  Mat2 gamma;
};

// Shared expansion state for one (N, digits) run: per-index Siegel log data
// and per-quadruple polylog bundles, reused across matrices and (a,b) pairs.
class Context {
 public:
  Context(long N, long digits);

  long level() const { return N_; }
  long digits() const { return digits_; }
  long len() const { return len_; }

  // class-P halves along tau = iy at the infinity end (Side::Zero slashes by
  // sigma = [[0,-1],[1,0]] first and reads the infinity end of the image)
  PHalf logabs_expansion(const UnitExpr& v, Side side) const;
  PHalf dlogabs_expansion(const UnitExpr& v, Side side) const;
  PHalf darg_expansion(const UnitExpr& v, Side side) const;

  PHalf bloch_wigner_expansion(const CrossRatioUnit& u, Side side) const;
  PHalf svp_expansion(const CrossRatioUnit& u, long m, Side side) const;

  // r_n(2)({u}_{n-1} (x) v) restricted to {0, oo}
  FormOnGeodesic r32_form(const mpq_class& m, const CrossRatioUnit& u, const UnitExpr& v,
                          const Mat2& gamma) const;
  FormOnGeodesic rn2_form(const mpq_class& m, const CrossRatioUnit& u, const UnitExpr& v,
                          const Mat2& gamma, long n) const;

  struct IntegralResult {
    Real value;
    Real imag_residual;
    Real tail_bound;
  };

  IntegralResult integrate_cycle(const wedge::MotivicCocycle& xi, const Cycle& cycle,
                                 long n = 3) const;
  // single integral over {0, oo} of the whole cocycle (identity matrix)
  IntegralResult integrate_symbol(const wedge::MotivicCocycle& xi, const Mat2& gamma,
                                  long n = 3) const;

  // per-quadruple bundle (already slashed): multiply .darg_side by (d arg v)
  // and .log_side by log|v| to assemble r_n(2)
  struct Bundle {
    PHalf darg_side;
    PHalf log_side;
  };
  const Bundle& bundle(const CrossRatioUnit& u_slashed, long n) const;

 private:
  struct LogData {
    mpq_class mu;      // tau-linear part / (2 pi i)
    Complex log_lead;  // log of the leading coefficient
    std::vector<Complex> coef;
  };
  const LogData& log_data(std::pair<long, long> key) const;

  PHalf logabs_half(const UnitExpr& v) const;
  PHalf dlogabs_half(const UnitExpr& v) const;
  PHalf darg_half(const UnitExpr& v) const;
  // -log|1-u| dlog|u| + log|u| dlog|1-u| along iy, constant rows asserted
  // against the tame-symbol cancellation and cleared
  PHalf alpha_half(const CrossRatioUnit& u) const;
  PHalf bloch_half(const CrossRatioUnit& u) const;
  PHalf svp_half(const CrossRatioUnit& u, long m) const;
  Complex cusp_limit(const CrossRatioUnit& u) const;  // value at i*infinity or 0

  ClassPFun assemble(const std::vector<std::pair<mpq_class, CrossRatioUnit>>& terms,
                     const UnitExpr& v, const Mat2& gamma, long n) const;

  long N_;
  long digits_;
  long len_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<long, long>, LogData> logcache_;
  mutable std::map<std::pair<std::array<std::pair<long, long>, 4>, long>, Bundle> bundles_;
};

}  // namespace modreg::regulator
