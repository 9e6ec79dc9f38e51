#pragma once

#include "modreg/lfunc.hpp"
#include "modreg/linalg.hpp"
#include "modreg/units.hpp"

#include <map>
#include <string>
#include <vector>

namespace modreg::modsym {

using linalg::QMat;
using linalg::QVec;
using units::Cusp;
using units::Mat2;

// integer combination of matrices, each denoting the symbol {gamma 0, gamma oo}
using Cycle = std::vector<std::pair<long, Mat2>>;

// Manin symbols (c, d) for Gamma_1(N) modulo +-, with the sigma/tau relations
// quotient, boundary and star maps, and the cuspidal plus-subspace.
class SymbolSpace {
 public:
  explicit SymbolSpace(long N);

  long level() const { return N_; }
  long dim() const { return dim_; }
  const std::vector<std::pair<long, long>>& generators() const { return gens_; }
  long genus() const;

  // class of the Manin symbol with bottom row (c, d)
  QVec symbol_class(long c, long d) const;
  // class of the modular symbol {alpha, beta}; rationals as (num, den),
  // infinity = (1, 0)
  QVec path_class(std::pair<long, long> alpha, std::pair<long, long> beta) const;

  const QMat& boundary() const { return boundary_; }       // cusps x dim
  const QMat& star() const { return star_; }               // dim x dim
  const QMat& cuspidal_plus() const { return cusp_plus_; } // rows: basis vectors
  long cuspidal_plus_dim() const { return cusp_plus_.size(); }

  // matrix of T_p (or U_p for p | N) on the cuspidal plus-subspace,
  // in the cuspidal_plus() row basis
  QMat hecke(long p) const;
  // diamond operator <t> on the full quotient
  QVec diamond_class(long t, long genidx) const;

  // unimodular lift with bottom row congruent to the generator
  Mat2 generator_lift(long idx) const;

  // integral eigencycle for the isogeny class E (conductor N); the
  // eigenspace must be one-dimensional
  Cycle eigencycle(const lfunc::EllipticCurveQ& E) const;

  // express a vector in V as an integer combination of Manin generators and
  // return the corresponding matrices
  Cycle to_cycle(const QVec& v) const;

 private:
  long N_;
  std::vector<std::pair<long, long>> gens_;
  std::map<std::pair<long, long>, long> index_;
  QMat gen2basis_;  // per generator: coordinates in the quotient
  std::vector<long> basis_gens_;
  long dim_ = 0;
  std::vector<Cusp> cusps_;
  QMat boundary_;
  QMat star_;
  QMat cusp_plus_;

  long canonical_index(long c, long d) const;
  QVec hecke_image(long genidx, long p) const;  // on the full quotient
};

// parse a cycle file: lines "n a b c d", or a Magma-style combination of
// {p/q, r/s} symbols (converted through continued fractions when a pair is
// not unimodular)
Cycle import_cycle_text(const std::string& text);
Cycle import_cycle_file(const std::string& path);

// continued-fraction conversion of {0, p/q} into unimodular symbols
std::vector<Mat2> manin_path_matrices(std::pair<long, long> beta);

}  // namespace modreg::modsym
