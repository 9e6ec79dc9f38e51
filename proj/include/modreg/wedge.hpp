#pragma once

#include "modreg/units.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace modreg::wedge {

using Key = std::pair<long, long>;  // canonical +-class representative
using units::CrossRatioUnit;
using units::Mat2;

// exact exponent vector over +-class keys, modulo constants; g_{0,0} = 1 and
// g_{-x} = g_x are built into the key normalization
struct ExpVector {
  long N = 1;
  std::map<Key, mpq_class> e;
  void add(Key k, const mpq_class& c);
  bool is_zero() const { return e.empty(); }
};

ExpVector expvec_of_unit(const units::UnitExpr& v);
ExpVector expvec_of_cross_ratio(const CrossRatioUnit& u);
// g_b / g_a for a, b in (Z/N)^2
ExpVector expvec_quotient(long N, std::pair<long, long> b, std::pair<long, long> a);

struct Wedge2 {
  long N = 1;
  std::map<std::pair<Key, Key>, mpq_class> t;  // first key < second key
  void add(Key x, Key y, const mpq_class& c);
  void add_all(const Wedge2& o, const mpq_class& scale);
  bool is_zero() const;
};

struct Wedge3 {
  long N = 1;
  std::map<std::array<Key, 3>, mpq_class> t;  // strictly increasing keys
  void add(Key x, Key y, Key z, const mpq_class& c);
  bool is_zero() const;
};

Wedge2 wedge(const ExpVector& a, const ExpVector& b);
Wedge3 wedge3(const ExpVector& a, const ExpVector& b, const ExpVector& c);

// delta(a,b,c,d) = u(a,b,c,d) ^ u(a,c,b,d); zero when the quadruple is not
// distinct
Wedge2 delta2(const CrossRatioUnit& u);

// g_a ^ g_b + g_b ^ g_c + g_c ^ g_a with c = -a-b
Wedge2 psi(long N, std::pair<long, long> a, std::pair<long, long> b);

// phi(x,y,z) = g_{z+x}g_{z-x} ^ g_{y+x}g_{y-x} + g_{y+x}g_{y-x} ^ g_{z+y}g_{z-y}
//            + g_{z+y}g_{z-y} ^ g_{z+x}g_{z-x}
Wedge2 phi(long N, std::pair<long, long> x, std::pair<long, long> y, std::pair<long, long> z);

struct Group {
  long N = 1;
  std::vector<std::pair<long, long>> elems;
  bool contains(std::pair<long, long> x) const;
};
Group group_full(long N);
Group group_gamma1(long N);  // {0} x Z/N

struct TriTerm {
  mpq_class m;
  CrossRatioUnit u;
};

// right-hand side of the triangulation of g_a^g_b + g_b^g_c + g_c^g_a over G;
// the two-parameter correction block is present exactly when |G| is even.
// Terms with non-distinct quadruples are kept out (they denote 0).
std::vector<TriTerm> triangulate(const Group& G, std::pair<long, long> a, std::pair<long, long> b);

struct CocycleTerm {
  mpq_class m;
  CrossRatioUnit u;
  ExpVector v;
};

struct MotivicCocycle {
  long N = 1;
  std::pair<long, long> a, b;
  std::vector<CocycleTerm> terms;
};

MotivicCocycle build_xi(const Group& G, std::pair<long, long> a, std::pair<long, long> b);
void canonicalize(MotivicCocycle& xi);  // merge exactly-equal (u, v) terms

Wedge3 delta3(const MotivicCocycle& xi);

// integer-scaled exact verifier for the triangulation identity:
//   4|G|^2 * (g_a^g_b + g_b^g_c + g_c^g_a) == 4|G| * sum_x delta(0,x,a-x,b+x)
//                                             + [corrections]   (|G| even)
// with a shared cache of the inner delta sums, all in int64 arithmetic.
class TriangulationVerifier {
 public:
  explicit TriangulationVerifier(Group G) : G_(std::move(G)) {}
  bool verify(std::pair<long, long> a, std::pair<long, long> b);

 private:
  using IntWedge = std::unordered_map<uint64_t, long long>;
  Group G_;
  std::map<std::pair<Key, Key>, IntWedge> tcache_;
  const IntWedge& delta_y_sum(std::pair<long, long> u, std::pair<long, long> v);
};

// ---- residues at the cusps of X1(N) ----

struct ResidueTerm {
  mpq_class m;                        // cocycle coefficient
  std::vector<mpq_class> ord;         // order of the tensor factor, per embedding
  std::vector<mpfield::Complex> val;  // u(cusp) under each embedding; kept only
                                      // when the symbol is non-degenerate there
  std::vector<bool> degenerate;       // u(cusp) in {0, 1, oo} at that embedding
};

struct ResidueElement {
  units::Cusp cusp;
  long width = 1;
  std::vector<long> embeddings;  // the units t mod N
  std::vector<ResidueTerm> terms;
};

// residues of the cocycle at the Galois-orbit representatives 1/v,
// 0 <= v <= N/2; requires all tensor factors supported on (0,*) indices
std::vector<ResidueElement> residues(const MotivicCocycle& xi);

// per-embedding values sum_i m_i ord_i D(sigma_t(u_i(cusp))); near-zero
// across all embeddings indicates a trivial residue class
std::vector<mpfield::Real> numeric_bloch_test(const ResidueElement& r);

}  // namespace modreg::wedge
