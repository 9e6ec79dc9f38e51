#include "modreg/wedge.hpp"
#include "modreg/special.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modreg::wedge {

namespace {
long mod(long x, long N) {
  long r = x % N;
  return r < 0 ? r + N : r;
}
long inverse_mod(long t, long N) {
  for (long s = 1; s < N; ++s)
    if (mod(s * t, N) == 1) return s;
  throw std::invalid_argument("inverse_mod: not a unit");
}
}  // namespace

void ExpVector::add(Key k, const mpq_class& c) {
  if (k == Key{0, 0} || c == 0) return;
  auto it = e.find(k);
  if (it == e.end()) {
    e.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second == 0) e.erase(it);
}

ExpVector expvec_of_unit(const units::UnitExpr& v) {
  ExpVector out;
  out.N = v.N;
  for (const auto& [k, c] : v.e) out.add(k, c);
  return out;
}

ExpVector expvec_of_cross_ratio(const CrossRatioUnit& u) {
  ExpVector out;
  out.N = u.N;
  if (!units::is_distinct(u)) throw std::invalid_argument("expvec_of_cross_ratio: not distinct");
  auto [a, b, c, d] = u.q;
  auto put = [&](std::pair<long, long> x, std::pair<long, long> y, int sgn) {
    out.add(units::canonical_pm(u.N, x.first + y.first, x.second + y.second), sgn);
    out.add(units::canonical_pm(u.N, x.first - y.first, x.second - y.second), sgn);
  };
  put(c, a, +1);
  put(d, b, +1);
  put(c, b, -1);
  put(d, a, -1);
  return out;
}

ExpVector expvec_quotient(long N, std::pair<long, long> b, std::pair<long, long> a) {
  ExpVector out;
  out.N = N;
  out.add(units::canonical_pm(N, b.first, b.second), 1);
  out.add(units::canonical_pm(N, a.first, a.second), -1);
  return out;
}

void Wedge2::add(Key x, Key y, const mpq_class& c) {
  if (x == y || c == 0) return;
  mpq_class cc = c;
  if (y < x) {
    std::swap(x, y);
    cc = -cc;
  }
  auto key = std::make_pair(x, y);
  auto it = t.find(key);
  if (it == t.end()) {
    t.emplace(key, cc);
    return;
  }
  it->second += cc;
  if (it->second == 0) t.erase(it);
}

void Wedge2::add_all(const Wedge2& o, const mpq_class& scale) {
  for (const auto& [k, c] : o.t) add(k.first, k.second, c * scale);
}

bool Wedge2::is_zero() const { return t.empty(); }

void Wedge3::add(Key x, Key y, Key z, const mpq_class& c) {
  if (c == 0 || x == y || y == z || x == z) return;
  std::array<Key, 3> k{x, y, z};
  int sign = 1;
  // sort the three keys, tracking the permutation sign
  if (k[1] < k[0]) { std::swap(k[0], k[1]); sign = -sign; }
  if (k[2] < k[1]) { std::swap(k[1], k[2]); sign = -sign; }
  if (k[1] < k[0]) { std::swap(k[0], k[1]); sign = -sign; }
  mpq_class cc = sign > 0 ? c : mpq_class(-c);
  auto it = t.find(k);
  if (it == t.end()) {
    t.emplace(k, cc);
    return;
  }
  it->second += cc;
  if (it->second == 0) t.erase(it);
}

bool Wedge3::is_zero() const { return t.empty(); }

Wedge2 wedge(const ExpVector& a, const ExpVector& b) {
  Wedge2 w;
  w.N = a.N;
  for (const auto& [kx, cx] : a.e)
    for (const auto& [ky, cy] : b.e) w.add(kx, ky, cx * cy);
  return w;
}

Wedge3 wedge3(const ExpVector& a, const ExpVector& b, const ExpVector& c) {
  Wedge3 w;
  w.N = a.N;
  for (const auto& [kx, cx] : a.e)
    for (const auto& [ky, cy] : b.e) {
      mpq_class cxy = cx * cy;
      for (const auto& [kz, cz] : c.e) w.add(kx, ky, kz, cxy * cz);
    }
  return w;
}

Wedge2 delta2(const CrossRatioUnit& u) {
  Wedge2 w;
  w.N = u.N;
  if (!units::is_distinct(u)) return w;
  return wedge(expvec_of_cross_ratio(u), expvec_of_cross_ratio(units::complementary(u)));
}

Wedge2 psi(long N, std::pair<long, long> a, std::pair<long, long> b) {
  std::pair<long, long> c{mod(-a.first - b.first, N), mod(-a.second - b.second, N)};
  auto single = [&](std::pair<long, long> x) {
    ExpVector v;
    v.N = N;
    v.add(units::canonical_pm(N, x.first, x.second), 1);
    return v;
  };
  Wedge2 w = wedge(single(a), single(b));
  w.add_all(wedge(single(b), single(c)), 1);
  w.add_all(wedge(single(c), single(a)), 1);
  return w;
}

Wedge2 phi(long N, std::pair<long, long> x, std::pair<long, long> y, std::pair<long, long> z) {
  auto pairvec = [&](std::pair<long, long> u, std::pair<long, long> v) {
    ExpVector w;
    w.N = N;
    w.add(units::canonical_pm(N, u.first + v.first, u.second + v.second), 1);
    w.add(units::canonical_pm(N, u.first - v.first, u.second - v.second), 1);
    return w;
  };
  ExpVector p1 = pairvec(z, x), p2 = pairvec(y, x), p3 = pairvec(z, y);
  Wedge2 w = wedge(p1, p2);
  w.add_all(wedge(p2, p3), 1);
  w.add_all(wedge(p3, p1), 1);
  return w;
}

bool Group::contains(std::pair<long, long> x) const {
  auto xx = std::make_pair(mod(x.first, N), mod(x.second, N));
  return std::find(elems.begin(), elems.end(), xx) != elems.end();
}

Group group_full(long N) {
  Group g;
  g.N = N;
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) g.elems.emplace_back(i, j);
  return g;
}

Group group_gamma1(long N) {
  Group g;
  g.N = N;
  for (long j = 0; j < N; ++j) g.elems.emplace_back(0, j);
  return g;
}

std::vector<TriTerm> triangulate(const Group& G, std::pair<long, long> a, std::pair<long, long> b) {
  long N = G.N;
  if (!G.contains(a) || !G.contains(b)) throw std::invalid_argument("triangulate: a, b must lie in G");
  long n = static_cast<long>(G.elems.size());
  std::vector<TriTerm> out;
  auto quad = [&](std::pair<long, long> p, std::pair<long, long> q, std::pair<long, long> r,
                  std::pair<long, long> s) {
    return units::make_cross_ratio(N, {p, q, r, s});
  };
  mpq_class m1(1, n);
  for (auto x : G.elems) {
    CrossRatioUnit u = quad({0, 0}, x, {a.first - x.first, a.second - x.second},
                            {b.first + x.first, b.second + x.second});
    if (units::is_distinct(u)) out.push_back({m1, u});
  }
  if (n % 2 == 0) {
    mpq_class m2(1, 4 * n * n);
    std::pair<long, long> ab{a.first + b.first, a.second + b.second};
    for (auto x : G.elems) {
      std::pair<long, long> b2x{b.first + 2 * x.first, b.second + 2 * x.second};
      std::pair<long, long> a2x{a.first + 2 * x.first, a.second + 2 * x.second};
      for (auto y : G.elems) {
        CrossRatioUnit u1 = quad({0, 0}, a, b2x, y);
        if (units::is_distinct(u1)) out.push_back({m2, u1});
        CrossRatioUnit u2 = quad({0, 0}, b, a2x, y);
        if (units::is_distinct(u2)) out.push_back({-m2, u2});
        CrossRatioUnit u3 = quad({0, 0}, ab, b2x, y);
        if (units::is_distinct(u3)) out.push_back({-m2, u3});
      }
    }
  }
  return out;
}

MotivicCocycle build_xi(const Group& G, std::pair<long, long> a, std::pair<long, long> b) {
  MotivicCocycle xi;
  xi.N = G.N;
  xi.a = {mod(a.first, G.N), mod(a.second, G.N)};
  xi.b = {mod(b.first, G.N), mod(b.second, G.N)};
  ExpVector v = expvec_quotient(G.N, b, a);
  for (auto& t : triangulate(G, a, b)) xi.terms.push_back({t.m, t.u, v});
  canonicalize(xi);
  return xi;
}

void canonicalize(MotivicCocycle& xi) {
  std::map<std::pair<std::array<std::pair<long, long>, 4>, std::map<Key, mpq_class>>, mpq_class> acc;
  for (auto& t : xi.terms) acc[{t.u.q, t.v.e}] += t.m;
  std::vector<CocycleTerm> out;
  for (auto& [k, m] : acc) {
    if (m == 0) continue;
    CocycleTerm t;
    t.m = m;
    t.u.N = xi.N;
    t.u.q = k.first;
    t.v.N = xi.N;
    t.v.e = k.second;
    out.push_back(std::move(t));
  }
  xi.terms = std::move(out);
}

Wedge3 delta3(const MotivicCocycle& xi) {
  Wedge3 w;
  w.N = xi.N;
  for (const auto& t : xi.terms) {
    if (t.v.is_zero()) continue;
    ExpVector U = expvec_of_cross_ratio(t.u);
    ExpVector C = expvec_of_cross_ratio(units::complementary(t.u));
    for (const auto& [kx, cx] : U.e)
      for (const auto& [ky, cy] : C.e) {
        mpq_class cxy = t.m * cx * cy;
        for (const auto& [kz, cz] : t.v.e) w.add(kx, ky, kz, cxy * cz);
      }
  }
  return w;
}

// ---------------- integer-scaled triangulation verifier ----------------

namespace {

uint64_t pack_key(long N, Key k) { return static_cast<uint64_t>(k.first * N + k.second); }

// expvec of a cross ratio as a small sorted (packed key, coeff) list
void small_expvec(const CrossRatioUnit& u, std::vector<std::pair<uint64_t, long>>& out) {
  out.clear();
  ExpVector v = expvec_of_cross_ratio(u);
  for (const auto& [k, c] : v.e) out.emplace_back(pack_key(u.N, k), static_cast<long>(c.get_num().get_si()));
}

void accumulate_delta(const CrossRatioUnit& u, long long scale,
                      std::unordered_map<uint64_t, long long>& acc) {
  if (!units::is_distinct(u)) return;
  static thread_local std::vector<std::pair<uint64_t, long>> va, vb;
  small_expvec(u, va);
  small_expvec(units::complementary(u), vb);
  for (auto [ka, ca] : va)
    for (auto [kb, cb] : vb) {
      if (ka == kb) continue;
      uint64_t k1 = ka, k2 = kb;
      long long c = scale * ca * cb;
      if (k2 < k1) {
        std::swap(k1, k2);
        c = -c;
      }
      auto [it, fresh] = acc.emplace((k1 << 32) | k2, c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) acc.erase(it);
      }
    }
}

}  // namespace

const TriangulationVerifier::IntWedge& TriangulationVerifier::delta_y_sum(std::pair<long, long> u,
                                                                          std::pair<long, long> v) {
  long N = G_.N;
  auto key = std::make_pair(std::make_pair(mod(u.first, N), mod(u.second, N)),
                            std::make_pair(mod(v.first, N), mod(v.second, N)));
  auto it = tcache_.find(key);
  if (it != tcache_.end()) return it->second;
  IntWedge acc;
  for (auto y : G_.elems)
    accumulate_delta(units::make_cross_ratio(N, {std::pair<long, long>{0, 0}, key.first, key.second, y}),
                     1, acc);
  return tcache_.emplace(key, std::move(acc)).first->second;
}

bool TriangulationVerifier::verify(std::pair<long, long> a, std::pair<long, long> b) {
  long N = G_.N;
  long long n = static_cast<long long>(G_.elems.size());
  IntWedge acc;
  // 4|G| * sum_x delta(0, x, a-x, b+x)
  for (auto x : G_.elems)
    accumulate_delta(units::make_cross_ratio(
                         N, {std::pair<long, long>{0, 0}, x,
                             {a.first - x.first, a.second - x.second},
                             {b.first + x.first, b.second + x.second}}),
                     4 * n, acc);
  if (n % 2 == 0) {
    std::pair<long, long> ab{a.first + b.first, a.second + b.second};
    auto addT = [&](std::pair<long, long> u, std::pair<long, long> v, long long s) {
      for (const auto& [k, c] : delta_y_sum(u, v)) {
        long long cc = s * c;
        auto [it, fresh] = acc.emplace(k, cc);
        if (!fresh) {
          it->second += cc;
          if (it->second == 0) acc.erase(it);
        }
      }
    };
    for (auto x : G_.elems) {
      std::pair<long, long> b2x{b.first + 2 * x.first, b.second + 2 * x.second};
      std::pair<long, long> a2x{a.first + 2 * x.first, a.second + 2 * x.second};
      addT(a, b2x, +1);
      addT(b, a2x, -1);
      addT(ab, b2x, -1);
    }
  }
  // subtract 4|G|^2 * psi(a, b)
  Wedge2 target = psi(N, {mod(a.first, N), mod(a.second, N)}, {mod(b.first, N), mod(b.second, N)});
  for (const auto& [k, c] : target.t) {
    long long cc = -4 * n * n * c.get_num().get_si();
    uint64_t packed = (pack_key(N, k.first) << 32) | pack_key(N, k.second);
    auto [it, fresh] = acc.emplace(packed, cc);
    if (!fresh) {
      it->second += cc;
      if (it->second == 0) acc.erase(it);
    }
  }
  return acc.empty();
}

// ---------------- residues ----------------

std::vector<ResidueElement> residues(const MotivicCocycle& xi) {
  long N = xi.N;
  std::vector<long> ts;
  for (long t = 1; t < N; ++t)
    if (std::gcd(t, N) == 1) ts.push_back(t);
  std::vector<ResidueElement> out;
  for (long w = 0; w <= N / 2; ++w) {
    units::Cusp c{1, w};
    ResidueElement re;
    re.cusp = c;
    re.width = units::cusp_width_gamma1(N, c);
    re.embeddings = ts;
    Mat2 g = units::cusp_matrix(c);
    for (const auto& term : xi.terms) {
      ResidueTerm rt;
      rt.m = term.m;
      for (long t : ts) {
        long s = inverse_mod(t, N);
        // order of the sigma_t-conjugate of the tensor factor at this cusp
        mpq_class ord = 0;
        for (const auto& [k, ex] : term.v.e) {
          if (k.first != 0)
            throw std::invalid_argument("residues: tensor factor not supported on (0,*) indices");
          auto scaled = units::canonical_pm(N, 0, mod(k.second * s, N));
          auto moved = units::index_act(N, scaled, g);
          ord += ex * mpfield::bernoulli_poly2(mpq_class(moved.first, N)) / 2;
        }
        ord *= re.width;
        ord.canonicalize();
        rt.ord.push_back(ord);
        auto cv = units::cusp_value(term.u, g, t);
        bool degenerate = cv.kind != 0;
        if (!degenerate) {
          auto comp = units::cusp_value(units::complementary(term.u), g, t);
          if (comp.kind == -1) degenerate = true;  // u(cusp) = 1 exactly
        }
        rt.degenerate.push_back(degenerate);
        rt.val.push_back(degenerate ? mpfield::Complex(0L) : cv.value);
      }
      re.terms.push_back(std::move(rt));
    }
    out.push_back(std::move(re));
  }
  return out;
}

std::vector<mpfield::Real> numeric_bloch_test(const ResidueElement& r) {
  using mpfield::Real;
  std::vector<Real> out;
  for (size_t i = 0; i < r.embeddings.size(); ++i) {
    Real s(0L);
    for (const auto& term : r.terms) {
      if (term.degenerate[i] || term.ord[i] == 0) continue;
      Real coef(term.m * term.ord[i]);
      s += coef * mpfield::bloch_wigner(term.val[i]);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace modreg::wedge
