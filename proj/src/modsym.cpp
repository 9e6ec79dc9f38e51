#include "modreg/modsym.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace modreg::modsym {

namespace {
long mod(long x, long N) {
  long r = x % N;
  return r < 0 ? r + N : r;
}

std::pair<long, long> canon_pm(long N, long c, long d) {
  c = mod(c, N);
  d = mod(d, N);
  return std::min(std::make_pair(c, d), std::make_pair(mod(-c, N), mod(-d, N)));
}

// s, t with a s + b t = gcd
void ext_gcd(long a, long b, long& g, long& s, long& t) {
  long s0 = 1, s1 = 0, t0 = 0, t1 = 1, a0 = a, a1 = b;
  while (a1 != 0) {
    long q = a0 / a1;
    long tmp = a0 - q * a1; a0 = a1; a1 = tmp;
    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  g = a0; s = s0; t = t0;
}
}  // namespace

long SymbolSpace::canonical_index(long c, long d) const {
  auto key = canon_pm(N_, c, d);
  auto it = index_.find(key);
  if (it == index_.end()) throw std::invalid_argument("modsym: not a valid symbol (gcd with N > 1)");
  return it->second;
}

SymbolSpace::SymbolSpace(long N) : N_(N) {
  if (N < 1) throw std::invalid_argument("SymbolSpace: N >= 1");
  for (long c = 0; c < std::max(N, 1L); ++c)
    for (long d = 0; d < std::max(N, 1L); ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1) continue;
      auto key = canon_pm(N, c, d);
      if (index_.count(key)) continue;
      index_[key] = gens_.size();
      gens_.push_back(key);
    }
  long G = gens_.size();
  // sigma and tau relations
  QMat rel;
  auto act = [&](std::pair<long, long> g, const Mat2& m) {
    return canon_pm(N, g.first * m.a + g.second * m.c, g.first * m.b + g.second * m.d);
  };
  Mat2 sigma = units::mat_sigma(), tau = units::mat_tau();
  for (long i = 0; i < G; ++i) {
    QVec r1(G, mpq_class(0));
    r1[i] += 1;
    r1[index_.at(act(gens_[i], sigma))] += 1;
    rel.push_back(r1);
    QVec r2(G, mpq_class(0));
    r2[i] += 1;
    r2[index_.at(act(gens_[i], tau))] += 1;
    r2[index_.at(act(act(gens_[i], tau), tau))] += 1;
    rel.push_back(r2);
  }
  std::vector<long> pivots;
  linalg::rref(rel, pivots);
  std::vector<bool> is_pivot(G, false);
  std::vector<long> pivot_row(G, -1);
  for (size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    pivot_row[pivots[r]] = r;
  }
  std::vector<long> free_col_id(G, -1);
  for (long c = 0; c < G; ++c)
    if (!is_pivot[c]) {
      free_col_id[c] = basis_gens_.size();
      basis_gens_.push_back(c);
    }
  dim_ = basis_gens_.size();
  gen2basis_.assign(G, QVec(dim_, mpq_class(0)));
  for (long c = 0; c < G; ++c) {
    if (!is_pivot[c]) {
      gen2basis_[c][free_col_id[c]] = 1;
    } else {
      long r = pivot_row[c];
      for (long j = 0; j < G; ++j)
        if (!is_pivot[j] && rel[r][j] != 0) gen2basis_[c][free_col_id[j]] = -rel[r][j];
    }
  }
  // boundary: d{g0, goo} = [goo] - [g0]
  cusps_ = units::gamma1_cusps(N);
  auto cusp_id = [&](long p, long q) {
    // reduce p/q to lowest terms with q >= 0
    if (q < 0) { p = -p; q = -q; }
    long g = std::gcd(std::abs(p), q);
    if (g == 0) g = std::abs(p);
    if (g != 0) { p /= g; q /= g; }
    if (q == 0) p = 1;
    Cusp c{p, q};
    for (size_t i = 0; i < cusps_.size(); ++i)
      if (units::cusp_equiv_gamma1(N, cusps_[i], c)) return (long)i;
    throw std::runtime_error("modsym: cusp not classified");
  };
  boundary_.assign(cusps_.size(), QVec(dim_, mpq_class(0)));
  for (long j = 0; j < dim_; ++j) {
    Mat2 m = generator_lift(basis_gens_[j]);
    boundary_[cusp_id(m.a, m.c)][j] += 1;
    boundary_[cusp_id(m.b, m.d)][j] -= 1;
  }
  // star involution: (c, d) -> (-c, d)
  star_.assign(dim_, QVec(dim_, mpq_class(0)));
  for (long j = 0; j < dim_; ++j) {
    auto [c, d] = gens_[basis_gens_[j]];
    const QVec& img = gen2basis_[canonical_index(-c, d)];
    for (long i = 0; i < dim_; ++i) star_[i][j] = img[i];
  }
  // cuspidal plus-subspace: ker(boundary) cap ker(star - 1)
  QMat stacked = boundary_;
  for (long i = 0; i < dim_; ++i) {
    QVec row(dim_, mpq_class(0));
    for (long j = 0; j < dim_; ++j) row[j] = star_[i][j];
    row[i] -= 1;
    stacked.push_back(std::move(row));
  }
  cusp_plus_ = linalg::kernel(std::move(stacked), dim_);
}

long SymbolSpace::genus() const { return units::genus_x1(N_); }

Mat2 SymbolSpace::generator_lift(long idx) const {
  auto [c, d] = gens_[idx];
  // find a lift (c', d') congruent mod N with gcd(c', d') = 1
  for (long tc = 0; tc < 4 * N_ + 1; ++tc)
    for (long td = 0; td < 4 * N_ + 1; ++td) {
      long cc = c + tc * N_, dd = d + td * N_;
      if (cc == 0 && dd == 0) continue;
      if (std::gcd(std::abs(cc), std::abs(dd)) != 1) continue;
      long g, s, t;
      ext_gcd(cc, dd, g, s, t);
      if (g < 0) { s = -s; t = -t; }
      // bottom row (cc, dd); top row (t', -s') with t' dd - (-s') cc ... = 1
      Mat2 m{t, -s, cc, dd};
      if (m.det() != 1) { m.a = -m.a; m.b = -m.b; }
      if (m.det() == 1) return m;
    }
  throw std::runtime_error("generator_lift: no unimodular lift found");
}

QVec SymbolSpace::symbol_class(long c, long d) const { return gen2basis_[canonical_index(c, d)]; }

namespace {
// convergent matrices for {0, p/q}: the chain {0, oo}, {oo, a0}, ...
std::vector<Mat2> manin_path_impl(std::pair<long, long> beta) {
  std::vector<Mat2> out;
  out.push_back(Mat2{1, 0, 0, 1});  // {0, oo}
  auto [p, q] = beta;
  if (q == 0) return out;  // beta = oo
  // continued fraction of p/q
  std::vector<long> as;
  long a = p, b = q;
  while (b != 0) {
    long quo = a / b;
    long rem = a - quo * b;
    if (rem < 0) { quo -= 1; rem += b; }  // floor division for b > 0
    if (b < 0) { quo = -(-a / b); }       // not reached: we normalize below
    as.push_back(quo);
    a = b;
    b = rem;
  }
  long pk1 = 1, qk1 = 0;  // p_{-1}, q_{-1}
  long pk = as[0], qk = 1;
  long sign = -1;  // (-1)^{k-1} for k = 0
  out.push_back(Mat2{pk, sign * pk1, qk, sign * qk1});
  for (size_t k = 1; k < as.size(); ++k) {
    long pn = as[k] * pk + pk1;
    long qn = as[k] * qk + qk1;
    pk1 = pk; qk1 = qk; pk = pn; qk = qn;
    sign = (k % 2 == 0) ? -1 : 1;
    out.push_back(Mat2{pk, sign * pk1, qk, sign * qk1});
  }
  for (auto& m : out)
    if (m.det() != 1) throw std::runtime_error("manin_path: non-unimodular convergent matrix");
  return out;
}
}  // namespace

std::vector<Mat2> manin_path_matrices(std::pair<long, long> beta) {
  if (beta.second < 0) { beta.first = -beta.first; beta.second = -beta.second; }
  return manin_path_impl(beta);
}

QVec SymbolSpace::path_class(std::pair<long, long> alpha, std::pair<long, long> beta) const {
  QVec v(dim_, mpq_class(0));
  auto add_path = [&](std::pair<long, long> end, int sgn) {
    for (const Mat2& m : manin_path_matrices(end)) {
      const QVec& cl = gen2basis_[canonical_index(m.c, m.d)];
      for (long i = 0; i < dim_; ++i) v[i] += sgn * cl[i];
    }
  };
  // {alpha, beta} = {0, beta} - {0, alpha}
  add_path(beta, +1);
  add_path(alpha, -1);
  return v;
}

QVec SymbolSpace::diamond_class(long t, long genidx) const {
  auto [c, d] = gens_[genidx];
  return gen2basis_[canonical_index(t * c, t * d)];
}

QVec SymbolSpace::hecke_image(long genidx, long p) const {
  Mat2 m = generator_lift(genidx);
  // alpha = m0 = b/d, beta = moo = a/c
  auto reduce = [](long num, long den) {
    if (den < 0) { num = -num; den = -den; }
    long g = std::gcd(std::abs(num), std::abs(den));
    if (g > 1) { num /= g; den /= g; }
    if (den == 0) num = 1;
    return std::make_pair(num, den);
  };
  QVec total(dim_, mpq_class(0));
  auto acc = [&](const QVec& v, int sgn) {
    for (long i = 0; i < dim_; ++i) total[i] += sgn * v[i];
  };
  // sum over [[1, r],[0, p]]: {(alpha + r)/p, (beta + r)/p}
  for (long r = 0; r < p; ++r) {
    auto al = reduce(m.b + r * m.d, p * m.d);
    auto be = reduce(m.a + r * m.c, p * m.c);
    acc(path_class(al, be), +1);
  }
  if (N_ % p != 0) {
    // and the <p>-twisted [[p, 0],[0, 1]] term: {p alpha, p beta}
    auto al = reduce(p * m.b, m.d);
    auto be = reduce(p * m.a, m.c);
    QVec w = path_class(al, be);
    // apply the diamond operator <p> by expressing w over the generators
    QVec tw(dim_, mpq_class(0));
    for (long j = 0; j < dim_; ++j) {
      if (w[j] == 0) continue;
      const QVec& dj = diamond_class(p, basis_gens_[j]);
      for (long i = 0; i < dim_; ++i) tw[i] += w[j] * dj[i];
    }
    acc(tw, +1);
  }
  return total;
}

QMat SymbolSpace::hecke(long p) const {
  long W = cusp_plus_.size();
  // images of the subspace basis vectors
  QMat images;  // rows: images in V coordinates
  for (long k = 0; k < W; ++k) {
    QVec img(dim_, mpq_class(0));
    for (long j = 0; j < dim_; ++j) {
      if (cusp_plus_[k][j] == 0) continue;
      QVec hj = hecke_image(basis_gens_[j], p);
      for (long i = 0; i < dim_; ++i) img[i] += cusp_plus_[k][j] * hj[i];
    }
    images.push_back(std::move(img));
  }
  // solve images = M * basis (coordinates of each image in the subspace basis)
  QMat bt(dim_, QVec(W, mpq_class(0)));  // basis^T: dim x W
  for (long k = 0; k < W; ++k)
    for (long j = 0; j < dim_; ++j) bt[j][k] = cusp_plus_[k][j];
  QMat M(W, QVec(W, mpq_class(0)));
  for (long k = 0; k < W; ++k) {
    auto sol = linalg::solve(bt, images[k]);
    if (!sol) throw std::runtime_error("hecke: operator does not preserve the plus-subspace");
    for (long i = 0; i < W; ++i) M[k][i] = (*sol)[i];
  }
  // M[k] are the coordinates of T(b_k): as a matrix acting on coordinate
  // columns, T[i][k] = M[k][i]
  QMat T(W, QVec(W, mpq_class(0)));
  for (long k = 0; k < W; ++k)
    for (long i = 0; i < W; ++i) T[i][k] = M[k][i];
  return T;
}

Cycle SymbolSpace::to_cycle(const QVec& v) const {
  auto ints = linalg::primitive_integer(v);
  Cycle out;
  for (long j = 0; j < dim_; ++j) {
    if (ints[j] == 0) continue;
    if (!ints[j].fits_slong_p()) throw std::runtime_error("to_cycle: coefficient overflow");
    out.push_back({ints[j].get_si(), generator_lift(basis_gens_[j])});
  }
  return out;
}

Cycle SymbolSpace::eigencycle(const lfunc::EllipticCurveQ& E) const {
  if (E.conductor != N_) throw std::invalid_argument("eigencycle: conductor must equal the level");
  long W = cusp_plus_.size();
  if (W == 0) throw std::runtime_error("eigencycle: trivial cuspidal plus-subspace");
  // intersect kernels of T_p - a_p until one-dimensional
  QMat constraints;  // rows over W coordinates
  long dim_left = W;
  for (long p = 2; p <= 31 && dim_left > 1; ++p) {
    bool prime = p >= 2;
    for (long q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    QMat Tp = hecke(p);
    long ap = E.ap(p);
    for (long i = 0; i < W; ++i) {
      QVec row = Tp[i];
      row[i] -= ap;
      constraints.push_back(std::move(row));
    }
    QMat k = linalg::kernel(constraints, W);
    dim_left = k.size();
    if (dim_left == 0)
      throw std::runtime_error("eigencycle: a_p mismatch, no eigenvector for " + E.label);
  }
  QMat k = linalg::kernel(constraints, W);
  if (k.size() != 1) throw std::runtime_error("eigencycle: eigenspace dimension != 1");
  // back to V coordinates
  QVec v(dim_, mpq_class(0));
  for (long j = 0; j < dim_; ++j)
    for (long i = 0; i < W; ++i) v[j] += k[0][i] * cusp_plus_[i][j];
  return to_cycle(v);
}

// ---------------- cycle files ----------------

namespace {
std::pair<long, long> parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return {std::stol(s), 1};
  return {std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1))};
}
}  // namespace

Cycle import_cycle_text(const std::string& text) {
  Cycle out;
  if (text.find('{') != std::string::npos) {
    // Magma-style: terms like -1*{-1/2, 0} joined by +
    std::string s = text;
    size_t pos = 0;
    while (true) {
      size_t lb = s.find('{', pos);
      if (lb == std::string::npos) break;
      size_t rb = s.find('}', lb);
      if (rb == std::string::npos) throw std::invalid_argument("import_cycle: unbalanced brace");
      // coefficient: scan backwards for "c*" or a sign
      long coef = 1;
      std::string head = s.substr(pos, lb - pos);
      // strip whitespace and a trailing '*'
      std::string tok;
      for (char ch : head)
        if (!isspace((unsigned char)ch)) tok += ch;
      if (!tok.empty() && tok.back() == '*') tok.pop_back();
      if (!tok.empty() && tok != "+") {
        if (tok == "-") coef = -1;
        else {
          if (tok.front() == '+') tok.erase(tok.begin());
          coef = std::stol(tok);
        }
      }
      std::string body = s.substr(lb + 1, rb - lb - 1);
      auto comma = body.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("import_cycle: malformed symbol");
      auto strip = [](std::string x) {
        std::string y;
        for (char ch : x)
          if (!isspace((unsigned char)ch)) y += ch;
        return y;
      };
      std::string sa = strip(body.substr(0, comma)), sb = strip(body.substr(comma + 1));
      std::pair<long, long> alpha = (sa == "oo" || sa == "inf") ? std::make_pair(1L, 0L) : parse_fraction(sa);
      std::pair<long, long> beta = (sb == "oo" || sb == "inf") ? std::make_pair(1L, 0L) : parse_fraction(sb);
      // {alpha, beta} as matrices: direct when the pair is unimodular
      long det = beta.first * alpha.second - alpha.first * beta.second;
      if (det == 1 || det == -1) {
        Mat2 m{beta.first, alpha.first, beta.second, alpha.second};
        if (m.det() != 1) { m.b = -m.b; m.d = -m.d; }
        out.push_back({coef, m});
      } else {
        // continued-fraction split: {alpha,beta} = {0,beta} - {0,alpha}
        for (const Mat2& m : manin_path_matrices(beta)) out.push_back({coef, m});
        for (const Mat2& m : manin_path_matrices(alpha)) out.push_back({-coef, m});
      }
      pos = rb + 1;
      // skip a following '+'
      while (pos < s.size() && (isspace((unsigned char)s[pos]) || s[pos] == '+')) {
        if (s[pos] == '+') { ++pos; break; }
        ++pos;
      }
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    long n, a, b, c, d;
    if (ls >> n >> a >> b >> c >> d) {
      Mat2 m{a, b, c, d};
      if (m.det() != 1) throw std::invalid_argument("import_cycle: matrix not in SL2(Z)");
      out.push_back({n, m});
    }
  }
  return out;
}

Cycle import_cycle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("import_cycle: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return import_cycle_text(ss.str());
}

}  // namespace modreg::modsym
