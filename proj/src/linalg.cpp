#include "modreg/linalg.hpp"

#include <stdexcept>

namespace modreg::linalg {

void rref(QMat& m, std::vector<long>& pivots) {
  pivots.clear();
  if (m.empty()) return;
  long rows = m.size(), cols = m[0].size();
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    mpq_class inv = 1 / m[r][c];
    for (long j = c; j < cols; ++j) m[r][j] *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (long j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
}

QMat kernel(QMat m, long ncols) {
  std::vector<long> pivots;
  rref(m, pivots);
  std::vector<bool> is_pivot(ncols, false);
  for (long c : pivots) is_pivot[c] = true;
  QMat basis;
  for (long c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(ncols, mpq_class(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(QMat m, QVec b) {
  if (m.empty()) return QVec{};
  long rows = m.size(), cols = m[0].size();
  for (long i = 0; i < rows; ++i) m[i].push_back(b[i]);
  std::vector<long> pivots;
  rref(m, pivots);
  QVec x(cols, mpq_class(0));
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;  // 0 = 1 row
    x[pivots[r]] = m[r][cols];
  }
  return x;
}

QVec matvec(const QMat& m, const QVec& x) {
  QVec y(m.size(), mpq_class(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (m[i][j] != 0 && x[j] != 0) y[i] += m[i][j] * x[j];
  return y;
}

std::vector<mpz_class> primitive_integer(const QVec& v) {
  mpz_class l(1);
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> out;
  mpz_class g(0);
  for (const auto& q : v) {
    mpq_class s = q * l;
    s.canonicalize();
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g != 0)
    for (auto& z : out) z /= g;
  return out;
}

}  // namespace modreg::linalg
