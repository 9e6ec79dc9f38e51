#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace modreg::linalg {

using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;  // row-major

// reduced row echelon form in place; returns the pivot column of each
// surviving row (rank = pivots.size()); zero rows are removed
void rref(QMat& m, std::vector<long>& pivots);

// basis of { x : m x = 0 } (x as rows of length ncols)
QMat kernel(QMat m, long ncols);

// one solution of m x = b, if any
std::optional<QVec> solve(QMat m, QVec b);

QVec matvec(const QMat& m, const QVec& x);

// clear denominators and divide by the content, keeping orientation
std::vector<mpz_class> primitive_integer(const QVec& v);

}  // namespace modreg::linalg
