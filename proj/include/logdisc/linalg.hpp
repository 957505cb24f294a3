#pragma once
// Exact dense rational linear algebra: rank, determinant (Bareiss), RREF,
// nullspace.  Sizes here are tiny (n+1 <= 16), clarity over asymptotics.

#include "logdisc/rat.hpp"
#include <vector>

namespace logdisc {

using QMat = std::vector<std::vector<Rat>>;

int rank_q(QMat m);                 // by value: destroys its copy
Rat det_bareiss(QMat m);            // fraction-free elimination
QMat rref(QMat m, std::vector<int>* pivot_cols = nullptr);

// Basis of the (right) nullspace of m, as columns of the returned matrix.
// Columns are in canonical echelon form (free variable set to 1, pivots
// back-solved), so output is reproducible.
QMat nullspace(const QMat& m);

QMat transpose(const QMat& m);
QMat matmul(const QMat& a, const QMat& b);

} // namespace logdisc
