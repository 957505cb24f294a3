#pragma once
// Reciprocal linear space scaffolding: exact kernel bases of A^T, circuit
// generators of the ideal of R_L, and the Plücker substitution
// p_I = det(A⊥_I) · ∏_{i∈I} u_i^{-1}.

#include "logdisc/arrangement.hpp"
#include "logdisc/poly.hpp"
#include <vector>

namespace logdisc {

struct CircuitGenerator {
    std::vector<int> support;  // T ⊂ {0..n}, sorted, |T| = d+2
    std::vector<Rat> lambda;   // kernel coefficients, aligned with support
    Poly g;                    // Σ_{i∈T} λ_i ∏_{j∈T∖i} y_j, canonicalized
};

// Exact rational basis of ker(A^T) as columns of the returned
// (n+1) x (n+1-d) matrix, in canonical column-echelon form.
// Throws std::invalid_argument if rank(A) < d.
QMat kernel_basis(const QMat& A);

// One generator per (d+2)-subset T of the hyperplane index set with
// 1-dimensional kernel of the column submatrix L_T and all kernel
// coordinates nonzero.  For uniform L that is every T; otherwise the
// skipped supports are reported through `skipped` when given.
std::vector<CircuitGenerator> circuit_generators(const Arrangement& arr,
                                                 int* skipped = nullptr);

// det(A⊥_I) · ∏_{i∈I} u_i^{-1} for a subset I of size n+1-d.
// Throws std::invalid_argument on a malformed subset and
// std::domain_error when some u_i, i ∈ I, is zero.
Rat plucker_substitution(const Arrangement& arr, const std::vector<int>& I,
                         const std::vector<Rat>& u);

} // namespace logdisc
