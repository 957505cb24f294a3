#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logdisc/arrangement.hpp"
#include "logdisc/poly.hpp"

namespace logdisc {

// A linear form c·u from the spurious-factor ledger: the only non-discriminant
// factors the Hessian norm of an arrangement can contain.
struct LedgerForm {
    std::vector<Rat> coef; // length n+1
    std::string desc;
};

// Ledger for an arrangement: coordinates u_i, the total sum, dense-flat sums
// (central subsets of deficient rank) and complements of flats at infinity.
std::vector<LedgerForm> discriminant_ledger(const Arrangement& arr);

// Shape of the Hessian norm N(u) = prod over the ML-degree many critical
// points of the Hessian determinant: a rational function
// N = c * P(u) * prod_F F^{o_F} with P the polynomial cutting out the
// codimension-1 part of the logarithmic discriminant (up to multiplicity).
struct HessianNormShape {
    std::vector<long> orders;  // aligned with discriminant_ledger(arr)
    long norm_degree = 0;      // d * ml (homogeneity degree of N)
    long residual_degree = 0;  // deg P = norm_degree - sum(orders)
};

// Exact multi-prime modular interpolation of P; throws std::runtime_error if
// the computation does not stabilize. P == 1 signals an empty codim-1 part.
Poly hessian_norm_polynomial(const Arrangement& arr, std::uint64_t seed,
                             HessianNormShape& shape);

} // namespace logdisc
