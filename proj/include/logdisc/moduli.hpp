#pragma once
// M_{0,m} arrangements with Mandelstam labels, the Gram-minor identity for
// m = 5, soft-limit weight vectors, and the m = 6 soft-limit recipe.

#include "logdisc/arrangement.hpp"
#include "logdisc/poly.hpp"
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace logdisc {

struct MandelstamMap {
    int m = 0;
    std::vector<std::pair<int, int>> pairs; // lex-ordered non-constant-minor pairs
    std::vector<std::string> labels;        // "s13", ... aligned with pairs

    int index_of(int i, int j) const; // -1 if (i,j) is not a coordinate
};

// Hyperplanes = non-constant 2x2 minors of the 2 x m matrix with columns
// (1:0), (1:1), (1:x1), ..., (1:x_{m-3}), (0:1); d = m-3, count m(m-3)/2.
// Throws std::invalid_argument for m < 5.
std::pair<Arrangement, MandelstamMap> m0m_arrangement(int m);

// The logarithmic discriminant of the M_{0,5} arrangement: the known
// quartic in (s13, s14, s23, s24, s34).
Poly m05_discriminant();

struct GramReport {
    QMat G;                  // completed 5x5 Gram matrix
    std::vector<Rat> minors; // the five principal 4x4 minors
    Rat delta;               // the M_{0,5} quartic evaluated at u
    bool all_equal = false;  // every minor == delta
};

// u = (s13, s14, s23, s24, s34); completes s12 = -(sum u) and the s_i5 from
// the row-sum relations, then compares all five principal 4x4 minors with
// the quartic.
GramReport gram_minor_check(const std::vector<Rat>& u);

// weight 1 on coordinates s_ij with k in {i,j}; throws on out-of-range k.
std::vector<int> soft_limit_weight(int m, int k);

struct SoftLimitReport {
    bool completed = false;
    long resultant_degree = -1; // deg_s Res_{x1}(g2, Disc_{x3}(g3))
    std::vector<std::pair<std::string, int>> stripped; // spurious factors
    long factor_degree = -1;    // residual degree, expected 18
    long product_degree = -1;   // factor + 3 * 4, expected 30
    bool delta_multiplicity_exactly_three = false;
    std::string note;
};

// Ex. 8.6 recipe for the m = 6, k = 5 soft limit, certified on random
// rational lines in Mandelstam space (the degree-18 factor is too large to
// expand; degrees and multiplicities are exact).
SoftLimitReport soft_limit_m06(std::uint64_t seed = 0);

} // namespace logdisc
