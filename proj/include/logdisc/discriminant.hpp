#pragma once
// The logarithmic discriminant: closed-form computation for d = 1,
// elimination with certified factor extraction for d in {2, 3}, the expected
// degree of the doubly uniform case, and positivity scanning.

#include "logdisc/arrangement.hpp"
#include "logdisc/poly.hpp"
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace logdisc {

struct DiscFactor {
    Poly poly;            // canonicalized, squarefree
    int multiplicity = 1; // multiplicity inside the eliminated polynomial
    bool certified = false;
};

struct DiscriminantResult {
    std::vector<DiscFactor> factors;
    std::optional<Poly> leftover; // uncertified residue, if any
    long total_degree = 0;        // degree of the reduced discriminant
    std::string method;           // "disc_d1" | "res_d1" | "elimination"
    std::string note;
};

// d = 1 closed forms.  `points` are the roots p_i of ell_i = x - p_i.
// Disc route: Delta = Disc_x(g1) with g1 = sum_i u_i prod_{k != i}(x - p_k).
Poly d1_disc_route(const std::vector<Rat>& points);
// Res route: Delta = Res_x(g1, g2) / (u_0 ... u_n (u_0 + ... + u_n)) with
// g2 = sum_i u_i prod_{k != i}(x - p_k)^2.
Poly d1_res_route(const std::vector<Rat>& points);

// Both routes, cross-checked; throws std::invalid_argument on repeated
// points.  Two points give the empty discriminant (constant 1, with a note).
DiscriminantResult logdisc_d1(const std::vector<Rat>& points);

// Elimination route for d <= 3 (d = 3 best effort).  Certification samples
// points on each factor's zero locus and confirms membership numerically.
DiscriminantResult logdisc_elim(const Arrangement& arr,
                                std::optional<long> degree_bound,
                                std::uint64_t seed);

// 2d * C(n-1, d) when the arrangement is doubly uniform, 2(n-1) when d = 1;
// nullopt for special arrangements ("not applicable").
std::optional<long> expected_degree(const Arrangement& arr);

struct PositivityReport {
    long n_samples = 0;
    long n_positive = 0;
    long n_nonpositive = 0;
    bool all_positive = false;
    std::vector<Rat> witness_values; // exact values at supplied points
};

// sample f on the open positive orthant (log-uniform coordinates, exact
// rational evaluation); also evaluates the supplied witness points exactly
PositivityReport positivity_scan(const Poly& f, long n_samples,
                                 std::uint64_t seed,
                                 const std::vector<std::vector<Rat>>&
                                     witnesses = {});

} // namespace logdisc
