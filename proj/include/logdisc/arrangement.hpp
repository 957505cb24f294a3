#pragma once
// Essential affine hyperplane arrangements: construction/validation and the
// matroid/chamber invariants (characteristic polynomial, ML degree, flats)
// used as oracles by every other module.

#include "logdisc/linalg.hpp"
#include "logdisc/poly.hpp"
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace logdisc {

struct Arrangement {
    int d = 0;             // ambient dimension
    int n_plus_1 = 0;      // hyperplane count
    std::vector<Rat> b;    // constant terms, length n+1
    QMat A;                // (n+1) x d linear parts
    std::vector<std::string> labels; // optional, empty or length n+1

    // ℓ_i(x) = (A x + b)_i
    template <class K>
    std::vector<K> ell(const std::vector<K>& x) const {
        std::vector<K> out(n_plus_1);
        for (int i = 0; i < n_plus_1; ++i) {
            K acc;
            if constexpr (std::is_same_v<K, Rat>) acc = b[i];
            else acc = K(to_double(b[i]));
            for (int j = 0; j < d; ++j) {
                if constexpr (std::is_same_v<K, Rat>) acc += A[i][j] * x[j];
                else acc += K(to_double(A[i][j])) * x[j];
            }
            out[i] = acc;
        }
        return out;
    }

    // row i of [b | A]
    std::vector<Rat> L_row(int i) const;
};

struct ValidationReport {
    bool essential = false;
    bool uniform_L = false;
    bool uniform_A = false;
    bool doubly_uniform = false;
    bool flats_at_infinity = false;
    std::optional<std::vector<int>> witness;
};

// throws std::invalid_argument on rank deficiency / repeated hyperplanes
Arrangement make_arrangement(int d, QMat A, std::vector<Rat> b,
                             std::vector<std::string> labels = {});

// parse {"d": int, "b": [...], "A": [[...]], "labels": [...]}
Arrangement load_arrangement(const nlohmann::json& doc);
nlohmann::json arrangement_to_doc(const Arrangement& arr);

ValidationReport validate(const Arrangement& arr);
nlohmann::json validation_to_doc(const ValidationReport& rep);

// χ(t) via subset-rank enumeration (Whitney); requires n+1 <= 16
Poly characteristic_polynomial(const Arrangement& arr);
int ml_degree(const Arrangement& arr); // (-1)^d χ(1)
int region_count(const Arrangement& arr); // (-1)^d χ(-1) (Zaslavsky)

// Closed dependent subsets: flats of the affine intersection lattice whose
// closure S satisfies |S| > rank(L_S); these index the "flat sum" linear
// forms Σ_{i∈S} u_i that can split off the discriminant computations.
std::vector<std::vector<int>> dependent_flats(const Arrangement& arr);
// Closed subsets meeting only at infinity: rank(L_S) = rank(A_S)+1 <= d.
std::vector<std::vector<int>> infinity_flats(const Arrangement& arr);

} // namespace logdisc
