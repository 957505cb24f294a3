#pragma once
// Sparse multivariate polynomials over exact rationals.  Terms are kept in
// descending graded reverse-lexicographic order (begin() is the leading
// term); all golden data assumes this order.

#include "logdisc/rat.hpp"
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logdisc {

using Expo = std::vector<int>;

inline int expo_deg(const Expo& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
}

// true if a comes strictly before b, i.e. a >_grevlex b
struct GrevlexGreater {
    bool operator()(const Expo& a, const Expo& b) const {
        int da = expo_deg(a), db = expo_deg(b);
        if (da != db) return da > db;
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i]; // last nonzero of a-b negative
        }
        return false;
    }
};

class Poly {
public:
    std::vector<std::string> vars;
    std::map<Expo, Rat, GrevlexGreater> terms;

    Poly() = default;
    static Poly constant(const Rat& c);
    static Poly variable(const std::string& name);
    static Poly from_terms(std::vector<std::string> vars,
                           std::vector<std::pair<Expo, Rat>> terms);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    Rat constant_value() const; // requires is_constant
    int total_degree() const;   // -1 for zero polynomial
    bool is_homogeneous() const;
    int var_index(const std::string& name) const; // -1 if absent
    int degree_in(const std::string& var) const;
    size_t n_terms() const { return terms.size(); }

    // leading term (grevlex); polynomial must be nonzero
    const std::pair<const Expo, Rat>& leading() const;

    Poly with_vars(const std::vector<std::string>& new_vars) const;
    // drop variables that do not occur (normalizing representation)
    Poly compress() const;

    std::string str() const; // human-readable rendering
};

// merge variable universes (natural-order union) and re-express both
std::pair<Poly, Poly> align(const Poly& f, const Poly& g);
bool natural_less(const std::string& a, const std::string& b);

Poly operator+(const Poly& f, const Poly& g);
Poly operator-(const Poly& f, const Poly& g);
Poly operator-(const Poly& f);
Poly operator*(const Poly& f, const Poly& g);
Poly operator*(const Rat& c, const Poly& f);
bool operator==(const Poly& f, const Poly& g);
Poly pow(const Poly& f, int k);

Poly derivative(const Poly& f, const std::string& var);
Poly substitute(const Poly& f, const std::string& var, const Poly& repl);
Poly homogenize(const Poly& f, const std::string& new_var);

Rat eval(const Poly& f, const std::vector<Rat>& point);      // arity = |vars|
Cplx eval(const Poly& f, const std::vector<Cplx>& point);

// integer-coprime coefficients, positive grevlex-leading coefficient
Poly canonicalize(const Poly& f);

// largest k with g^k | f exactly, plus f/g^k
std::pair<Poly, int> trial_divide(const Poly& f, const Poly& g);
// exact division; throws std::domain_error when not divisible
Poly divexact(const Poly& f, const Poly& g);
std::optional<Poly> try_divide(const Poly& f, const Poly& g);

// view f as univariate in `var`: coefficient polynomials indexed by power
std::vector<Poly> coeffs_wrt(const Poly& f, const std::string& var);
Poly from_coeffs_wrt(const std::vector<Poly>& cs, const std::string& var);

// Sylvester-matrix resultant via fraction-free (Bareiss) elimination over the
// polynomial ring.  Exact including sign; the correctness oracle.
Poly sylvester_resultant(const Poly& f, const Poly& g, const std::string& var);
// Subresultant-PRS resultant (fast path); sign fixed against an evaluation of
// the exact univariate resultant.  Agrees with sylvester_resultant.
Poly resultant(const Poly& f, const Poly& g, const std::string& var);

Poly univariate_discriminant(const Poly& f, const std::string& var);

// gcd of f and g in the main variable `var` (up to sign), primitive in var.
Poly gcd_mainvar(const Poly& f, const Poly& g, const std::string& var);
// f / gcd(f, df/dvar): removes repeated factors involving `var`
Poly squarefree_part(const Poly& f, const std::string& var);

// content/primitive part with respect to var (content = gcd of coefficients)
Poly content_wrt(const Poly& f, const std::string& var);

// full multivariate gcd (recursive primitive PRS); used only inside
// squarefree reduction and trial division support
Poly gcd_poly(const Poly& f, const Poly& g);

} // namespace logdisc
