#pragma once
// Exact rational arithmetic.  Thin layer over GMP's C++ bindings so the rest
// of the code never touches gmpxx directly.

#include <gmpxx.h>
#include <complex>
#include <stdexcept>
#include <string>

namespace logdisc {

using Int = mpz_class;
using Rat = mpq_class;
using Cplx = std::complex<double>;

// Parse "p/q" or "p" (optionally signed).  Decimal points are rejected: the
// document formats are decimal-free by design.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.find('.') != std::string::npos)
        throw std::invalid_argument("decimal literal not allowed: " + s);
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("cannot parse rational: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double to_double(const Rat& q) { return q.get_d(); }

} // namespace logdisc
