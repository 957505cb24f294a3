#pragma once
// Minimal double-double arithmetic (Dekker/Knuth error-free transforms) and a
// complex variant, used for the final Newton polish of critical points.

#include <cmath>

namespace logdisc {

struct dd {
    double hi = 0.0, lo = 0.0;
    dd() = default;
    dd(double x) : hi(x), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

inline dd quick_renorm(double hi, double lo) {
    double s = hi + lo;
    double e = lo - (s - hi);
    return {s, e};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_renorm(s.hi, lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_renorm(p.hi, lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = quick_renorm(q1, q2);
    return q + dd(q3);
}

inline double to_d(dd a) { return a.hi + a.lo; }

struct cdd {
    dd re, im;
    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(double r, double i = 0.0) : re(r), im(i) {}
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator-(cdd a) { return {-a.re, -a.im}; }
inline cdd operator*(cdd a, cdd b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator/(cdd a, cdd b) {
    dd den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline double abs2_d(cdd a) { return to_d(a.re * a.re + a.im * a.im); }

} // namespace logdisc
