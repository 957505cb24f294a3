#include "logdisc/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

namespace logdisc {

// ---------------------------------------------------------------- utilities

bool natural_less(const std::string& a, const std::string& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit((unsigned char)a[i]) && std::isdigit((unsigned char)b[j])) {
            size_t i0 = i, j0 = j;
            while (i < a.size() && std::isdigit((unsigned char)a[i])) ++i;
            while (j < b.size() && std::isdigit((unsigned char)b[j])) ++j;
            std::string na = a.substr(i0, i - i0), nb = b.substr(j0, j - j0);
            // strip leading zeros for numeric comparison
            na.erase(0, na.find_first_not_of('0'));
            nb.erase(0, nb.find_first_not_of('0'));
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i; ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

Poly Poly::constant(const Rat& c) {
    Poly p;
    if (c != 0) p.terms[{}] = c;
    return p;
}

Poly Poly::variable(const std::string& name) {
    Poly p;
    p.vars = {name};
    p.terms[{1}] = 1;
    return p;
}

Poly Poly::from_terms(std::vector<std::string> vs,
                      std::vector<std::pair<Expo, Rat>> ts) {
    Poly p;
    p.vars = std::move(vs);
    for (auto& [e, c] : ts) {
        if (e.size() != p.vars.size())
            throw std::invalid_argument("exponent arity mismatch");
        if (c == 0) continue;
        auto it = p.terms.find(e);
        if (it == p.terms.end()) p.terms.emplace(e, c);
        else {
            it->second += c;
            if (it->second == 0) p.terms.erase(it);
        }
    }
    return p;
}

bool Poly::is_constant() const {
    return terms.empty() || (terms.size() == 1 && expo_deg(terms.begin()->first) == 0);
}

Rat Poly::constant_value() const {
    if (terms.empty()) return 0;
    if (!is_constant()) throw std::domain_error("not a constant polynomial");
    return terms.begin()->second;
}

int Poly::total_degree() const {
    return terms.empty() ? -1 : expo_deg(terms.begin()->first);
}

bool Poly::is_homogeneous() const {
    if (terms.empty()) return true;
    int d = total_degree();
    for (auto& [e, c] : terms)
        if (expo_deg(e) != d) return false;
    return true;
}

int Poly::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return (int)i;
    return -1;
}

int Poly::degree_in(const std::string& var) const {
    int vi = var_index(var);
    if (vi < 0) return terms.empty() ? -1 : 0;
    int d = terms.empty() ? -1 : 0;
    for (auto& [e, c] : terms) d = std::max(d, e[vi]);
    return d;
}

const std::pair<const Expo, Rat>& Poly::leading() const {
    if (terms.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms.begin();
}

Poly Poly::with_vars(const std::vector<std::string>& new_vars) const {
    std::vector<int> map(vars.size(), -1);
    for (size_t i = 0; i < vars.size(); ++i) {
        for (size_t j = 0; j < new_vars.size(); ++j)
            if (vars[i] == new_vars[j]) { map[i] = (int)j; break; }
    }
    Poly out;
    out.vars = new_vars;
    for (auto& [e, c] : terms) {
        Expo ne(new_vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (map[i] < 0)
                throw std::invalid_argument("with_vars drops an occurring variable");
            ne[map[i]] = e[i];
        }
        out.terms[ne] = c;
    }
    return out;
}

Poly Poly::compress() const {
    std::vector<bool> used(vars.size(), false);
    for (auto& [e, c] : terms)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) used[i] = true;
    std::vector<std::string> nv;
    for (size_t i = 0; i < vars.size(); ++i)
        if (used[i]) nv.push_back(vars[i]);
    return with_vars(nv);
}

std::pair<Poly, Poly> align(const Poly& f, const Poly& g) {
    if (f.vars == g.vars) return {f, g};
    std::vector<std::string> merged = f.vars;
    for (auto& v : g.vars)
        if (std::find(merged.begin(), merged.end(), v) == merged.end())
            merged.push_back(v);
    std::sort(merged.begin(), merged.end(), natural_less);
    return {f.with_vars(merged), g.with_vars(merged)};
}

// ------------------------------------------------------------- arithmetic

Poly operator+(const Poly& f, const Poly& g) {
    auto [a, b] = align(f, g);
    for (auto& [e, c] : b.terms) {
        auto it = a.terms.find(e);
        if (it == a.terms.end()) a.terms.emplace(e, c);
        else {
            it->second += c;
            if (it->second == 0) a.terms.erase(it);
        }
    }
    return a;
}

Poly operator-(const Poly& f) {
    Poly out = f;
    for (auto& [e, c] : out.terms) c = -c;
    return out;
}

Poly operator-(const Poly& f, const Poly& g) { return f + (-g); }

Poly operator*(const Poly& f, const Poly& g) {
    auto [a, b] = align(f, g);
    Poly out;
    out.vars = a.vars;
    Expo e(a.vars.size());
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            Rat c = ca * cb;
            auto it = out.terms.find(e);
            if (it == out.terms.end()) out.terms.emplace(e, c);
            else {
                it->second += c;
                if (it->second == 0) out.terms.erase(it);
            }
        }
    return out;
}

Poly operator*(const Rat& c, const Poly& f) {
    if (c == 0) return Poly();
    Poly out = f;
    for (auto& [e, co] : out.terms) co *= c;
    return out;
}

bool operator==(const Poly& f, const Poly& g) {
    auto [a, b] = align(f.compress(), g.compress());
    return a.terms == b.terms;
}

Poly pow(const Poly& f, int k) {
    if (k < 0) throw std::invalid_argument("negative power");
    Poly out = Poly::constant(1), base = f;
    while (k) {
        if (k & 1) out = out * base;
        base = (k >>= 1) ? base * base : base;
    }
    return out;
}

Poly derivative(const Poly& f, const std::string& var) {
    int vi = f.var_index(var);
    Poly out;
    out.vars = f.vars;
    if (vi < 0) return out;
    for (auto& [e, c] : f.terms) {
        if (e[vi] == 0) continue;
        Expo ne = e;
        ne[vi] -= 1;
        out.terms[ne] = c * e[vi];
    }
    return out;
}

Poly substitute(const Poly& f, const std::string& var, const Poly& repl) {
    int vi = f.var_index(var);
    if (vi < 0) return f;
    int dmax = f.degree_in(var);
    if (dmax < 0) return f; // zero polynomial
    std::vector<Poly> rp(dmax + 1);
    rp[0] = Poly::constant(1);
    for (int k = 1; k <= dmax; ++k) rp[k] = rp[k - 1] * repl;
    Poly out;
    std::vector<std::string> rest = f.vars;
    for (auto& [e, c] : f.terms) {
        Expo ne = e;
        ne[vi] = 0;
        Poly mono;
        mono.vars = rest;
        mono.terms[ne] = c;
        out = out + mono * rp[e[vi]];
    }
    return out.compress();
}

Poly homogenize(const Poly& f, const std::string& new_var) {
    if (f.var_index(new_var) >= 0)
        throw std::invalid_argument("homogenization variable already present");
    int d = f.total_degree();
    if (d < 0) return f;
    std::vector<std::string> nv = f.vars;
    nv.push_back(new_var);
    Poly out;
    out.vars = nv;
    for (auto& [e, c] : f.terms) {
        Expo ne = e;
        ne.push_back(d - expo_deg(e));
        out.terms[ne] = c;
    }
    return out;
}

template <class K>
static K eval_impl(const Poly& f, const std::vector<K>& point, const K& one) {
    if (point.size() != f.vars.size())
        throw std::invalid_argument("evaluation arity mismatch");
    std::vector<int> maxe(f.vars.size(), 0);
    for (auto& [e, c] : f.terms)
        for (size_t i = 0; i < e.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
    std::vector<std::vector<K>> pw(f.vars.size());
    for (size_t i = 0; i < f.vars.size(); ++i) {
        pw[i].resize(maxe[i] + 1, one);
        for (int k = 1; k <= maxe[i]; ++k) pw[i][k] = pw[i][k - 1] * point[i];
    }
    K acc = one - one;
    for (auto& [e, c] : f.terms) {
        K t = one;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) t = t * pw[i][e[i]];
        if constexpr (std::is_same_v<K, Cplx>)
            acc = acc + t * to_double(c);
        else
            acc = acc + t * c;
    }
    return acc;
}

Rat eval(const Poly& f, const std::vector<Rat>& point) {
    return eval_impl<Rat>(f, point, Rat(1));
}

Cplx eval(const Poly& f, const std::vector<Cplx>& point) {
    return eval_impl<Cplx>(f, point, Cplx(1.0, 0.0));
}

Poly canonicalize(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("canonicalize(0)");
    Int den_lcm = 1, num_gcd = 0;
    for (auto& [e, c] : f.terms) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rat scale(den_lcm, num_gcd); // multiply: clears denominators, strips gcd
    scale.canonicalize();
    // scale is built with guaranteed positive parts, then sign from leading
    if (f.leading().second * scale < 0) scale = -scale;
    Poly out = f;
    for (auto& [e, c] : out.terms) c *= scale;
    return out;
}

// --------------------------------------------------------------- division

std::optional<Poly> try_divide(const Poly& f, const Poly& g) {
    if (g.is_zero()) return std::nullopt;
    if (f.is_zero()) return Poly();
    auto [a, b] = align(f, g);
    Poly q;
    q.vars = a.vars;
    const Expo& lg = b.leading().first;
    const Rat& cg = b.leading().second;
    Poly rem = a;
    Expo qe(a.vars.size());
    while (!rem.is_zero()) {
        const Expo& lr = rem.leading().first;
        bool ok = true;
        for (size_t i = 0; i < qe.size(); ++i) {
            qe[i] = lr[i] - lg[i];
            if (qe[i] < 0) { ok = false; break; }
        }
        if (!ok) return std::nullopt;
        Rat qc = rem.leading().second / cg;
        Poly mono;
        mono.vars = a.vars;
        mono.terms[qe] = qc;
        q = q + mono;
        rem = rem - mono * b;
    }
    return q;
}

Poly divexact(const Poly& f, const Poly& g) {
    auto q = try_divide(f, g);
    if (!q) throw std::domain_error("divexact: not divisible");
    return *q;
}

std::pair<Poly, int> trial_divide(const Poly& f, const Poly& g) {
    if (g.is_zero() || g.is_constant())
        throw std::invalid_argument("trial_divide by constant/zero");
    Poly cur = f;
    int k = 0;
    while (!cur.is_zero()) {
        auto q = try_divide(cur, g);
        if (!q) break;
        cur = *q;
        ++k;
    }
    return {cur, k};
}

// ------------------------------------------------------ univariate views

std::vector<Poly> coeffs_wrt(const Poly& f, const std::string& var) {
    int vi = f.var_index(var);
    int d = f.degree_in(var);
    if (d < 0) return {};
    std::vector<Poly> cs(d + 1);
    for (auto& c : cs) c.vars = f.vars;
    for (auto& [e, c] : f.terms) {
        Expo ne = e;
        int k = 0;
        if (vi >= 0) { k = e[vi]; ne[vi] = 0; }
        cs[k].terms[ne] = c;
    }
    return cs;
}

Poly from_coeffs_wrt(const std::vector<Poly>& cs, const std::string& var) {
    Poly out, x = Poly::variable(var);
    for (size_t k = 0; k < cs.size(); ++k)
        if (!cs[k].is_zero()) out = out + cs[k] * pow(x, (int)k);
    return out;
}

// ------------------------------------------------------------- resultants

// Bareiss over the polynomial ring (exact divisions guaranteed)
static Poly det_bareiss_poly(std::vector<std::vector<Poly>> m) {
    size_t n = m.size();
    if (n == 0) return Poly::constant(1);
    Poly prev = Poly::constant(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return Poly();
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

Poly sylvester_resultant(const Poly& f, const Poly& g, const std::string& var) {
    auto [a, b] = align(f, g);
    int df = a.degree_in(var), dg = b.degree_in(var);
    if (df <= 0 && dg <= 0)
        throw std::invalid_argument("resultant: both inputs constant in main variable");
    auto cf = coeffs_wrt(a, var), cg = coeffs_wrt(b, var);
    if (df <= 0) return pow(a, dg);
    if (dg <= 0) return pow(b, df);
    size_t n = (size_t)(df + dg);
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly()));
    for (int r = 0; r < dg; ++r)       // rows of f first
        for (int k = 0; k <= df; ++k) m[r][r + df - k] = cf[k];
    for (int r = 0; r < df; ++r)
        for (int k = 0; k <= dg; ++k) m[dg + r][r + dg - k] = cg[k];
    return det_bareiss_poly(std::move(m));
}

// exact univariate resultant over Q (field recursion, sign included)
static Rat resultant_field(std::vector<Rat> f, std::vector<Rat> g) {
    auto trim = [](std::vector<Rat>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(f); trim(g);
    Rat acc = 1;
    while (true) {
        if (f.empty() || g.empty()) return 0;
        int df = (int)f.size() - 1, dg = (int)g.size() - 1;
        if (dg == 0) {
            Rat r = 1;
            for (int i = 0; i < df; ++i) r *= g[0];
            return acc * r;
        }
        if (df < dg) {
            if ((df & 1) && (dg & 1)) acc = -acc;
            std::swap(f, g);
            continue;
        }
        // r = f mod g
        std::vector<Rat> r = f;
        for (int k = df; k >= dg; --k) {
            Rat fac = r[k] / g[dg];
            if (fac == 0) continue;
            for (int i = 0; i <= dg; ++i) r[k - dg + i] -= fac * g[i];
        }
        trim(r);
        int dr = r.empty() ? -1 : (int)r.size() - 1;
        if (r.empty()) {
            return dg > 0 ? Rat(0) : acc;
        }
        if ((df & 1) && (dg & 1)) acc = -acc;
        Rat lcg = g[dg];
        for (int i = 0; i < df - dr; ++i) acc *= lcg;
        f = std::move(g);
        g = std::move(r);
    }
}

// pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, in `var`
static std::vector<Poly> prem_vec(std::vector<Poly> a, const std::vector<Poly>& b) {
    int db = (int)b.size() - 1;
    const Poly& lb = b[db];
    int e = (int)a.size() - 1 - db + 1;
    while ((int)a.size() - 1 >= db) {
        int da = (int)a.size() - 1;
        Poly la = a.back();
        for (int i = 0; i <= da; ++i) a[i] = lb * a[i];
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = a[da - db + i] - la * b[i];
        while (!a.empty() && a.back().is_zero()) a.pop_back();
        if (a.empty()) { e = 0; break; }
        --e;
    }
    if (e > 0) {
        Poly m = Poly::constant(1);
        for (int i = 0; i < e; ++i) m = m * lb;
        for (auto& c : a) c = m * c;
    }
    return a;
}

Poly resultant(const Poly& f, const Poly& g, const std::string& var) {
    auto [a0, b0] = align(f, g);
    int df = a0.degree_in(var), dg = b0.degree_in(var);
    if (df <= 0 && dg <= 0)
        throw std::invalid_argument("resultant: both inputs constant in main variable");
    if (df <= 0) return pow(a0, dg);
    if (dg <= 0) return pow(b0, df);
    const Poly forig = a0, gorig = b0;
    if (df < dg) { std::swap(a0, b0); std::swap(df, dg); }
    auto A = coeffs_wrt(a0, var), B = coeffs_wrt(b0, var);
    auto trim = [](std::vector<Poly>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    trim(A); trim(B);
    // Collins subresultant PRS; tracks result up to sign
    Poly gprev = Poly::constant(1), h = Poly::constant(1);
    Poly res_mag;
    while (true) {
        int da = (int)A.size() - 1, db = (int)B.size() - 1;
        int d = da - db;
        auto R = prem_vec(A, B);
        trim(R);
        if (R.empty()) {
            if (db > 0) return Poly(); // common factor in var
            // db == 0 cannot give empty prem; unreachable
            throw std::logic_error("resultant: empty remainder at degree 0");
        }
        Poly denom = gprev * pow(h, d);
        A = std::move(B);
        B.clear();
        for (auto& c : R) B.push_back(divexact(c, denom));
        gprev = A.back();
        h = (d == 0) ? h : divexact(pow(gprev, d), pow(h, d - 1));
        if ((int)B.size() - 1 == 0) {
            int dA = (int)A.size() - 1;
            res_mag = divexact(pow(B[0], dA), pow(h, dA - 1));
            break;
        }
    }
    if (res_mag.is_zero()) return res_mag;
    // fix the global sign against the exact univariate resultant at a sample
    std::vector<std::string> others;
    for (auto& v : a0.vars)
        if (v != var) others.push_back(v);
    std::mt19937_64 rng(0x5eedc0de);
    std::uniform_int_distribution<int> dist(-97, 97);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Rat> pt;
        for (size_t i = 0; i < others.size(); ++i) pt.push_back(Rat(dist(rng)));
        auto evalc = [&](const std::vector<Poly>& cs) {
            std::vector<Rat> out;
            for (auto& c : cs) {
                Poly cc = c;
                for (size_t i = 0; i < others.size(); ++i)
                    cc = substitute(cc, others[i], Poly::constant(pt[i]));
                out.push_back(cc.is_zero() ? Rat(0) : cc.constant_value());
            }
            return out;
        };
        auto fa = evalc(coeffs_wrt(forig, var)), fb = evalc(coeffs_wrt(gorig, var));
        if (fa.size() != (size_t)forig.degree_in(var) + 1 || fa.back() == 0) continue;
        if (fb.size() != (size_t)gorig.degree_in(var) + 1 || fb.back() == 0) continue;
        Rat want = resultant_field(fa, fb);
        Poly mm = res_mag;
        for (size_t i = 0; i < others.size(); ++i)
            mm = substitute(mm, others[i], Poly::constant(pt[i]));
        Rat got = mm.is_zero() ? Rat(0) : mm.constant_value();
        if (got == 0 || want == 0) continue;
        if (got == want) return res_mag;
        if (got == -want) return -res_mag;
        throw std::logic_error("resultant: PRS/evaluation mismatch");
    }
    throw std::logic_error("resultant: could not fix sign (degenerate sampling)");
}

Poly univariate_discriminant(const Poly& f, const std::string& var) {
    int n = f.degree_in(var);
    if (n < 2) throw std::invalid_argument("discriminant needs degree >= 2");
    Poly df = derivative(f, var);
    Poly r = resultant(f, df, var);
    Poly lc = coeffs_wrt(f, var)[n];
    Poly q = divexact(r, lc);
    return ((n * (n - 1) / 2) % 2) ? -q : q;
}

// ------------------------------------------------------------------- gcd

Poly content_wrt(const Poly& f, const std::string& var) {
    auto cs = coeffs_wrt(f, var);
    Poly g;
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_poly(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? Poly() : canonicalize(g);
}

Poly gcd_poly(const Poly& f, const Poly& g) {
    if (f.is_zero()) return g.is_zero() ? Poly() : canonicalize(g);
    if (g.is_zero()) return canonicalize(f);
    if (f.is_constant() || g.is_constant()) return Poly::constant(1);
    auto [a, b] = align(f.compress(), g.compress());
    // main variable: last one occurring in either
    std::string var;
    for (size_t i = a.vars.size(); i-- > 0;) {
        if (a.degree_in(a.vars[i]) > 0 || b.degree_in(a.vars[i]) > 0) {
            var = a.vars[i];
            break;
        }
    }
    Poly ca = content_wrt(a, var), cb = content_wrt(b, var);
    Poly pa = divexact(a, ca), pb = divexact(b, cb);
    Poly cont_gcd = gcd_poly(ca, cb);
    auto A = coeffs_wrt(pa, var), B = coeffs_wrt(pb, var);
    auto trim = [](std::vector<Poly>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    trim(A); trim(B);
    if (A.size() < B.size()) std::swap(A, B);
    while (true) {
        if ((int)B.size() - 1 == 0) return canonicalize(cont_gcd); // coprime in var
        auto R = prem_vec(A, B);
        trim(R);
        if (R.empty()) {
            Poly gg = from_coeffs_wrt(B, var);
            gg = divexact(gg, content_wrt(gg, var));
            return canonicalize(cont_gcd * gg);
        }
        A = std::move(B);
        Poly rp = from_coeffs_wrt(R, var);
        rp = divexact(rp, content_wrt(rp, var)); // primitive PRS
        B = coeffs_wrt(rp, var);
        trim(B);
    }
}

Poly gcd_mainvar(const Poly& f, const Poly& g, const std::string& var) {
    Poly h = gcd_poly(f, g);
    if (h.is_zero() || h.is_constant()) return h;
    Poly c = content_wrt(h, var);
    return canonicalize(divexact(h, c));
}

Poly squarefree_part(const Poly& f, const std::string& var) {
    if (f.degree_in(var) < 1) return f;
    Poly g = gcd_poly(f, derivative(f, var));
    if (g.is_constant()) return f;
    return canonicalize(divexact(f, g));
}

// ------------------------------------------------------------- rendering

static std::string monomial_str(const Poly& p, const Expo& e, const Rat& c) {
    std::ostringstream os;
    Rat ac = abs(c);
    bool printed_coeff = false;
    if (ac != 1 || expo_deg(e) == 0) {
        os << ac.get_str();
        printed_coeff = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (printed_coeff || os.tellp() > 0) os << "*";
        os << p.vars[i];
        if (e[i] > 1) os << "^" << e[i];
    }
    return os.str();
}

std::string Poly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms) {
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << monomial_str(*this, e, c);
    }
    return os.str();
}

} // namespace logdisc
