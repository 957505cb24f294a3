#include "logdisc/discriminant.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "logdisc/critical.hpp"
#include "logdisc/interp.hpp"

namespace logdisc {

namespace {

std::vector<std::string> u_vars(int n1) {
    std::vector<std::string> v;
    for (int i = 0; i < n1; ++i) v.push_back("u" + std::to_string(i));
    return v;
}

void check_points(const std::vector<Rat>& pts) {
    if (pts.size() < 2)
        throw std::invalid_argument("logdisc_d1: need at least two points");
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j])
                throw std::invalid_argument("logdisc_d1: repeated points");
}

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// ---------------------------------------------- exact d=1 route evaluation
//
// Both closed-form routes are resultants of univariate polynomials whose
// coefficients are linear in u.  Expanding them symbolically blows up beyond
// five points, so each route is evaluated exactly at positive integer grid
// points (where the stripped linear forms u_i and sum u cannot vanish) and
// the homogeneous degree-2(n-1) quotient is recovered by triangular Newton
// interpolation over Q.

using RPoly = std::vector<Rat>; // univariate, low-to-high

void rtrim(RPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

RPoly rmul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

RPoly rderiv(const RPoly& f) {
    RPoly r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back(Rat((long)i) * f[i]);
    return r;
}

// exact resultant over Q by the signed Euclidean scheme
Rat rresultant(RPoly a, RPoly b) {
    rtrim(a);
    rtrim(b);
    if (a.empty() || b.empty()) return 0;
    Rat res = 1;
    bool neg = false;
    auto deg = [](const RPoly& f) { return (int)f.size() - 1; };
    auto powr = [](Rat x, int e) {
        Rat r = 1;
        for (int i = 0; i < e; ++i) r *= x;
        return r;
    };
    while (true) {
        if (deg(b) == 0) {
            res *= powr(b[0], deg(a));
            break;
        }
        // a mod b
        RPoly r = a;
        Rat ilb = 1 / b.back();
        while ((int)r.size() >= (int)b.size()) {
            Rat c = r.back() * ilb;
            size_t off = r.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) r[off + i] -= c * b[i];
            rtrim(r);
        }
        if (r.empty()) return 0;
        if ((deg(a) & 1) && (deg(b) & 1)) neg = !neg;
        res *= powr(b.back(), deg(a) - deg(r));
        a = b;
        b = r;
    }
    return neg ? -res : res;
}

// triangular Newton interpolation of a total-degree <= D polynomial in nv
// variables over Q; nodes for every variable are 1, 2, 3, ...
struct RatMPoly {
    std::map<Expo, Rat> t;
};

Rat rmp_eval(const RatMPoly& f, const std::vector<Rat>& pt) {
    Rat acc = 0;
    for (const auto& [e, c] : f.t) {
        Rat m = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) m *= pt[i];
        acc += m;
    }
    return acc;
}

// Newton interpolation on the triangular lattice {idx : sum idx <= D}; the
// node of variable i at index k is k+1.  Values are tabulated once, divided
// differences run in place over the whole table (descending index order per
// step so each update reads the previous-order value), and the Newton
// coefficients are expanded into monomials at the end.
RatMPoly rinterp_tri(int nv, long D,
                     const std::function<Rat(const std::vector<Rat>&)>& f) {
    // enumerate the triangle
    std::vector<Expo> lattice;
    Expo idx(nv, 0);
    std::function<void(int, long)> gen = [&](int level, long rem) {
        if (level == nv) {
            lattice.push_back(idx);
            return;
        }
        for (long k = 0; k <= rem; ++k) {
            idx[level] = (int)k;
            gen(level + 1, rem - k);
        }
        idx[level] = 0;
    };
    gen(0, D);

    std::map<Expo, Rat> V;
    std::vector<Rat> pt(nv);
    for (const auto& e : lattice) {
        for (int i = 0; i < nv; ++i) pt[i] = Rat(e[i] + 1);
        V[e] = f(pt);
    }
    // divided differences per variable; uniform spacing 1 so the step-j
    // denominator is j
    for (int v = 0; v < nv; ++v) {
        std::vector<Expo> keys = lattice;
        std::sort(keys.begin(), keys.end(),
                  [&](const Expo& a, const Expo& b) { return a[v] > b[v]; });
        for (long j = 1; j <= D; ++j)
            for (const auto& e : keys) {
                if (e[v] < j) continue;
                Expo prev = e;
                --prev[v];
                Rat diff = (V[e] - V[prev]) / Rat(j);
                V[e] = diff;
            }
    }
    // expand: P = sum_idx c_idx prod_v N_{idx_v}(t_v),
    // N_k(t) = prod_{l<k} (t - (l+1))
    std::vector<RPoly> basis = {{Rat(1)}};
    for (long k = 1; k <= D; ++k)
        basis.push_back(rmul(basis.back(), RPoly{Rat(-k), Rat(1)}));
    RatMPoly out;
    Expo mono(nv, 0);
    for (const auto& e : lattice) {
        const Rat& c = V[e];
        if (c == 0) continue;
        std::function<void(int, Rat)> expand = [&](int v, Rat coef) {
            if (v == nv) {
                Rat& slot = out.t[mono];
                slot += coef;
                if (slot == 0) out.t.erase(mono);
                return;
            }
            const RPoly& B = basis[e[v]];
            for (size_t pw = 0; pw < B.size(); ++pw) {
                if (B[pw] == 0) continue;
                mono[v] = (int)pw;
                expand(v + 1, Rat(coef * B[pw]));
            }
            mono[v] = 0;
        };
        expand(0, c);
    }
    return out;
}

// interpolate a homogeneous degree-D polynomial in u0..un from exact values
// on the positive grid (dehomogenized at u0 = 1)
Poly interp_homogeneous(int n1, long D,
                        const std::function<Rat(const std::vector<Rat>&)>& F) {
    int nv = n1 - 1;
    auto f = [&](const std::vector<Rat>& tail) {
        std::vector<Rat> u(n1);
        u[0] = 1;
        for (int i = 0; i < nv; ++i) u[i + 1] = tail[i];
        return F(u);
    };
    RatMPoly res = rinterp_tri(nv, D, f);
    std::vector<std::pair<Expo, Rat>> terms;
    for (const auto& [e, c] : res.t) {
        long se = 0;
        for (int x : e) se += x;
        if (se > D)
            throw std::logic_error("interp_homogeneous: degree overflow");
        Expo ee(n1, 0);
        ee[0] = (int)(D - se);
        for (int i = 0; i < nv; ++i) ee[i + 1] = e[i];
        terms.push_back({ee, c});
    }
    return Poly::from_terms(u_vars(n1), terms);
}

// coefficient tables P_i = prod_{k != i}(x - p_k) and their squares
std::vector<RPoly> d1_tables(const std::vector<Rat>& pts, int powr) {
    int n1 = (int)pts.size();
    std::vector<RPoly> out;
    for (int i = 0; i < n1; ++i) {
        RPoly f = {Rat(1)};
        for (int k = 0; k < n1; ++k) {
            if (k == i) continue;
            RPoly lin = {-pts[k], Rat(1)};
            for (int p = 0; p < powr; ++p) f = rmul(f, lin);
        }
        out.push_back(f);
    }
    return out;
}

RPoly d1_combine(const std::vector<RPoly>& tables, const std::vector<Rat>& u) {
    size_t len = 0;
    for (auto& t : tables) len = std::max(len, t.size());
    RPoly g(len, Rat(0));
    for (size_t i = 0; i < tables.size(); ++i)
        for (size_t j = 0; j < tables[i].size(); ++j) g[j] += u[i] * tables[i][j];
    rtrim(g);
    return g;
}

// --------------------------------------------------------- tensor splitting

// try to write f = g(vars in S) * h(vars outside S); exact rank-1 test on the
// coefficient table
bool try_split(const Poly& f, const std::vector<int>& S, Poly& g, Poly& h) {
    int nv = (int)f.vars.size();
    std::vector<bool> inS(nv, false);
    for (int i : S) inS[i] = true;
    auto proj = [&](const Expo& e, bool side) {
        Expo r(nv, 0);
        for (int i = 0; i < nv; ++i)
            if (inS[i] == side) r[i] = e[i];
        return r;
    };
    const auto& lead = f.leading();
    Expo s0 = proj(lead.first, true), t0 = proj(lead.first, false);
    Rat c0 = 0;
    std::vector<std::pair<Expo, Rat>> gt, ht;
    for (const auto& [e, c] : f.terms) {
        Expo es = proj(e, true), et = proj(e, false);
        if (et == t0) gt.push_back({es, c});
        if (es == s0) ht.push_back({et, c});
        if (es == s0 && et == t0) c0 = c;
    }
    if (c0 == 0) return false;
    Poly G = Poly::from_terms(f.vars, gt), H = Poly::from_terms(f.vars, ht);
    if (!(G * H == c0 * f)) return false;
    g = canonicalize(G);
    h = canonicalize(H);
    return true;
}

void tensor_split(const Poly& f, std::vector<Poly>& out) {
    std::vector<int> occurring;
    for (size_t i = 0; i < f.vars.size(); ++i)
        if (f.degree_in(f.vars[i]) > 0) occurring.push_back((int)i);
    int m = (int)occurring.size();
    if (m >= 2 && m <= 16) {
        // bipartitions containing occurring[0] on the S side
        for (unsigned mask = 1; mask < (1u << (m - 1)); ++mask) {
            std::vector<int> S = {occurring[0]};
            for (int j = 1; j < m; ++j)
                if (mask & (1u << (j - 1))) S.push_back(occurring[j]);
            if ((int)S.size() == m) continue;
            Poly g, h;
            if (try_split(f, S, g, h)) {
                tensor_split(g, out);
                tensor_split(h, out);
                return;
            }
        }
    }
    out.push_back(canonicalize(f));
}

} // namespace

// ---------------------------------------------------------------- d1 routes

Poly d1_disc_route(const std::vector<Rat>& points) {
    check_points(points);
    int n1 = (int)points.size();
    if (n1 == 2) return Poly::from_terms(u_vars(2), {{Expo{0, 0}, Rat(1)}});
    long D = 2L * (n1 - 2);
    auto P1 = d1_tables(points, 1);
    auto F = [&](const std::vector<Rat>& u) -> Rat {
        RPoly g1 = d1_combine(P1, u);
        Rat sum = 0;
        for (auto& x : u) sum += x;
        // Disc_x(g1) = +- Res_x(g1, g1') / lc(g1), lc = sum u
        return Rat(rresultant(g1, rderiv(g1)) / sum);
    };
    return canonicalize(interp_homogeneous(n1, D, F));
}

Poly d1_res_route(const std::vector<Rat>& points) {
    check_points(points);
    int n1 = (int)points.size();
    if (n1 == 2) return Poly::from_terms(u_vars(2), {{Expo{0, 0}, Rat(1)}});
    long D = 2L * (n1 - 2);
    auto P1 = d1_tables(points, 1), P2 = d1_tables(points, 2);
    auto F = [&](const std::vector<Rat>& u) -> Rat {
        RPoly g1 = d1_combine(P1, u), g2 = d1_combine(P2, u);
        Rat denom = 1;
        for (auto& x : u) denom *= x;
        Rat sum = 0;
        for (auto& x : u) sum += x;
        return Rat(rresultant(g1, g2) / (denom * sum));
    };
    return canonicalize(interp_homogeneous(n1, D, F));
}

DiscriminantResult logdisc_d1(const std::vector<Rat>& points) {
    check_points(points);
    int n1 = (int)points.size();
    DiscriminantResult R;
    R.method = "disc_d1";
    if (n1 == 2) {
        R.total_degree = 0;
        R.note = "two points: the logarithmic discriminant is empty "
                 "(constant 1)";
        return R;
    }
    Poly a = d1_disc_route(points), b = d1_res_route(points);
    if (!(a == b))
        throw std::logic_error("logdisc_d1: Disc and Res routes disagree");
    DiscFactor f;
    f.poly = a;
    f.multiplicity = 1;
    f.certified = true;
    R.factors.push_back(std::move(f));
    R.total_degree = a.total_degree();
    return R;
}

// ------------------------------------------------------------- elimination

namespace {

// certification with the substitution values carried along properly
bool certify_on_locus(const Arrangement& arr, const Poly& f, int samples,
                      std::uint64_t seed) {
    int n1 = arr.n_plus_1;
    std::string pivot;
    int best_deg = 0;
    for (const auto& v : f.vars) {
        int dg = f.degree_in(v);
        if (dg > best_deg) { best_deg = dg; pivot = v; }
    }
    if (pivot.empty()) return false;
    std::mt19937_64 rng(seed ^ 0xcafef00dULL);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
    int good = 0, tried = 0;
    while (good < samples && tried < 8 * samples + 40) {
        ++tried;
        Poly spec = f;
        std::vector<Cplx> u(n1, Cplx(0.0));
        bool skip = false;
        for (const auto& v : f.vars) {
            if (v == pivot) continue;
            Rat r(num(rng), den(rng));
            r.canonicalize();
            if (r == 0) r = 1;
            u[std::stoi(v.substr(1))] = Cplx(to_double(r));
            spec = substitute(spec, v, Poly::constant(r));
        }
        // u-variables absent from f get generic values too
        for (int i = 0; i < n1; ++i) {
            std::string vi = "u" + std::to_string(i);
            if (vi == pivot) continue;
            if (f.var_index(vi) < 0) {
                Rat r(num(rng), den(rng));
                r.canonicalize();
                if (r == 0) r = 1;
                u[i] = Cplx(to_double(r));
            }
        }
        auto cs = coeffs_wrt(spec, pivot);
        std::vector<Cplx> coeffs;
        for (auto& c : cs) {
            if (!c.is_zero() && !c.is_constant()) { skip = true; break; }
            coeffs.push_back(Cplx(c.is_zero() ? 0.0 : to_double(c.constant_value())));
        }
        while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0)
            coeffs.pop_back();
        if (skip || coeffs.size() < 2) continue;
        auto roots = roots_univariate(coeffs, rng());
        if (roots.empty()) continue;
        Cplx root = roots[rng() % roots.size()];
        if (!std::isfinite(root.real()) || !std::isfinite(root.imag()))
            continue;
        u[std::stoi(pivot.substr(1))] = root;
        Verdict v = membership_numeric(arr, u, rng());
        if (v == Verdict::incomplete) continue; // inconclusive sample
        if (v == Verdict::outside) return false;
        ++good;
    }
    return good >= samples;
}

} // namespace

DiscriminantResult logdisc_elim(const Arrangement& arr,
                                std::optional<long> degree_bound,
                                std::uint64_t seed) {
    int n1 = arr.n_plus_1, d = arr.d;
    DiscriminantResult R;
    R.method = "elimination";
    if (d == 1) {
        // closed form is available: reuse it (Delta is invariant under
        // rescaling the forms, so normalize to x - p_i)
        std::vector<Rat> pts;
        for (int i = 0; i < n1; ++i) {
            if (arr.A[i][0] == 0)
                throw std::invalid_argument("logdisc_elim: degenerate form");
            pts.push_back(-arr.b[i] / arr.A[i][0]);
        }
        R = logdisc_d1(pts);
        return R;
    }
    if (d > 3)
        throw std::invalid_argument("logdisc_elim: d <= 3 only");
    if (n1 == d + 1) {
        R.total_degree = 0;
        R.note = "simplex: the logarithmic discriminant is empty";
        return R;
    }
    long cap = degree_bound
                   ? *degree_bound
                   : [&] {
                         auto ed = expected_degree(arr);
                         return ed ? *ed : 4L * d * binom(n1 - 2, d);
                     }();

    HessianNormShape shape;
    Poly P = hessian_norm_polynomial(arr, seed, shape);
    if (!dependent_flats(arr).empty())
        R.note = "possible higher-codimension component";
    if (P.is_constant()) {
        R.total_degree = 0;
        if (R.note.empty())
            R.note = "no codimension-one discriminant detected";
        return R;
    }
    if (P.total_degree() > cap) {
        R.leftover = P;
        R.total_degree = 0;
        R.note = (R.note.empty() ? std::string() : R.note + "; ") +
                 "degree bound exceeded: unresolved residue in leftover";
        return R;
    }

    // squarefree reduction variable by variable
    Poly Q = P;
    for (const auto& v : P.vars)
        if (Q.degree_in(v) > 0) Q = squarefree_part(Q, v);
    Q = canonicalize(Q);

    // split variable-disjoint tensor factors
    std::vector<Poly> parts;
    tensor_split(Q, parts);

    int samples = d == 2 ? 8 : 4;
    long total = 0;
    for (auto& part : parts) {
        DiscFactor F;
        F.poly = canonicalize(part);
        F.multiplicity = trial_divide(P, F.poly).second;
        if (F.multiplicity < 1) F.multiplicity = 1;
        F.certified = certify_on_locus(arr, F.poly, samples, seed ^ total);
        total += F.poly.total_degree();
        R.factors.push_back(std::move(F));
    }
    // deterministic order: by degree then leading term
    std::sort(R.factors.begin(), R.factors.end(),
              [](const DiscFactor& a, const DiscFactor& b) {
                  int da = a.poly.total_degree(), db = b.poly.total_degree();
                  if (da != db) return da < db;
                  return GrevlexGreater{}(a.poly.leading().first,
                                          b.poly.leading().first);
              });
    R.total_degree = total;
    bool any_uncert = false;
    for (auto& f : R.factors) any_uncert |= !f.certified;
    if (any_uncert) {
        Poly res = Poly::constant(Rat(1));
        for (auto& f : R.factors)
            if (!f.certified) res = res * f.poly;
        R.leftover = canonicalize(res);
    }
    return R;
}

std::optional<long> expected_degree(const Arrangement& arr) {
    if (arr.d == 1) return 2L * (arr.n_plus_1 - 2);
    auto rep = validate(arr);
    if (rep.doubly_uniform) return 2L * arr.d * binom(arr.n_plus_1 - 2, arr.d);
    return std::nullopt;
}

PositivityReport positivity_scan(const Poly& f, long n_samples,
                                 std::uint64_t seed,
                                 const std::vector<std::vector<Rat>>&
                                     witnesses) {
    if (!f.is_homogeneous())
        throw std::invalid_argument("positivity_scan: f must be homogeneous");
    PositivityReport rep;
    rep.n_samples = n_samples;
    std::mt19937_64 rng(seed ^ 0x9051715ULL);
    // log-uniform positive rationals: 2^e * m / 64 with e in [-6, 6]
    std::uniform_int_distribution<int> edist(-6, 6), mdist(64, 127);
    size_t nv = f.vars.size();
    for (long s = 0; s < n_samples; ++s) {
        std::vector<Rat> pt;
        for (size_t i = 0; i < nv; ++i) {
            int e = edist(rng);
            Rat r(mdist(rng), 64);
            r.canonicalize();
            if (e >= 0) r *= Rat(Int(1) << e);
            else r /= Rat(Int(1) << (-e));
            pt.push_back(r);
        }
        Rat v = eval(f, pt);
        if (v > 0) ++rep.n_positive;
        else ++rep.n_nonpositive;
    }
    rep.all_positive = rep.n_nonpositive == 0;
    for (auto& w : witnesses) rep.witness_values.push_back(eval(f, w));
    return rep;
}

} // namespace logdisc
