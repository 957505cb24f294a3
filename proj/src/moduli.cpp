#include "logdisc/moduli.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace logdisc {
namespace {

// ---- tiny exact univariate layer over Q (dense, low-to-high) -------------

using RPoly = std::vector<Rat>;

void rtrim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

long rdeg(const RPoly& p) { return (long)p.size() - 1; }

RPoly rmul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// exact division; returns empty optional-style flag through ok
RPoly rdiv_exact(const RPoly& a, const RPoly& b, bool& ok) {
    ok = false;
    if (b.empty()) return {};
    if (a.empty()) {
        ok = true;
        return {};
    }
    if (a.size() < b.size()) return {};
    RPoly r = a, q(a.size() - b.size() + 1, Rat(0));
    for (long k = (long)q.size() - 1; k >= 0; --k) {
        Rat c = r[k + b.size() - 1] / b.back();
        q[k] = c;
        if (c != 0)
            for (size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
    }
    for (const auto& c : r)
        if (c != 0) return {};
    ok = true;
    rtrim(q);
    return q;
}

// resultant of two exact rational univariates via the signed Euclidean
// scheme: Res(f,g) = lc(g)^{deg f - deg r} (-1)^{deg f deg g} Res(g, r)
Rat rresultant(RPoly f, RPoly g) {
    rtrim(f);
    rtrim(g);
    if (f.empty() || g.empty()) return Rat(0);
    Rat acc = 1;
    while (true) {
        if (rdeg(g) == 0) {
            Rat out = acc;
            for (long i = 0; i < rdeg(f); ++i) out *= g[0];
            return out;
        }
        // r = f mod g
        RPoly r = f;
        while (rdeg(r) >= rdeg(g)) {
            Rat c = r.back() / g.back();
            long sh = rdeg(r) - rdeg(g);
            for (size_t j = 0; j < g.size(); ++j) r[sh + j] -= c * g[j];
            rtrim(r);
            if (r.empty()) return Rat(0);
        }
        long df = rdeg(f), dg = rdeg(g), dr = rdeg(r);
        Rat s = ((df * dg) % 2 == 1) ? Rat(-1) : Rat(1);
        Rat lc = 1;
        for (long i = 0; i < df - dr; ++i) lc *= g.back();
        acc *= s * lc;
        f = std::move(g);
        g = std::move(r);
    }
}

// Newton interpolation at t = 1..N (values low index = t=1)
RPoly newton_interp(const std::vector<Rat>& vals) {
    const long N = (long)vals.size();
    std::vector<Rat> dd = vals;
    for (long j = 1; j < N; ++j)
        for (long k = N - 1; k >= j; --k) dd[k] = (dd[k] - dd[k - 1]) / Rat(j);
    RPoly out, basis = {Rat(1)};
    for (long k = 0; k < N; ++k) {
        if (out.size() < basis.size()) out.resize(basis.size(), Rat(0));
        for (size_t i = 0; i < basis.size(); ++i) out[i] += dd[k] * basis[i];
        basis = rmul(basis, RPoly{Rat(-(k + 1)), Rat(1)});
    }
    rtrim(out);
    return out;
}

Rat reval(const RPoly& p, const Rat& t) {
    Rat acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
    return acc;
}

// ---------------------------------------------------------------------------

std::vector<std::string> x_names(int d) {
    std::vector<std::string> v(d);
    for (int i = 0; i < d; ++i) v[i] = "x" + std::to_string(i + 1);
    return v;
}

} // namespace

int MandelstamMap::index_of(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (size_t k = 0; k < pairs.size(); ++k)
        if (pairs[k] == std::make_pair(i, j)) return (int)k;
    return -1;
}

std::pair<Arrangement, MandelstamMap> m0m_arrangement(int m) {
    if (m < 5) throw std::invalid_argument("m0m_arrangement: need m >= 5");
    const int d = m - 3;
    MandelstamMap map;
    map.m = m;
    QMat A;
    std::vector<Rat> b;
    for (int i = 1; i <= m - 1; ++i)
        for (int j = i + 1; j <= m - 1; ++j) {
            if (i == 1 && j == 2) continue; // constant minor
            map.pairs.emplace_back(i, j);
            map.labels.push_back("s" + std::to_string(i) + std::to_string(j));
            std::vector<Rat> row(d, Rat(0));
            Rat bi = 0;
            if (i == 1) {
                row[j - 3] = 1; // x_{j-2}
            } else if (i == 2) {
                row[j - 3] = 1; // x_{j-2} - 1
                bi = -1;
            } else {
                row[j - 3] = 1; // x_{j-2} - x_{i-2}
                row[i - 3] = -1;
            }
            A.push_back(std::move(row));
            b.push_back(bi);
        }
    Arrangement arr = make_arrangement(d, std::move(A), std::move(b), map.labels);
    return {std::move(arr), std::move(map)};
}

Poly m05_discriminant() {
    std::vector<std::string> sv = {"s13", "s14", "s23", "s24", "s34"};
    auto mono = [&](int a, int bb, int c, int dd, int e) {
        return Poly::from_terms(sv, {{Expo{a, bb, c, dd, e}, Rat(1)}});
    };
    // (s13 s24 + s13 s34 + s14 s34 + s23 s34 + s24 s34 + s14 s23 + s34^2)^2
    //   - 4 s13 s14 s23 s24
    Poly q = mono(1, 0, 0, 1, 0) + mono(1, 0, 0, 0, 1) + mono(0, 1, 0, 0, 1) +
             mono(0, 0, 1, 0, 1) + mono(0, 0, 0, 1, 1) + mono(0, 1, 1, 0, 0) +
             mono(0, 0, 0, 0, 2);
    return canonicalize(q * q - Rat(4) * mono(1, 1, 1, 1, 0));
}

GramReport gram_minor_check(const std::vector<Rat>& u) {
    if (u.size() != 5)
        throw std::invalid_argument("gram_minor_check: need 5 values");
    const Rat &s13 = u[0], &s14 = u[1], &s23 = u[2], &s24 = u[3], &s34 = u[4];
    Rat s12 = -(s13 + s14 + s23 + s24 + s34);
    Rat s15 = s23 + s24 + s34;
    Rat s25 = s13 + s14 + s34;
    Rat s35 = -(s13 + s23 + s34);
    Rat s45 = -(s14 + s24 + s34);
    GramReport rep;
    rep.G = QMat(5, std::vector<Rat>(5, Rat(0)));
    auto set = [&](int i, int j, const Rat& v) {
        rep.G[i - 1][j - 1] = v;
        rep.G[j - 1][i - 1] = v;
    };
    set(1, 2, s12);
    set(1, 3, s13);
    set(1, 4, s14);
    set(1, 5, s15);
    set(2, 3, s23);
    set(2, 4, s24);
    set(2, 5, s25);
    set(3, 4, s34);
    set(3, 5, s35);
    set(4, 5, s45);
    rep.delta = eval(m05_discriminant(), u);
    rep.all_equal = true;
    for (int drop = 0; drop < 5; ++drop) {
        QMat M;
        for (int r = 0; r < 5; ++r) {
            if (r == drop) continue;
            std::vector<Rat> row;
            for (int c = 0; c < 5; ++c)
                if (c != drop) row.push_back(rep.G[r][c]);
            M.push_back(std::move(row));
        }
        Rat mv = det_bareiss(M);
        if (mv != rep.delta) rep.all_equal = false;
        rep.minors.push_back(std::move(mv));
    }
    return rep;
}

std::vector<int> soft_limit_weight(int m, int k) {
    if (m < 5) throw std::invalid_argument("soft_limit_weight: need m >= 5");
    if (k < 3 || k > m - 1)
        throw std::invalid_argument("soft_limit_weight: need 3 <= k <= m-1");
    std::vector<int> w;
    for (int i = 1; i <= m - 1; ++i)
        for (int j = i + 1; j <= m - 1; ++j) {
            if (i == 1 && j == 2) continue;
            w.push_back(i == k || j == k ? 1 : 0);
        }
    return w;
}

SoftLimitReport soft_limit_m06(std::uint64_t seed) {
    SoftLimitReport rep;
    // Soft limit for particle k = 5 at m = 6: after the degeneration the
    // first two critical equations decouple from x3.  Solving the first for
    // x2 gives x2 = x1*U/T with
    //   T = (s13+s23) x1 - s13,   U = (s13+s23+s34) x1 - (s13+s34),
    // and clearing denominators in the other two yields
    //   g2 = s14 (x1 U - T)(x1 - 1) + s24 x1 U (x1 - 1) + U (x1 U - T),
    //   g3 = s15 (x3-1)(x3-x1)(T x3 - x1 U) + s25 x3 (x3-x1)(T x3 - x1 U)
    //      + s35 x3 (x3-1)(T x3 - x1 U)     + s45 T x3 (x3-1)(x3-x1).
    // The sought factor divides Res_{x1}(g2, Disc_{x3}(g3)) after spurious
    // factors are removed.
    const std::vector<std::string> vars = {"x1",  "x3",  "s13", "s14", "s15",
                                           "s23", "s24", "s25", "s34", "s35",
                                           "s45"};
    auto V = [&](const std::string& n) {
        Expo e(vars.size(), 0);
        e[(size_t)std::distance(
            vars.begin(), std::find(vars.begin(), vars.end(), n))] = 1;
        return Poly::from_terms(vars, {{e, Rat(1)}});
    };
    Poly x1 = V("x1"), x3 = V("x3");
    Poly s13 = V("s13"), s14 = V("s14"), s15 = V("s15"), s23 = V("s23"),
         s24 = V("s24"), s25 = V("s25"), s34 = V("s34"), s35 = V("s35"),
         s45 = V("s45");
    Poly one = Poly::constant(Rat(1));
    Poly T = (s13 + s23) * x1 - s13;
    Poly U = (s13 + s23 + s34) * x1 - (s13 + s34);
    Poly g2 = s14 * (x1 * U - T) * (x1 - one) + s24 * x1 * U * (x1 - one) +
              U * (x1 * U - T);
    Poly W = T * x3 - x1 * U;
    Poly g3 = s15 * (x3 - one) * (x3 - x1) * W + s25 * x3 * (x3 - x1) * W +
              s35 * x3 * (x3 - one) * W + s45 * T * x3 * (x3 - one) * (x3 - x1);
    Poly disc3 = univariate_discriminant(g3, "x3");
    // x1 = 1 forces x2 = x1 (a pole of the original equations): both g2 and
    // the discriminant vanish there, so Res_{x1} would be identically zero.
    // Remove this spurious common locus before eliminating.
    auto [g2s, m2] = trial_divide(g2, x1 - one);
    auto [d3s, m3] = trial_divide(disc3, x1 - one);
    g2 = std::move(g2s);
    disc3 = std::move(d3s);
    (void)m2;
    (void)m3;

    // Mandelstam coordinates in lex pair order, and which of them are the
    // M_{0,5}^{(5)} coordinates (those not involving particle 5)
    const std::vector<std::string> svars = {"s13", "s14", "s15", "s23", "s24",
                                            "s25", "s34", "s35", "s45"};
    const std::vector<int> m05_idx = {0, 1, 3, 4, 6}; // s13 s14 s23 s24 s34
    Poly delta5 = m05_discriminant();

    auto coeffs_in_x1 = [&](const Poly& f) { return coeffs_wrt(f, "x1"); };
    std::vector<Poly> g2c = coeffs_in_x1(g2), d3c = coeffs_in_x1(disc3);
    long dx_g2 = (long)g2c.size() - 1, dx_d3 = (long)d3c.size() - 1;
    auto s_degree = [](const std::vector<Poly>& cs) {
        long d = 0;
        for (const auto& c : cs)
            if (!c.is_zero()) d = std::max(d, (long)c.total_degree());
        return d;
    };
    long ds_g2 = s_degree(g2c), ds_d3 = s_degree(d3c);
    // crude Sylvester bound on the s-degree of the resultant
    long degbound = dx_g2 * ds_d3 + dx_d3 * ds_g2;
    long N = degbound + 6;

    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 12345);
    auto rand_vec = [&]() {
        std::vector<Rat> v(9);
        for (auto& x : v) x = Rat((long)(rng() % 4001) - 2000);
        return v;
    };

    // evaluate Res_{x1}(g2, disc3) at s = p + t q for integer t
    auto eval_coeff = [&](const Poly& c, const std::vector<Rat>& s) -> Rat {
        std::vector<Rat> pt(c.vars.size(), Rat(0));
        for (size_t v = 0; v < c.vars.size(); ++v)
            for (int i = 0; i < 9; ++i)
                if (c.vars[v] == svars[i]) pt[v] = s[i];
        return eval(c, pt);
    };
    auto res_at = [&](const std::vector<Rat>& s) -> Rat {
        RPoly a, b2;
        for (const auto& c : g2c) a.push_back(eval_coeff(c, s));
        for (const auto& c : d3c) b2.push_back(eval_coeff(c, s));
        return rresultant(a, b2);
    };

    // candidate spurious factors: all subset sums of the 9 Mandelstams
    struct Cand {
        std::vector<int> idx;
        std::string desc;
    };
    std::vector<Cand> cands;
    for (int mask = 1; mask < (1 << 9); ++mask) {
        Cand c;
        std::string d;
        for (int i = 0; i < 9; ++i)
            if (mask & (1 << i)) {
                c.idx.push_back(i);
                d += (d.empty() ? "" : "+") + svars[i];
            }
        c.desc = d;
        cands.push_back(std::move(c));
    }

    auto analyze = [&](const std::vector<Rat>& p, const std::vector<Rat>& q,
                       std::vector<std::pair<std::string, int>>& stripped,
                       long& res_deg, long& residual_deg,
                       int& delta_mult_in_residual) -> bool {
        std::vector<Rat> vals;
        for (long t = 1; t <= N; ++t) {
            std::vector<Rat> s(9);
            for (int i = 0; i < 9; ++i) s[i] = p[i] + Rat(t) * q[i];
            vals.push_back(res_at(s));
        }
        RPoly R = newton_interp(vals);
        if (R.empty()) return false;
        { // spot check at two extra nodes
            for (long t = N + 1; t <= N + 2; ++t) {
                std::vector<Rat> s(9);
                for (int i = 0; i < 9; ++i) s[i] = p[i] + Rat(t) * q[i];
                if (reval(R, Rat(t)) != res_at(s)) return false;
            }
        }
        res_deg = rdeg(R);
        stripped.clear();
        for (const auto& c : cands) {
            Rat fp = 0, fq = 0;
            for (int i : c.idx) {
                fp += p[i];
                fq += q[i];
            }
            if (fq == 0) continue;
            RPoly lin = {fp, fq};
            int mult = 0;
            while (true) {
                bool ok = false;
                RPoly Q2 = rdiv_exact(R, lin, ok);
                if (!ok) break;
                R = std::move(Q2);
                ++mult;
            }
            if (mult > 0) stripped.emplace_back(c.desc, mult);
        }
        // multiplicity of the M_{0,5} quartic in what remains
        RPoly D(5);
        {
            std::vector<Rat> dp(5), dq(5);
            for (int i = 0; i < 5; ++i) {
                dp[i] = p[m05_idx[i]];
                dq[i] = q[m05_idx[i]];
            }
            std::vector<Rat> dvals;
            for (long t = 1; t <= 5; ++t) {
                std::vector<Rat> s(5);
                for (int i = 0; i < 5; ++i) s[i] = dp[i] + Rat(t) * dq[i];
                dvals.push_back(eval(delta5, s));
            }
            D = newton_interp(dvals);
        }
        delta_mult_in_residual = 0;
        while (true) {
            bool ok = false;
            RPoly Q2 = rdiv_exact(R, D, ok);
            if (!ok) break;
            R = std::move(Q2);
            ++delta_mult_in_residual;
        }
        if (delta_mult_in_residual > 0)
            stripped.emplace_back("Delta_log(M05^(5))", delta_mult_in_residual);
        residual_deg = rdeg(R);
        return true;
    };

    std::vector<std::pair<std::string, int>> st1, st2;
    long rd1 = -1, rd2 = -1, res1 = -1, res2 = -1;
    int dm1 = -1, dm2 = -1;
    bool ok1 = analyze(rand_vec(), rand_vec(), st1, res1, rd1, dm1);
    bool ok2 = analyze(rand_vec(), rand_vec(), st2, res2, rd2, dm2);
    if (!ok1 || !ok2 || rd1 != rd2 || res1 != res2) {
        rep.note = "soft-limit line analyses disagree or failed";
        return rep;
    }
    rep.resultant_degree = res1;
    rep.stripped = st1;
    rep.factor_degree = rd1;
    rep.product_degree = rd1 + 3 * 4;
    rep.delta_multiplicity_exactly_three = (dm1 == 0 && dm2 == 0);
    rep.completed = (rd1 == 18);
    std::ostringstream os;
    os << "Res degree " << res1 << ", residual degree " << rd1
       << " after stripping " << st1.size()
       << " spurious factor kinds; product with the cubed M_{0,5} quartic has "
          "degree "
       << rep.product_degree;
    rep.note = os.str();
    return rep;
}

} // namespace logdisc
