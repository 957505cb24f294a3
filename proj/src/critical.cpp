#include "logdisc/critical.hpp"
#include "logdisc/dd.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

namespace logdisc {

// ======================================================== symbolic builders

static Poly ell_poly(const Arrangement& arr, int i) {
    Poly p = Poly::constant(arr.b[i]);
    for (int j = 0; j < arr.d; ++j)
        p = p + arr.A[i][j] * Poly::variable("x" + std::to_string(j + 1));
    return p;
}

std::vector<Poly> cleared_system(const Arrangement& arr) {
    int n1 = arr.n_plus_1;
    std::vector<Poly> ell(n1);
    for (int i = 0; i < n1; ++i) ell[i] = ell_poly(arr, i);
    // prefix/suffix products for Π_{k≠i} ℓ_k
    std::vector<Poly> pref(n1 + 1), suf(n1 + 1);
    pref[0] = Poly::constant(1);
    suf[n1] = Poly::constant(1);
    for (int i = 0; i < n1; ++i) pref[i + 1] = pref[i] * ell[i];
    for (int i = n1 - 1; i >= 0; --i) suf[i] = suf[i + 1] * ell[i];
    std::vector<Poly> sys(arr.d);
    for (int j = 0; j < arr.d; ++j) {
        Poly e;
        for (int i = 0; i < n1; ++i) {
            if (arr.A[i][j] == 0) continue;
            Poly ui = Poly::variable("u" + std::to_string(i));
            e = e + arr.A[i][j] * (ui * (pref[i] * suf[i + 1]));
        }
        sys[j] = e;
    }
    return sys;
}

static bool next_combination(std::vector<int>& c, int n) {
    int k = (int)c.size();
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

Poly hessian_numerator(const Arrangement& arr) {
    int n1 = arr.n_plus_1, d = arr.d;
    std::vector<Poly> ell2(n1);
    for (int i = 0; i < n1; ++i) {
        Poly e = ell_poly(arr, i);
        ell2[i] = e * e;
    }
    Poly h;
    std::vector<int> I(d);
    for (int i = 0; i < d; ++i) I[i] = i;
    do {
        QMat AI;
        for (int i : I) AI.push_back(arr.A[i]);
        Rat det = det_bareiss(AI);
        if (det == 0) continue;
        Poly term = Poly::constant(det * det);
        for (int i : I) term = term * Poly::variable("u" + std::to_string(i));
        for (int k = 0; k < n1; ++k) {
            if (std::find(I.begin(), I.end(), k) == I.end()) term = term * ell2[k];
        }
        h = h + term;
    } while (next_combination(I, n1));
    return h;
}

// =========================================================== exact kernels

template <class K>
static std::vector<K> gradient_impl(const Arrangement& arr, const std::vector<K>& u,
                                    const std::vector<K>& x) {
    auto lv = arr.ell(x);
    for (auto& v : lv)
        if (v == K(0)) throw std::domain_error("gradient: point lies on a hyperplane");
    std::vector<K> g(arr.d, K(0));
    for (int i = 0; i < arr.n_plus_1; ++i) {
        K w = u[i] / lv[i];
        for (int j = 0; j < arr.d; ++j) {
            if constexpr (std::is_same_v<K, Rat>)
                g[j] += arr.A[i][j] * w;
            else
                g[j] += K(to_double(arr.A[i][j])) * w;
        }
    }
    return g;
}

std::vector<Rat> gradient(const Arrangement& arr, const std::vector<Rat>& u,
                          const std::vector<Rat>& x) {
    return gradient_impl<Rat>(arr, u, x);
}
std::vector<Cplx> gradient(const Arrangement& arr, const std::vector<Cplx>& u,
                           const std::vector<Cplx>& x) {
    return gradient_impl<Cplx>(arr, u, x);
}

template <class K>
static K hessian_det_impl(const Arrangement& arr, const std::vector<K>& u,
                          const std::vector<K>& x) {
    auto lv = arr.ell(x);
    for (auto& v : lv)
        if (v == K(0)) throw std::domain_error("hessian: point lies on a hyperplane");
    int n1 = arr.n_plus_1, d = arr.d;
    K acc(0);
    std::vector<int> I(d);
    for (int i = 0; i < d; ++i) I[i] = i;
    do {
        QMat AI;
        for (int i : I) AI.push_back(arr.A[i]);
        Rat det = det_bareiss(AI);
        if (det == 0) continue;
        K term;
        if constexpr (std::is_same_v<K, Rat>) term = det * det;
        else term = K(to_double(det * det));
        for (int i : I) term = term * (u[i] / (lv[i] * lv[i]));
        acc += term;
    } while (next_combination(I, n1));
    return acc;
}

Rat hessian_det(const Arrangement& arr, const std::vector<Rat>& u,
                const std::vector<Rat>& x) {
    return hessian_det_impl<Rat>(arr, u, x);
}
Cplx hessian_det(const Arrangement& arr, const std::vector<Cplx>& u,
                 const std::vector<Cplx>& x) {
    return hessian_det_impl<Cplx>(arr, u, x);
}

double hessian_abs_scale(const Arrangement& arr, const std::vector<Cplx>& u,
                         const std::vector<Cplx>& x) {
    auto lv = arr.ell(x);
    int n1 = arr.n_plus_1, d = arr.d;
    double acc = 0.0;
    std::vector<int> I(d);
    for (int i = 0; i < d; ++i) I[i] = i;
    do {
        QMat AI;
        for (int i : I) AI.push_back(arr.A[i]);
        Rat det = det_bareiss(AI);
        if (det == 0) continue;
        double term = to_double(det * det);
        for (int i : I) term *= std::abs(u[i]) / std::norm(lv[i]);
        acc += term;
    } while (next_combination(I, n1));
    return acc;
}

Rat hessian_det_direct(const Arrangement& arr, const std::vector<Rat>& u,
                       const std::vector<Rat>& x) {
    auto lv = arr.ell(x);
    QMat H(arr.d, std::vector<Rat>(arr.d, Rat(0)));
    for (int i = 0; i < arr.n_plus_1; ++i) {
        Rat w = u[i] / (lv[i] * lv[i]);
        for (int j = 0; j < arr.d; ++j)
            for (int k = 0; k < arr.d; ++k) H[j][k] += w * arr.A[i][j] * arr.A[i][k];
    }
    return det_bareiss(H);
}

// ===================================================== numeric polynomials

namespace {

using NTerms = std::map<Expo, Cplx>; // sparse complex poly in x1..xd

NTerms nmul(const NTerms& a, const NTerms& b) {
    NTerms out;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            Expo e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    return out;
}

void nadd_inplace(NTerms& a, const NTerms& b, Cplx scale) {
    for (auto& [e, c] : b) a[e] += scale * c;
}

NTerms nderiv(const NTerms& a, int var) {
    NTerms out;
    for (auto& [e, c] : a) {
        if (e[var] == 0) continue;
        Expo ne = e;
        ne[var] -= 1;
        out[ne] += c * (double)e[var];
    }
    return out;
}

Cplx neval(const NTerms& a, const std::vector<Cplx>& x) {
    Cplx acc = 0.0;
    for (auto& [e, c] : a) {
        Cplx t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        acc += t;
    }
    return acc;
}

int ndeg(const NTerms& a) {
    int d = -1;
    for (auto& [e, c] : a) d = std::max(d, expo_deg(e));
    return d;
}

// numeric cleared system for fixed u
struct NumSystem {
    int d;
    std::vector<NTerms> eq;                      // d cleared equations
    std::vector<std::vector<NTerms>> jac;        // jac[j][l] = dE_j/dx_l
    std::vector<Cplx> eval_eq(const std::vector<Cplx>& x) const {
        std::vector<Cplx> v(d);
        for (int j = 0; j < d; ++j) v[j] = neval(eq[j], x);
        return v;
    }
};

NumSystem build_numeric_system(const Arrangement& arr, const std::vector<Cplx>& u) {
    int n1 = arr.n_plus_1, d = arr.d;
    std::vector<NTerms> ell(n1);
    for (int i = 0; i < n1; ++i) {
        NTerms t;
        Expo z(d, 0);
        t[z] = to_double(arr.b[i]);
        for (int j = 0; j < d; ++j) {
            if (arr.A[i][j] == 0) continue;
            Expo e(d, 0);
            e[j] = 1;
            t[e] += to_double(arr.A[i][j]);
        }
        ell[i] = t;
    }
    std::vector<NTerms> pref(n1 + 1), suf(n1 + 1);
    NTerms one;
    one[Expo(d, 0)] = 1.0;
    pref[0] = one;
    suf[n1] = one;
    for (int i = 0; i < n1; ++i) pref[i + 1] = nmul(pref[i], ell[i]);
    for (int i = n1 - 1; i >= 0; --i) suf[i] = nmul(suf[i + 1], ell[i]);
    NumSystem sys;
    sys.d = d;
    sys.eq.resize(d);
    for (int j = 0; j < d; ++j) {
        NTerms e;
        for (int i = 0; i < n1; ++i) {
            if (arr.A[i][j] == 0) continue;
            NTerms prod = nmul(pref[i], suf[i + 1]);
            nadd_inplace(e, prod, to_double(arr.A[i][j]) * u[i]);
        }
        // drop exact zeros
        for (auto it = e.begin(); it != e.end();) {
            if (it->second == 0.0) it = e.erase(it);
            else ++it;
        }
        sys.eq[j] = std::move(e);
    }
    sys.jac.assign(d, std::vector<NTerms>(d));
    for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) sys.jac[j][l] = nderiv(sys.eq[j], l);
    return sys;
}

// complex LU determinant with partial pivoting
Cplx lu_det(std::vector<std::vector<Cplx>> m) {
    size_t n = m.size();
    Cplx det = 1.0;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (std::abs(m[piv][k]) == 0.0) return 0.0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            Cplx f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

// solve m z = rhs (complex, partial pivoting); returns false if singular-ish
bool lin_solve(std::vector<std::vector<Cplx>> m, std::vector<Cplx> rhs,
               std::vector<Cplx>& out) {
    size_t n = m.size();
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (std::abs(m[piv][k]) < 1e-300) return false;
        std::swap(m[piv], m[k]);
        std::swap(rhs[piv], rhs[k]);
        for (size_t i = k + 1; i < n; ++i) {
            Cplx f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    out.assign(n, 0.0);
    for (size_t i = n; i-- > 0;) {
        Cplx s = rhs[i];
        for (size_t j = i + 1; j < n; ++j) s -= m[i][j] * out[j];
        out[i] = s / m[i][i];
    }
    return true;
}

} // namespace

// ============================================================ Aberth roots

std::vector<Cplx> roots_univariate(std::vector<Cplx> c, std::uint64_t seed) {
    double maxc = 0.0;
    for (auto& x : c) maxc = std::max(maxc, std::abs(x));
    if (maxc == 0.0) throw std::invalid_argument("roots of the zero polynomial");
    while (c.size() > 1 && std::abs(c.back()) < 1e-13 * maxc) c.pop_back();
    std::vector<Cplx> roots;
    // deflate roots at the origin
    size_t z0 = 0;
    while (z0 < c.size() - 1 && std::abs(c[z0]) < 1e-306) ++z0;
    for (size_t i = 0; i < z0; ++i) roots.push_back(0.0);
    c.erase(c.begin(), c.begin() + z0);
    int n = (int)c.size() - 1;
    if (n <= 0) return roots;
    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    // Fujiwara bound
    double R = 0.0;
    for (int k = 0; k < n; ++k) {
        double v = std::pow(std::abs(c[k] / c[n]) / (k == 0 ? 0.5 : 1.0), 1.0 / (n - k));
        R = std::max(R, v);
    }
    R = 2.0 * R + 1.0;
    std::mt19937_64 rng(seed ^ 0xab3e7);
    std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
    double phase = ph(rng);
    std::vector<Cplx> z(n);
    for (int i = 0; i < n; ++i) {
        double th = phase + 2 * M_PI * (i + 0.37) / n;
        z[i] = (0.6 * R) * Cplx(std::cos(th), std::sin(th));
    }
    for (int iter = 0; iter < 200; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            // Horner for p and p'
            Cplx p = c[n], dp = 0.0;
            for (int k = n - 1; k >= 0; --k) {
                dp = dp * z[i] + p;
                p = p * z[i] + c[k];
            }
            if (std::abs(p) == 0.0) continue;
            Cplx N = (std::abs(dp) == 0.0) ? Cplx(1e-12, 0) : p / dp;
            Cplx S = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) S += 1.0 / (z[i] - z[j]);
            Cplx w = N / (1.0 - N * S);
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[i])));
        }
        if (worst < 1e-14) break;
    }
    for (auto& r : z) roots.push_back(r);
    return roots;
}

// ======================================================= polish and filter

namespace {

// Newton on the gradient system: double precision until converged, then 3
// double-double steps
std::vector<Cplx> polish_point(const Arrangement& arr, const std::vector<Cplx>& u,
                               std::vector<Cplx> x) {
    int d = arr.d, n1 = arr.n_plus_1;
    std::vector<cdd> xx(d);
    for (int j = 0; j < d; ++j) xx[j] = cdd(x[j].real(), x[j].imag());
    int dd_steps = 0;
    for (int step = 0; step < 40 && dd_steps < 3; ++step) {
        // ℓ values, gradient, Jacobian  J = -Σ u_i a_i a_i^T / ℓ_i²
        std::vector<cdd> g(d, cdd(0.0));
        std::vector<std::vector<cdd>> J(d, std::vector<cdd>(d, cdd(0.0)));
        for (int i = 0; i < n1; ++i) {
            cdd li(to_double(arr.b[i]), 0.0);
            for (int j = 0; j < d; ++j)
                li = li + cdd(to_double(arr.A[i][j]), 0.0) * xx[j];
            if (abs2_d(li) < 1e-60) return x; // on a wall; leave unpolished
            cdd ui(u[i].real(), u[i].imag());
            cdd w = ui / li;
            cdd w2 = w / li;
            for (int j = 0; j < d; ++j) {
                double aij = to_double(arr.A[i][j]);
                if (aij == 0.0) continue;
                g[j] = g[j] + cdd(aij, 0.0) * w;
                for (int k = 0; k < d; ++k) {
                    double aik = to_double(arr.A[i][k]);
                    if (aik == 0.0) continue;
                    J[j][k] = J[j][k] - cdd(aij * aik, 0.0) * w2;
                }
            }
        }
        // solve J dx = g in double precision (the refinement is in the residual)
        std::vector<std::vector<Cplx>> Jd(d, std::vector<Cplx>(d));
        std::vector<Cplx> gd(d);
        for (int j = 0; j < d; ++j) {
            gd[j] = Cplx(to_d(g[j].re), to_d(g[j].im));
            for (int k = 0; k < d; ++k)
                Jd[j][k] = Cplx(to_d(J[j][k].re), to_d(J[j][k].im));
        }
        std::vector<Cplx> dx;
        if (!lin_solve(Jd, gd, dx)) break;
        double step_norm = 0.0, x_norm = 0.0;
        for (int j = 0; j < d; ++j) {
            step_norm += std::norm(dx[j]);
            x_norm += abs2_d(xx[j]);
        }
        if (step_norm > 4.0 * (1.0 + x_norm)) break; // diverging; reject step
        if (step_norm < 1e-22 * (1.0 + x_norm)) ++dd_steps; // converged; refine 3x
        for (int j = 0; j < d; ++j)
            xx[j] = xx[j] - cdd(dx[j].real(), dx[j].imag());
    }
    for (int j = 0; j < d; ++j) x[j] = Cplx(to_d(xx[j].re), to_d(xx[j].im));
    return x;
}

// relative max-norm gradient residual and the scale it was measured against
std::pair<double, double> gradient_residual(const Arrangement& arr,
                                            const std::vector<Cplx>& u,
                                            const std::vector<Cplx>& x) {
    int d = arr.d, n1 = arr.n_plus_1;
    double res = 0.0, scale = 0.0;
    for (int j = 0; j < d; ++j) {
        Cplx acc = 0.0;
        double mag = 0.0;
        for (int i = 0; i < n1; ++i) {
            Cplx li = Cplx(to_double(arr.b[i]), 0.0);
            for (int k = 0; k < d; ++k) li += to_double(arr.A[i][k]) * x[k];
            if (std::abs(li) == 0.0) return {1e300, 1.0};
            Cplx t = to_double(arr.A[i][j]) * u[i] / li;
            acc += t;
            mag += std::abs(t);
        }
        res = std::max(res, std::abs(acc));
        scale = std::max(scale, mag);
    }
    if (scale == 0.0) scale = 1.0;
    return {res / scale, scale};
}

double min_wall(const Arrangement& arr, const std::vector<Cplx>& x) {
    double m = 1e300;
    for (int i = 0; i < arr.n_plus_1; ++i) {
        Cplx li = Cplx(to_double(arr.b[i]), 0.0);
        for (int k = 0; k < arr.d; ++k) li += to_double(arr.A[i][k]) * x[k];
        m = std::min(m, std::abs(li));
    }
    return m;
}

// raw candidate generation per dimension
std::vector<std::vector<Cplx>> candidates_d1(const NumSystem& sys, std::uint64_t seed) {
    // single equation in x1
    std::vector<Cplx> coeffs;
    int dg = ndeg(sys.eq[0]);
    coeffs.assign(dg + 1, 0.0);
    for (auto& [e, c] : sys.eq[0]) coeffs[e[0]] += c;
    std::vector<std::vector<Cplx>> out;
    for (auto r : roots_univariate(coeffs, seed)) out.push_back({r});
    return out;
}

std::vector<std::vector<Cplx>> candidates_d2(const NumSystem& sys, std::uint64_t seed) {
    // coefficients of E1, E2 with respect to x2 (as polys in x1)
    auto coeffs_x2 = [&](const NTerms& e) {
        int d2 = 0;
        for (auto& [ex, c] : e) d2 = std::max(d2, ex[1]);
        std::vector<NTerms> cs(d2 + 1);
        for (auto& [ex, c] : e) {
            Expo r = ex;
            r[1] = 0;
            cs[ex[1]][r] += c;
        }
        return cs;
    };
    auto C1 = coeffs_x2(sys.eq[0]), C2 = coeffs_x2(sys.eq[1]);
    int m1 = (int)C1.size() - 1, m2 = (int)C2.size() - 1;
    if (m1 <= 0 || m2 <= 0) return {};
    // degree bound of Res_{x2}(E1,E2) in x1
    int deg1 = ndeg(sys.eq[0]), deg2 = ndeg(sys.eq[1]);
    int D = deg1 * deg2;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
    double rho = 1.2 + 0.3 * std::generate_canonical<double, 53>(rng);
    double phase = ph(rng);
    int N = D + 1;
    std::vector<Cplx> vals(N);
    std::vector<Cplx> nodes(N);
    for (int k = 0; k < N; ++k) {
        double th = phase + 2 * M_PI * k / N;
        Cplx x1 = rho * Cplx(std::cos(th), std::sin(th));
        nodes[k] = x1;
        // Sylvester matrix of (E1, E2) in x2 at x1
        size_t n = (size_t)(m1 + m2);
        std::vector<std::vector<Cplx>> M(n, std::vector<Cplx>(n, 0.0));
        std::vector<Cplx> a1(m1 + 1), a2(m2 + 1);
        std::vector<Cplx> X = {x1, 0.0};
        for (int i = 0; i <= m1; ++i) a1[i] = neval(C1[i], X);
        for (int i = 0; i <= m2; ++i) a2[i] = neval(C2[i], X);
        for (int r = 0; r < m2; ++r)
            for (int i = 0; i <= m1; ++i) M[r][r + m1 - i] = a1[i];
        for (int r = 0; r < m1; ++r)
            for (int i = 0; i <= m2; ++i) M[m2 + r][r + m2 - i] = a2[i];
        vals[k] = lu_det(std::move(M));
    }
    // inverse DFT on the scaled circle: R(x1) = Σ c_k x1^k
    std::vector<Cplx> coef(N, 0.0);
    for (int k = 0; k < N; ++k) {
        Cplx acc = 0.0;
        for (int j = 0; j < N; ++j) {
            double th = -(phase + 2 * M_PI * j / N) * k;
            acc += vals[j] * Cplx(std::cos(th + k * 0.0), std::sin(th));
        }
        coef[k] = acc / ((double)N * std::pow(rho, k));
    }
    std::vector<std::vector<Cplx>> out;
    double cmax = 0.0;
    for (auto& c : coef) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0) return out;
    auto x1roots = roots_univariate(coef, seed ^ 0x51);
    // back-substitute: roots of E1(ξ, x2), keep plausible ones by |E2|
    for (auto& xi : x1roots) {
        std::vector<Cplx> e1(m1 + 1);
        std::vector<Cplx> X = {xi, 0.0};
        for (int i = 0; i <= m1; ++i) e1[i] = neval(C1[i], X);
        double e1max = 0.0;
        for (auto& c : e1) e1max = std::max(e1max, std::abs(c));
        if (e1max == 0.0) continue;
        std::vector<Cplx> x2roots;
        try {
            x2roots = roots_univariate(e1, seed ^ 0x52);
        } catch (const std::invalid_argument&) {
            continue;
        }
        // keep every x2 root as a candidate: downstream polishing and the
        // residual/wall filters discard the spurious combinations, and
        // dropping all but one loses points whenever the eliminant root was
        // coarse enough to misrank |E2|
        for (auto& eta : x2roots) out.push_back({xi, eta});
    }
    return out;
}

// total-degree homotopy continuation for d >= 3 (used for d=3)
std::vector<std::vector<Cplx>> candidates_homotopy(const NumSystem& target,
                                                   std::uint64_t seed) {
    int d = target.d;
    std::mt19937_64 rng(seed ^ 0xc0ffee);
    std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
    std::vector<int> degs(d);
    long total = 1;
    for (int j = 0; j < d; ++j) {
        degs[j] = std::max(1, ndeg(target.eq[j]));
        total *= degs[j];
    }
    Cplx gamma = std::polar(1.0, ph(rng));
    std::vector<Cplx> rstart(d);
    for (int j = 0; j < d; ++j) rstart[j] = std::polar(1.0 + 0.2 * j, ph(rng));

    auto eval_H = [&](const std::vector<Cplx>& x, double t, std::vector<Cplx>& H,
                      std::vector<std::vector<Cplx>>& J, std::vector<Cplx>& dHdt) {
        H.assign(d, 0.0);
        dHdt.assign(d, 0.0);
        J.assign(d, std::vector<Cplx>(d, 0.0));
        for (int j = 0; j < d; ++j) {
            Cplx F = neval(target.eq[j], x);
            Cplx G = std::pow(x[j], degs[j]) - rstart[j];
            H[j] = t * F + (1.0 - t) * gamma * G;
            dHdt[j] = F - gamma * G;
            for (int l = 0; l < d; ++l) {
                Cplx dF = neval(target.jac[j][l], x);
                Cplx dG = (l == j) ? (double)degs[j] * std::pow(x[j], degs[j] - 1)
                                   : Cplx(0.0);
                J[j][l] = t * dF + (1.0 - t) * gamma * dG;
            }
        }
    };

    std::vector<std::vector<Cplx>> endpoints;
    std::vector<int> idx(d, 0);
    for (long path = 0; path < total; ++path) {
        // start point: x_j = rstart_j^{1/deg_j} * ω_j^{idx_j}
        std::vector<Cplx> x(d);
        for (int j = 0; j < d; ++j) {
            double r = std::pow(std::abs(rstart[j]), 1.0 / degs[j]);
            double a = (std::arg(rstart[j]) + 2 * M_PI * idx[j]) / degs[j];
            x[j] = std::polar(r, a);
        }
        // advance multi-index
        for (int j = 0; j < d; ++j) {
            if (++idx[j] < degs[j]) break;
            idx[j] = 0;
        }
        double t = 0.0, dt = 0.05;
        bool failed = false;
        std::vector<Cplx> H, dHdt, dx;
        std::vector<std::vector<Cplx>> J;
        while (t < 1.0 && !failed) {
            double tn = std::min(1.0, t + dt);
            // Euler predictor
            eval_H(x, t, H, J, dHdt);
            std::vector<Cplx> rhs(d);
            for (int j = 0; j < d; ++j) rhs[j] = -dHdt[j] * (tn - t);
            std::vector<Cplx> xp = x;
            if (lin_solve(J, rhs, dx))
                for (int j = 0; j < d; ++j) xp[j] += dx[j];
            // Newton corrector at tn; converged when the increment is tiny
            // relative to the point (|H| itself scales with the coefficients)
            bool ok = false;
            for (int it = 0; it < 8; ++it) {
                eval_H(xp, tn, H, J, dHdt);
                std::vector<Cplx> rhs2(d);
                for (int j = 0; j < d; ++j) rhs2[j] = -H[j];
                if (!lin_solve(J, rhs2, dx)) break;
                double sn = 0.0, xn = 0.0;
                for (int j = 0; j < d; ++j) {
                    sn += std::norm(dx[j]);
                    xp[j] += dx[j];
                    xn += std::norm(xp[j]);
                }
                if (xn > 1e16) break;
                if (sn < 1e-20 * (1.0 + xn)) { ok = true; break; }
            }
            double xmag = 0.0;
            for (int j = 0; j < d; ++j) xmag = std::max(xmag, std::abs(xp[j]));
            if (ok && xmag < 1e8) {
                x = xp;
                t = tn;
                dt = std::min(0.2, dt * 1.7);
            } else {
                dt *= 0.35;
                if (dt < 1e-14) failed = true; // declare path failure, never jump
            }
        }
        if (!failed) endpoints.push_back(x);
    }
    return endpoints;
}

} // namespace

int CriticalSolutions::certified_count() const {
    int c = 0;
    for (auto s : status)
        if (s == PointStatus::certified) ++c;
    return c;
}

// track a known critical point of u0 to the parameters u1 along
// (1-t) gamma u0 + t u1; gamma is a random phase (critical points are
// invariant under scaling u, so the endpoints stay fixed while the interior
// of the path is generic)
static std::optional<std::vector<Cplx>> track_point(
    const Arrangement& arr, const std::vector<Cplx>& u0,
    const std::vector<Cplx>& u1, const Cplx& gamma, std::vector<Cplx> x) {
    const int n1 = arr.n_plus_1;
    auto u_at = [&](double t) {
        std::vector<Cplx> ut(n1);
        for (int i = 0; i < n1; ++i)
            ut[i] = (1.0 - t) * gamma * u0[i] + t * u1[i];
        return ut;
    };
    double t = 0.0, h = 0.05;
    for (int steps = 0; t < 1.0 && steps < 2000; ++steps) {
        double tn = std::min(1.0, t + h);
        std::vector<Cplx> ut = u_at(tn);
        std::vector<Cplx> xn = polish_point(arr, ut, x);
        auto [res, scale] = gradient_residual(arr, ut, xn);
        double xmag = 0.0;
        for (int j = 0; j < arr.d; ++j) xmag = std::max(xmag, std::abs(xn[j]));
        if (res < 1e-9 && min_wall(arr, xn) > 1e-12 && xmag < 1e8) {
            x = std::move(xn);
            t = tn;
            h = std::min(0.1, h * 1.4);
        } else {
            h *= 0.5;
            if (h < 1e-7) return std::nullopt;
        }
    }
    if (t < 1.0) return std::nullopt;
    return x;
}

// polish/filter/dedupe candidate points into a CriticalSolutions record
static void assemble(CriticalSolutions& sol, std::vector<std::vector<Cplx>>& pts,
                     const Arrangement& arr, const std::vector<Cplx>& u,
                     const ToleranceSet& tol,
                     const std::vector<std::vector<Cplx>>& cand) {
    auto absorb = [&](const std::vector<Cplx>& x0) {
        std::vector<Cplx> x = polish_point(arr, u, x0);
        double xmag = 0.0;
        for (int j = 0; j < arr.d; ++j) xmag = std::max(xmag, std::abs(x[j]));
        if (xmag > 1e6) return; // escape toward a critical point at infinity
        auto [res, scale] = gradient_residual(arr, u, x);
        double wall = min_wall(arr, x);
        if (wall <= tol.tau_wall) return;          // on/near a wall: discard
        if (res > 1e-4) return;                    // junk candidate
        // dedupe (much tighter than tau_collision; collisions stay visible)
        for (auto& p : pts) {
            double dist = 0.0;
            for (int j = 0; j < arr.d; ++j) dist += std::norm(p[j] - x[j]);
            if (std::sqrt(dist) < 1e-9 * (1.0 + std::abs(x[0]))) return;
        }
        pts.push_back(x);
        sol.points.push_back(x);
        sol.residuals.push_back(res);
        sol.min_wall_distance.push_back(wall);
        sol.hessdets.push_back(hessian_det(arr, u, x));
        sol.status.push_back(res < tol.tau_res && wall > tol.tau_wall
                                 ? PointStatus::certified
                                 : PointStatus::suspect);
    };
    for (auto& x0 : cand) absorb(x0);
}

static CriticalSolutions solve_core(const Arrangement& arr,
                                    const std::vector<Cplx>& u,
                                    std::uint64_t seed, const ToleranceSet& tol,
                                    bool allow_rescue) {
    if ((int)u.size() != arr.n_plus_1)
        throw std::invalid_argument("u has wrong arity");
    if (arr.d > 3)
        throw std::domain_error("solve_critical guaranteed only for d <= 3");
    CriticalSolutions sol;
    sol.count_expected = ml_degree(arr);

    NumSystem sys = build_numeric_system(arr, u);
    std::vector<std::vector<Cplx>> cand;
    if (arr.d == 1) cand = candidates_d1(sys, seed);
    else if (arr.d == 2) {
        // elimination first, homotopy as an independent second source: the
        // interpolated eliminant can misplace a root badly enough to escape
        // its Newton basin, and the two methods rarely lose the same point
        cand = candidates_d2(sys, seed);
        auto extra = candidates_homotopy(sys, seed);
        cand.insert(cand.end(), extra.begin(), extra.end());
    } else cand = candidates_homotopy(sys, seed);

    std::vector<std::vector<Cplx>> pts;
    assemble(sol, pts, arr, u, tol, cand);

    // rescue: if the direct solve lost points, solve at random base
    // parameters and continue the complete base set to the target
    if (allow_rescue && sol.certified_count() < sol.count_expected) {
        std::mt19937_64 rng(seed ^ 0x5bf03635u);
        std::uniform_real_distribution<double> ang(0.0, 6.283185307179586),
            mag(0.5, 1.5);
        for (int attempt = 0;
             attempt < 4 && sol.certified_count() < sol.count_expected;
             ++attempt) {
            std::vector<Cplx> ub(arr.n_plus_1);
            for (auto& v : ub)
                v = std::polar(mag(rng), ang(rng));
            CriticalSolutions base =
                solve_core(arr, ub, rng(), tol, false);
            if (base.certified_count() < base.count_expected) continue;
            Cplx gamma = std::polar(1.0, ang(rng));
            std::vector<std::vector<Cplx>> moved_pts;
            for (const auto& bx : base.points) {
                auto moved = track_point(arr, ub, u, gamma, bx);
                if (moved) moved_pts.push_back(std::move(*moved));
            }
            assemble(sol, pts, arr, u, tol, moved_pts);
        }
    }

    int found = sol.certified_count();
    if (found < sol.count_expected)
        sol.note = "incomplete(found " + std::to_string(found) + " of " +
                   std::to_string(sol.count_expected) + ")";
    return sol;
}

CriticalSolutions solve_critical(const Arrangement& arr, const std::vector<Cplx>& u,
                                 std::uint64_t seed, const ToleranceSet& tol) {
    return solve_core(arr, u, seed, tol, true);
}

std::vector<CriticalSolutions> solve_critical_batch(
    const Arrangement& arr, const std::vector<std::vector<Cplx>>& targets,
    std::uint64_t seed, const ToleranceSet& tol) {
    std::vector<CriticalSolutions> out(targets.size());
    if (targets.empty()) return out;
    // one full solve at random generic base parameters, then continuation
    // to every target (far cheaper than one total-degree homotopy each)
    std::mt19937_64 rng(seed ^ 0x9d2c5680u);
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586),
        mag(0.5, 1.5);
    std::vector<Cplx> ub(arr.n_plus_1);
    CriticalSolutions base;
    bool have_base = false;
    for (int attempt = 0; attempt < 6 && !have_base; ++attempt) {
        for (auto& v : ub) v = std::polar(mag(rng), ang(rng));
        base = solve_core(arr, ub, rng(), tol, false);
        have_base = base.certified_count() == base.count_expected;
    }
    for (size_t k = 0; k < targets.size(); ++k) {
        const auto& u = targets[k];
        if (have_base) {
            CriticalSolutions sol;
            sol.count_expected = base.count_expected;
            std::vector<std::vector<Cplx>> pts;
            // a detour phase occasionally steers two paths onto the same
            // endpoint; retrying with a fresh gamma is much cheaper than a
            // full solve, so take several shots before giving up on tracking
            bool done = false;
            for (int retry = 0; retry < 4 && !done; ++retry) {
                std::vector<std::vector<Cplx>> moved_pts;
                Cplx gamma = std::polar(1.0, ang(rng));
                for (const auto& bx : base.points) {
                    auto moved = track_point(arr, ub, u, gamma, bx);
                    if (moved) moved_pts.push_back(std::move(*moved));
                }
                assemble(sol, pts, arr, u, tol, moved_pts);
                done = sol.certified_count() == sol.count_expected;
            }
            if (done) {
                out[k] = std::move(sol);
                continue;
            }
        }
        bool got = false;
        for (int attempt = 0; attempt < 3 && !got; ++attempt) {
            out[k] = solve_core(arr, u, seed + 7919 * (k + 1) + 101 * attempt,
                                tol, true);
            got = out[k].certified_count() == out[k].count_expected;
        }
    }
    return out;
}

CriticalSolutions solve_critical(const Arrangement& arr, const std::vector<Rat>& u,
                                 std::uint64_t seed, const ToleranceSet& tol) {
    std::vector<Cplx> uc;
    for (auto& q : u) uc.push_back(Cplx(to_double(q), 0.0));
    return solve_critical(arr, uc, seed, tol);
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::outside: return "outside";
        case Verdict::near_discriminant: return "near_discriminant";
        default: return "incomplete";
    }
}

Verdict membership_numeric(const Arrangement& arr, const std::vector<Cplx>& u,
                           std::uint64_t seed, const ToleranceSet& tol) {
    CriticalSolutions sol = solve_critical(arr, u, seed, tol);
    int expected = sol.count_expected;

    // stably short: shortfall persists across 3 independent seeds
    if (sol.certified_count() < expected) {
        bool stably_short = true;
        CriticalSolutions best = sol;
        for (int k = 1; k < 3; ++k) {
            CriticalSolutions s2 = solve_critical(arr, u, seed + 7919 * k, tol);
            if (s2.certified_count() >= expected) {
                stably_short = false;
                sol = s2;
                break;
            }
            if (s2.certified_count() > best.certified_count()) best = s2;
        }
        if (stably_short) {
            // a stable shortfall at generic-looking u signals the discriminant
            // (a point escaped or degenerated); an erratic one is incomplete
            return best.certified_count() + 1 == expected ||
                           best.certified_count() + 2 == expected
                       ? Verdict::near_discriminant
                       : Verdict::incomplete;
        }
    }

    // more certified points than the ML degree: the critical locus is not a
    // finite set of that cardinality, so u lies on the discriminant
    if (sol.certified_count() > expected) return Verdict::near_discriminant;

    // degenerate Hessian: measured against the absolute magnitude of the
    // Cauchy-Binet sum at the same point (scale-free, and still meaningful
    // when every Hessian determinant is near zero)
    for (size_t i = 0; i < sol.points.size(); ++i) {
        if (sol.status[i] != PointStatus::certified) continue;
        double scale = hessian_abs_scale(arr, u, sol.points[i]);
        if (std::abs(sol.hessdets[i]) < tol.tau_deg * scale)
            return Verdict::near_discriminant;
    }

    // collision of two certified points
    for (size_t i = 0; i < sol.points.size(); ++i)
        for (size_t j = i + 1; j < sol.points.size(); ++j) {
            if (sol.status[i] != PointStatus::certified ||
                sol.status[j] != PointStatus::certified)
                continue;
            double dist = 0.0;
            for (int k = 0; k < arr.d; ++k)
                dist += std::norm(sol.points[i][k] - sol.points[j][k]);
            if (std::sqrt(dist) < tol.tau_collision) return Verdict::near_discriminant;
        }
    return Verdict::outside;
}

Verdict membership_numeric(const Arrangement& arr, const std::vector<Rat>& u,
                           std::uint64_t seed, const ToleranceSet& tol) {
    std::vector<Cplx> uc;
    for (auto& q : u) uc.push_back(Cplx(to_double(q), 0.0));
    return membership_numeric(arr, uc, seed, tol);
}

VarchenkoReport varchenko_check(const Arrangement& arr, const std::vector<Rat>& u,
                                std::uint64_t seed, const ToleranceSet& tol) {
    VarchenkoReport rep;
    for (auto& q : u)
        if (q <= 0) throw std::invalid_argument("varchenko_check needs positive u");
    rep.expected = ml_degree(arr);
    CriticalSolutions sol = solve_critical(arr, u, seed, tol);
    std::vector<Cplx> uc;
    for (auto& q : u) uc.push_back(Cplx(to_double(q), 0.0));
    rep.min_hess_ratio = 1e300;
    for (size_t i = 0; i < sol.points.size(); ++i) {
        if (sol.status[i] != PointStatus::certified) continue;
        ++rep.real_count;
        for (int j = 0; j < arr.d; ++j)
            rep.max_imag = std::max(rep.max_imag, std::abs(sol.points[i][j].imag()));
        double scale = hessian_abs_scale(arr, uc, sol.points[i]);
        if (scale > 0.0)
            rep.min_hess_ratio =
                std::min(rep.min_hess_ratio, std::abs(sol.hessdets[i]) / scale);
    }
    if (rep.real_count == 0) rep.min_hess_ratio = 0.0;
    rep.pass = rep.real_count == rep.expected && rep.max_imag < tol.tau_res &&
               rep.min_hess_ratio > tol.tau_deg;
    if (!rep.pass) {
        rep.detail = "count=" + std::to_string(rep.real_count) + "/" +
                     std::to_string(rep.expected) +
                     " max_imag=" + std::to_string(rep.max_imag);
    }
    return rep;
}

} // namespace logdisc
