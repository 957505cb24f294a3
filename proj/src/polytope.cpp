#include "logdisc/polytope.hpp"

#include "logdisc/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace logdisc {
namespace {

// scale a rational vector to coprime integers, preserving direction
std::vector<long> primitive(const std::vector<Rat>& w) {
    mpz_class l = 1;
    for (const auto& c : w) {
        mpz_class den = c.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    mpz_class g = 0;
    std::vector<mpz_class> num(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        num[i] = Rat(w[i] * Rat(l)).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num[i].get_mpz_t());
    }
    std::vector<long> out(w.size(), 0);
    if (g == 0) return out;
    for (size_t i = 0; i < w.size(); ++i)
        out[i] = mpz_class(num[i] / g).get_si();
    return out;
}

long dot(const std::vector<long>& w, const std::vector<long>& p) {
    long s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * p[i];
    return s;
}

} // namespace

LatticePolytope hull(std::vector<std::vector<long>> pts) {
    if (pts.empty()) throw std::invalid_argument("hull: no points");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int m = (int)pts[0].size();
    if (m > 8) throw std::invalid_argument("hull: ambient dimension > 8");
    if (pts.size() > 200) throw std::invalid_argument("hull: more than 200 points");
    for (const auto& p : pts)
        if ((int)p.size() != m) throw std::invalid_argument("hull: ragged points");

    LatticePolytope P;
    P.ambient_dim = m;
    P.points = pts;
    const int N = (int)pts.size();

    // affine dimension and pivot coordinates of the affine hull
    QMat D;
    for (int i = 1; i < N; ++i) {
        std::vector<Rat> row(m);
        for (int j = 0; j < m; ++j) row[j] = Rat(pts[i][j] - pts[0][j]);
        D.push_back(std::move(row));
    }
    std::vector<int> piv;
    if (!D.empty()) rref(D, &piv);
    const int r = (int)piv.size();
    P.dim = r;
    if (r == 0) {
        P.vertices = {0};
        return P;
    }

    // project to the pivot coordinates: injective on the affine hull
    std::vector<std::vector<long>> Q(N, std::vector<long>(r));
    for (int i = 0; i < N; ++i)
        for (int t = 0; t < r; ++t) Q[i][t] = pts[i][piv[t]];

    // enumerate candidate facet hyperplanes from r-subsets of points
    double work = 1;
    for (int t = 0; t < r; ++t) work *= double(N - t) / (t + 1);
    if (work > 2e6) throw std::invalid_argument("hull: size cap exceeded");

    struct RawFacet {
        std::vector<long> w; // in projected coordinates
        long c;
    };
    std::set<std::pair<std::vector<long>, long>> seen;
    std::vector<RawFacet> raw;
    std::vector<int> idx(r);
    auto consider = [&]() {
        QMat M;
        for (int t = 1; t < r; ++t) {
            std::vector<Rat> row(r);
            for (int j = 0; j < r; ++j)
                row[j] = Rat(Q[idx[t]][j] - Q[idx[0]][j]);
            M.push_back(std::move(row));
        }
        QMat ns = r == 1 ? QMat(1, std::vector<Rat>{Rat(1)}) : nullspace(M);
        if (ns.empty() || ns[0].size() != 1) return; // degenerate subset
        std::vector<Rat> wq(r);
        for (int j = 0; j < r; ++j) wq[j] = ns[j][0];
        std::vector<long> w = primitive(wq);
        long c = dot(w, Q[idx[0]]);
        bool lo = true, hi = true;
        for (int i = 0; i < N; ++i) {
            long v = dot(w, Q[i]);
            if (v < c) lo = false;
            if (v > c) hi = false;
        }
        if (!lo && !hi) return;
        if (!lo) { // flip so the polytope satisfies w·q >= c
            for (auto& x : w) x = -x;
            c = -c;
        }
        if (seen.insert({w, c}).second) raw.push_back({std::move(w), c});
    };
    auto rec = [&](auto&& self, int level, int start) -> void {
        if (level == r) {
            consider();
            return;
        }
        for (int i = start; i <= N - (r - level); ++i) {
            idx[level] = i;
            self(self, level + 1, i + 1);
        }
    };
    rec(rec, 0, 0);

    // vertices: points whose active facet normals span R^r
    std::vector<std::vector<int>> active(N);
    for (int fi = 0; fi < (int)raw.size(); ++fi)
        for (int i = 0; i < N; ++i)
            if (dot(raw[fi].w, Q[i]) == raw[fi].c) active[i].push_back(fi);
    std::vector<int> vert_of_point(N, -1);
    for (int i = 0; i < N; ++i) {
        if ((int)active[i].size() < r) continue;
        QMat M;
        for (int fi : active[i]) {
            std::vector<Rat> row(r);
            for (int j = 0; j < r; ++j) row[j] = Rat(raw[fi].w[j]);
            M.push_back(std::move(row));
        }
        if (rank_q(M) == r) {
            vert_of_point[i] = (int)P.vertices.size();
            P.vertices.push_back(i);
        }
    }

    // lift normals to the ambient space (support on pivot coordinates)
    for (const auto& rf : raw) {
        Facet F;
        F.normal.assign(m, 0);
        for (int t = 0; t < r; ++t) F.normal[piv[t]] = rf.w[t];
        F.offset = Rat(rf.c);
        for (int i = 0; i < N; ++i)
            if (vert_of_point[i] >= 0 && dot(rf.w, Q[i]) == rf.c)
                F.vertex_ids.push_back(vert_of_point[i]);
        P.facets.push_back(std::move(F));
    }
    return P;
}

LatticePolytope newton_polytope(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("newton_polytope: zero polynomial");
    std::vector<std::vector<long>> pts;
    for (const auto& [e, c] : f.terms)
        pts.emplace_back(e.begin(), e.end());
    return hull(std::move(pts));
}

std::vector<int> f_vector(const LatticePolytope& P) {
    const int r = P.dim;
    if (r > 5) throw std::invalid_argument("f_vector: dimension > 5");
    if (r <= 0) return {};
    std::set<std::set<int>> faces;
    for (const auto& F : P.facets)
        faces.insert(std::set<int>(F.vertex_ids.begin(), F.vertex_ids.end()));
    // close under intersection to get the whole face lattice
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::set<int>> cur(faces.begin(), faces.end());
        for (size_t a = 0; a < cur.size(); ++a)
            for (size_t b = a + 1; b < cur.size(); ++b) {
                std::set<int> in;
                std::set_intersection(cur[a].begin(), cur[a].end(),
                                      cur[b].begin(), cur[b].end(),
                                      std::inserter(in, in.begin()));
                if (!in.empty() && faces.insert(in).second) grew = true;
            }
    }
    std::vector<int> fv(r, 0);
    for (const auto& face : faces) {
        auto it = face.begin();
        const auto& p0 = P.points[P.vertices[*it]];
        QMat M;
        for (++it; it != face.end(); ++it) {
            const auto& p = P.points[P.vertices[*it]];
            std::vector<Rat> row(p.size());
            for (size_t j = 0; j < p.size(); ++j) row[j] = Rat(p[j] - p0[j]);
            M.push_back(std::move(row));
        }
        int fd = M.empty() ? 0 : rank_q(M);
        fv[fd] += 1;
    }
    return fv;
}

Poly initial_form(const Poly& f, const std::vector<Rat>& w) {
    if (f.is_zero()) throw std::invalid_argument("initial_form: zero polynomial");
    if (w.size() != f.vars.size())
        throw std::invalid_argument("initial_form: weight arity mismatch");
    bool first = true;
    Rat best;
    for (const auto& [e, c] : f.terms) {
        Rat v = 0;
        for (size_t i = 0; i < w.size(); ++i) v += w[i] * e[i];
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    std::vector<std::pair<Expo, Rat>> keep;
    for (const auto& [e, c] : f.terms) {
        Rat v = 0;
        for (size_t i = 0; i < w.size(); ++i) v += w[i] * e[i];
        if (v == best) keep.emplace_back(e, c);
    }
    return Poly::from_terms(f.vars, std::move(keep));
}

std::vector<std::vector<long>> facet_normals(const LatticePolytope& P) {
    // quotient by the all-ones lineality only when it is a lineality,
    // i.e. the coordinate sum is constant on the polytope
    bool homog = true;
    long s0 = 0;
    for (size_t i = 0; i < P.points.size() && homog; ++i) {
        long s = 0;
        for (long x : P.points[i]) s += x;
        if (i == 0) s0 = s;
        else if (s != s0) homog = false;
    }
    std::set<std::vector<long>> out;
    for (const auto& F : P.facets) {
        std::vector<long> w = F.normal;
        if (homog) {
            long mn = *std::min_element(w.begin(), w.end());
            for (auto& x : w) x -= mn;
        }
        long g = 0;
        for (long x : w) g = std::gcd(g, std::labs(x));
        if (g > 1)
            for (auto& x : w) x /= g;
        out.insert(std::move(w));
    }
    return {out.begin(), out.end()};
}

} // namespace logdisc
