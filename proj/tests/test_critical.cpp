#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "logdisc/critical.hpp"

using namespace logdisc;
using namespace logdisc::testing;

static std::vector<std::vector<Cplx>> certified_points(const CriticalSolutions& s) {
    std::vector<std::vector<Cplx>> out;
    for (size_t i = 0; i < s.points.size(); ++i)
        if (s.status[i] == PointStatus::certified) out.push_back(s.points[i]);
    return out;
}

static std::vector<Cplx> cu(std::initializer_list<double> v) {
    std::vector<Cplx> out;
    for (double x : v) out.push_back(Cplx(x, 0.0));
    return out;
}

TEST_CASE("cleared system shape") {
    auto sys = cleared_system(m05());
    REQUIRE(sys.size() == 2);
    for (auto& e : sys) {
        // degree <= n in x for each cleared equation
        CHECK(e.degree_in("x1") + 0 <= 4);
        CHECK(e.degree_in("x2") <= 4);
    }
    // linear in each u_i
    for (int i = 0; i < 5; ++i) CHECK(sys[0].degree_in("u" + std::to_string(i)) <= 1);
}

TEST_CASE("gradient: exact values and wall errors") {
    Arrangement m = m05();
    // on the wall x2 - x1 = 0
    CHECK_THROWS_AS(gradient(m, std::vector<Rat>(5, Rat(1)),
                             std::vector<Rat>{Rat(1, 2), Rat(1, 2)}),
                    std::domain_error);
    // u = 0 gives the zero vector
    auto g0 = gradient(m, std::vector<Rat>(5, Rat(0)), {Rat(1, 3), Rat(1, 5)});
    CHECK(g0 == std::vector<Rat>{Rat(0), Rat(0)});
    // nonzero at a generic point
    auto g1 = gradient(m, std::vector<Rat>(5, Rat(1)), {Rat(1, 3), Rat(1, 5)});
    CHECK((g1[0] != 0 || g1[1] != 0));
    // simplex d=1: unique critical point of u0 log(x) + u1 log(x+1) at
    // x = -u0/(u0+u1); gradient vanishes exactly
    Arrangement s = d1_points({Rat(0), Rat(-1)});
    auto gs = gradient(s, {Rat(2), Rat(3)}, {Rat(-2, 5)});
    CHECK(gs == std::vector<Rat>{Rat(0)});
}

TEST_CASE("hessian: Cauchy-Binet equals direct determinant") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dist(-7, 7);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 1 + (int)(rng() % 3);
        Arrangement arr = random_arrangement(d, d + 2 + (int)(rng() % 2), rng, false);
        std::vector<Rat> u, x;
        for (int i = 0; i < arr.n_plus_1; ++i) u.push_back(Rat(dist(rng)));
        for (int j = 0; j < d; ++j) x.push_back(rq(dist(rng), 1 + (long)(rng() % 5)));
        try {
            Rat h1 = hessian_det(arr, u, x);
            Rat h2 = hessian_det_direct(arr, u, x);
            CHECK(h1 == h2);
        } catch (const std::domain_error&) {
            --trial; // point on a wall; resample
        }
    }
    // u = 0 → 0
    Arrangement m = m05();
    CHECK(hessian_det(m, std::vector<Rat>(5, Rat(0)), {Rat(1, 3), Rat(1, 5)}) == 0);
    // d=1: Hessian = Σ a_i² u_i / ℓ_i²
    Arrangement s = d1_points({Rat(0), Rat(1), Rat(3)});
    std::vector<Rat> u = {Rat(1), Rat(2), Rat(5)}, x = {Rat(2)};
    Rat expect = Rat(1) / Rat(4) + Rat(2) / Rat(1) + Rat(5) / Rat(1);
    CHECK(hessian_det(s, u, x) == expect);
}

TEST_CASE("solve_critical d=1") {
    Arrangement s = d1_points({Rat(0), Rat(1), Rat(3), Rat(7)});
    auto sol = solve_critical(s, cu({1, 2, 3, 4}), 0);
    CHECK(sol.count_expected == 3);
    CHECK(sol.certified_count() == 3);
    for (auto r : sol.residuals) CHECK(r < 1e-10);
}

TEST_CASE("solve_critical M0,5") {
    auto sol = solve_critical(m05(), cu({2, 3, 5, 7, -1}), 0);
    CHECK(sol.count_expected == 2);
    CHECK(sol.certified_count() == 2);
    for (size_t i = 0; i < sol.points.size(); ++i) {
        CHECK(sol.residuals[i] < 1e-10);
        CHECK(sol.min_wall_distance[i] > 1e-8);
    }
}

TEST_CASE("solve_critical simplex and generic counts") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> dist(1, 9);
    for (int d = 2; d <= 3; ++d) {
        Arrangement s = simplex(d);
        std::vector<Cplx> u;
        for (int i = 0; i <= d; ++i) u.push_back(Cplx((double)dist(rng), 0));
        auto sol = solve_critical(s, u, 1);
        CHECK(sol.count_expected == 1);
        CHECK(sol.certified_count() == 1);
    }
    // doubly uniform (2,4): C(4,2) = 6 points
    Arrangement g = random_arrangement(2, 5, rng);
    std::vector<Cplx> u;
    for (int i = 0; i < 5; ++i) u.push_back(Cplx((double)dist(rng) + 0.5, 0));
    auto sol = solve_critical(g, u, 2);
    CHECK(sol.count_expected == 6);
    CHECK(sol.certified_count() == 6);
    // d=3 homotopy: doubly uniform (3,4): C(4,3) = 4 points
    Arrangement g3 = random_arrangement(3, 5, rng);
    std::vector<Cplx> u3;
    for (int i = 0; i < 5; ++i) u3.push_back(Cplx((double)dist(rng) + 0.25, 0));
    auto sol3 = solve_critical(g3, u3, 3);
    CHECK(sol3.count_expected == 4);
    CHECK(sol3.certified_count() == 4);
}

TEST_CASE("scale invariance of critical points") {
    Arrangement m = m05();
    auto a = solve_critical(m, cu({2, 3, 5, 7, -1}), 4);
    auto b = solve_critical(m, cu({6, 9, 15, 21, -3}), 5);
    auto ca = certified_points(a), cb = certified_points(b);
    REQUIRE(ca.size() == cb.size());
    for (auto& p : ca) {
        double best = 1e300;
        for (auto& q : cb) {
            double dd2 = std::norm(p[0] - q[0]) + std::norm(p[1] - q[1]);
            best = std::min(best, std::sqrt(dd2));
        }
        CHECK(best < 1e-8);
    }
}

TEST_CASE("affine equivariance") {
    // x -> M x + c: points transform by the inverse map
    Arrangement m = m05();
    QMat M = {{Rat(2), Rat(1)}, {Rat(1), Rat(1)}}; // det 1
    std::vector<Rat> c = {Rat(1), Rat(-1)};
    // new forms: ℓ'(y) = ℓ(M y + c): A' = A M, b' = b + A c
    QMat A2(m.n_plus_1, std::vector<Rat>(2));
    std::vector<Rat> b2 = m.b;
    for (int i = 0; i < m.n_plus_1; ++i) {
        for (int j = 0; j < 2; ++j)
            A2[i][j] = m.A[i][0] * M[0][j] + m.A[i][1] * M[1][j];
        b2[i] += m.A[i][0] * c[0] + m.A[i][1] * c[1];
    }
    Arrangement m2 = make_arrangement(2, A2, b2);
    auto sa = solve_critical(m, cu({2, 3, 5, 7, -1}), 6);
    auto sb = solve_critical(m2, cu({2, 3, 5, 7, -1}), 7);
    auto ca = certified_points(sa), cb = certified_points(sb);
    REQUIRE(ca.size() == cb.size());
    for (auto& q : cb) {
        // map back: x = M y + c
        Cplx x0 = 2.0 * q[0] + 1.0 * q[1] + 1.0;
        Cplx x1 = 1.0 * q[0] + 1.0 * q[1] - 1.0;
        double best = 1e300;
        for (auto& p : ca)
            best = std::min(best, std::sqrt(std::norm(p[0] - x0) + std::norm(p[1] - x1)));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("membership verdicts on M0,5") {
    Arrangement m = m05();
    CHECK(membership_numeric(m, std::vector<Rat>(5, Rat(1)), 0) == Verdict::outside);
    // on the discriminant: u = (1,1,1,1,-2) is a root of Eq. (1.4)
    CHECK(membership_numeric(m, std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(1), Rat(-2)},
                             0) == Verdict::near_discriminant);
    // random positive u stays outside
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> dist(1, 20);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rat> u;
        for (int i = 0; i < 5; ++i) u.push_back(rq(dist(rng), 1 + (long)(rng() % 3)));
        CHECK(membership_numeric(m, u, 100 + t) == Verdict::outside);
    }
}

TEST_CASE("varchenko_check") {
    Arrangement m = m05();
    auto rep = varchenko_check(m, {Rat(1), Rat(2), Rat(3), Rat(4), Rat(5)}, 0);
    CHECK(rep.pass);
    CHECK(rep.real_count == 2);

    auto rep2 = varchenko_check(d1_points({Rat(0), Rat(1), Rat(2), Rat(3)}),
                                std::vector<Rat>(4, Rat(1)), 0);
    CHECK(rep2.pass);
    CHECK(rep2.real_count == 3);

    auto rep3 = varchenko_check(simplex(2), {Rat(1), Rat(1), Rat(2)}, 0);
    CHECK(rep3.pass);
    CHECK(rep3.real_count == 1);

    CHECK_THROWS_AS(varchenko_check(m, {Rat(1), Rat(-1), Rat(1), Rat(1), Rat(1)}, 0),
                    std::invalid_argument);
}

TEST_CASE("certified count equals ml_degree across random u (d<=2)") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    Arrangement arrs[2] = {m05(), random_arrangement(2, 6, rng)};
    for (auto& arr : arrs) {
        int ml = ml_degree(arr);
        for (int t = 0; t < 10; ++t) {
            std::vector<Cplx> u;
            for (int i = 0; i < arr.n_plus_1; ++i) u.push_back(Cplx(ud(rng), ud(rng)));
            auto sol = solve_critical(arr, u, 1000 + t);
            CHECK(sol.certified_count() == ml);
        }
    }
}
