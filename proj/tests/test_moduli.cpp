#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "logdisc/moduli.hpp"
#include "logdisc/polytope.hpp"

#include <random>

using namespace logdisc;
using namespace logdisc::testing;

namespace {

Rat rand_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-60, 60), den(1, 20);
    return rq(num(rng), den(rng));
}

} // namespace

TEST_CASE("m0m arrangement: m = 5 reproduces the five-line arrangement") {
    auto [arr, map] = m0m_arrangement(5);
    CHECK(arr.d == 2);
    CHECK(arr.n_plus_1 == 5);
    CHECK(map.pairs == std::vector<std::pair<int, int>>{
                           {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(map.labels ==
          std::vector<std::string>{"s13", "s14", "s23", "s24", "s34"});
    Arrangement ref = m05();
    CHECK(arr.A == ref.A);
    CHECK(arr.b == ref.b);
    CHECK(map.index_of(3, 1) == 0);
    CHECK(map.index_of(1, 2) == -1);
}

TEST_CASE("m0m arrangement: counts, ml degrees, error cases") {
    CHECK_THROWS_AS(m0m_arrangement(4), std::invalid_argument);
    auto [a5, m5] = m0m_arrangement(5);
    auto [a6, m6] = m0m_arrangement(6);
    CHECK(a6.d == 3);
    CHECK(a6.n_plus_1 == 9); // 6*3/2 non-constant minors
    CHECK((int)m6.pairs.size() == 9);
    CHECK(ml_degree(a5) == 2); // (m-3)!
    CHECK(ml_degree(a6) == 6);
}

TEST_CASE("relabeling the middle marked points is a symmetry") {
    // swapping marked points 3 and 4 swaps the matrix columns (1:x1), (1:x2),
    // i.e. x1 <-> x2; the induced coordinate action s13<->s14, s23<->s24
    // leaves ml degree and the discriminant invariant
    auto [arr, map] = m0m_arrangement(5);
    QMat A2 = arr.A;
    std::vector<Rat> b2 = arr.b;
    for (int i = 0; i < 5; ++i) std::swap(A2[i][0], A2[i][1]);
    Arrangement swapped = make_arrangement(2, A2, b2, arr.labels);
    CHECK(ml_degree(swapped) == ml_degree(arr));
    // u-space permutation induced by the relabeling: 0<->1, 2<->3, 4 fixed
    Poly delta = m05_discriminant();
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Rat> u(5);
        for (auto& v : u) v = rand_rat(rng);
        std::vector<Rat> pu = {u[1], u[0], u[3], u[2], u[4]};
        CHECK(eval(delta, u) == eval(delta, pu));
    }
}

TEST_CASE("Gram minor identity") {
    SUBCASE("all-ones point gives 45") {
        auto rep = gram_minor_check(std::vector<Rat>(5, Rat(1)));
        CHECK(rep.all_equal);
        CHECK(rep.delta == 45);
        for (const auto& mv : rep.minors) CHECK(mv == 45);
    }
    SUBCASE("the exact witness gives -7/16") {
        auto rep = gram_minor_check(
            {rq(-1, 2), Rat(1), Rat(2), rq(-1, 2), Rat(-1)});
        CHECK(rep.all_equal);
        CHECK(rep.delta == rq(-7, 16));
    }
    SUBCASE("row sums vanish and G is symmetric") {
        auto rep = gram_minor_check({Rat(1), Rat(2), Rat(3), Rat(5), Rat(7)});
        for (int i = 0; i < 5; ++i) {
            Rat s = 0;
            CHECK(rep.G[i][i] == 0);
            for (int j = 0; j < 5; ++j) {
                s += rep.G[i][j];
                CHECK(rep.G[i][j] == rep.G[j][i]);
            }
            CHECK(s == 0);
        }
    }
    SUBCASE("100 random rational points") {
        std::mt19937_64 rng(17);
        for (int rep_i = 0; rep_i < 100; ++rep_i) {
            std::vector<Rat> u(5);
            for (auto& v : u) v = rand_rat(rng);
            auto rep = gram_minor_check(u);
            CHECK(rep.all_equal);
        }
    }
    SUBCASE("arity is checked") {
        CHECK_THROWS_AS(gram_minor_check({Rat(1)}), std::invalid_argument);
    }
}

TEST_CASE("soft limit weights") {
    CHECK(soft_limit_weight(5, 4) == std::vector<int>{0, 1, 0, 1, 1});
    CHECK(soft_limit_weight(5, 3) == std::vector<int>{1, 0, 1, 0, 1});
    CHECK_THROWS_AS(soft_limit_weight(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(soft_limit_weight(5, 5), std::invalid_argument);
    for (int m : {5, 6, 7})
        for (int k = 3; k <= m - 1; ++k) {
            auto w = soft_limit_weight(m, k);
            CHECK((int)w.size() == m * (m - 3) / 2);
            int ones = 0;
            for (int x : w) ones += x;
            CHECK(ones == m - 2); // pairs containing k
        }
}

TEST_CASE("soft limit initial form of the M0,5 discriminant") {
    Poly delta = m05_discriminant();
    auto wk = soft_limit_weight(5, 4);
    std::vector<Rat> w(wk.begin(), wk.end());
    Poly init = initial_form(delta, w);
    // (s14 s23 + s13 s24 + s13 s34 + s23 s34)^2 - 4 s13 s14 s23 s24.
    // Derivation: with w = (0,1,0,1,1) the degenerate critical system fixes
    // x1 = s13/(s13+s23); the discriminant of the remaining x2-quadratic,
    // cleared by (s13+s23)^2, expands to exactly this polynomial (the base of
    // the square is the sum of the four weight-one products, as it must be
    // for a w-homogeneous initial form).
    auto S = [](const char* n) { return Poly::variable(n); };
    Poly q = S("s14") * S("s23") + S("s13") * S("s24") + S("s13") * S("s34") +
             S("s23") * S("s34");
    Poly want = q * q - Rat(4) * S("s13") * S("s14") * S("s23") * S("s24");
    CHECK(canonicalize(init) == canonicalize(want));
    // the k = 3 weight is the image under the 3<->4 relabeling
    auto w3k = soft_limit_weight(5, 3);
    std::vector<Rat> w3(w3k.begin(), w3k.end());
    Poly init3 = initial_form(delta, w3);
    // apply s13<->s14, s23<->s24 to init3 and compare with init
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Rat> u(5);
        for (auto& v : u) v = rand_rat(rng);
        std::vector<Rat> pu = {u[1], u[0], u[3], u[2], u[4]};
        CHECK(eval(init3, pu) == eval(init, u));
    }
}

TEST_CASE("m = 6 soft limit recipe (certified on random lines)") {
    auto rep = soft_limit_m06(0);
    CHECK(rep.completed);
    CHECK(rep.factor_degree == 18);
    CHECK(rep.product_degree == 30);
    CHECK(rep.delta_multiplicity_exactly_three);
    CHECK(!rep.stripped.empty());
}
