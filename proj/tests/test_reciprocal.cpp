#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "logdisc/reciprocal.hpp"

#include <random>

using namespace logdisc;
using namespace logdisc::testing;

namespace {

long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// exact evaluation of g at gamma(x) = (1/ell_0(x), ..., 1/ell_n(x));
// x must avoid the arrangement
Rat eval_at_gamma(const Poly& g, const Arrangement& arr,
                  const std::vector<Rat>& x) {
    auto l = arr.ell(x);
    std::vector<Rat> y(l.size());
    for (size_t i = 0; i < l.size(); ++i) {
        REQUIRE(l[i] != 0);
        y[i] = Rat(1) / l[i];
    }
    return eval(g, y);
}

std::vector<Rat> random_point(int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-400, 400), den(1, 40);
    std::vector<Rat> x(d);
    for (auto& v : x) v = rq(num(rng), den(rng));
    return x;
}

} // namespace

TEST_CASE("kernel basis: defining identity and canonical shape") {
    SUBCASE("simplex: one-dimensional kernel") {
        Arrangement arr = simplex(3);
        QMat K = kernel_basis(arr.A);
        REQUIRE(K.size() == 4);
        REQUIRE(K[0].size() == 1);
        // A^T K = 0 exactly
        QMat prod = matmul(transpose(arr.A), K);
        for (auto& row : prod)
            for (auto& v : row) CHECK(v == 0);
        // the simplex A has rows e_1..e_d, (1..1): kernel is (1,...,1,-1)-type
        CHECK(K[0][0] == K[1][0]);
        CHECK(K[1][0] == K[2][0]);
        CHECK(K[3][0] == -K[0][0]);
    }
    SUBCASE("M0,5: 3-dimensional kernel, A^T A_perp = 0") {
        Arrangement arr = m05();
        QMat K = kernel_basis(arr.A);
        REQUIRE(K.size() == 5);
        REQUIRE(K[0].size() == 3);
        QMat prod = matmul(transpose(arr.A), K);
        for (auto& row : prod)
            for (auto& v : row) CHECK(v == 0);
        CHECK(rank_q(K) == 3);
    }
    SUBCASE("rank-deficient input is rejected") {
        QMat A = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}, {Rat(3), Rat(6)}};
        CHECK_THROWS_AS(kernel_basis(A), std::invalid_argument);
    }
    SUBCASE("uniform A has all maximal minors of A_perp nonzero") {
        std::mt19937_64 rng(101);
        for (int rep = 0; rep < 5; ++rep) {
            Arrangement arr = random_arrangement(2, 5, rng);
            QMat K = kernel_basis(arr.A); // 5 x 3
            // A uniform (ker has no sparse vectors) iff every 3x3 minor != 0
            bool uniform_A = validate(arr).uniform_A;
            bool all_nonzero = true;
            for (int a = 0; a < 5 && all_nonzero; ++a)
                for (int b2 = a + 1; b2 < 5 && all_nonzero; ++b2)
                    for (int c = b2 + 1; c < 5 && all_nonzero; ++c) {
                        QMat M = {K[a], K[b2], K[c]};
                        if (det_bareiss(M) == 0) all_nonzero = false;
                    }
            CHECK(uniform_A == all_nonzero);
        }
    }
}

TEST_CASE("circuit generators vanish on the reciprocal linear space") {
    std::mt19937_64 rng(7);
    for (auto [d, n1] : {std::pair{1, 4}, std::pair{2, 5}, std::pair{3, 5}}) {
        Arrangement arr = random_arrangement(d, n1, rng);
        int skipped = 0;
        auto gens = circuit_generators(arr, &skipped);
        CHECK(skipped == 0); // doubly uniform arrangements have uniform L
        CHECK((long)gens.size() == binom(n1, d + 2));
        for (const auto& gen : gens) {
            CHECK((int)gen.support.size() == d + 2);
            CHECK(gen.g.n_terms() == (size_t)(d + 2));
            CHECK(gen.g.is_homogeneous());
            CHECK(gen.g.total_degree() == d + 1);
            for (const auto& lam : gen.lambda) CHECK(lam != 0);
        }
        // exact evaluation at 50 random rational points off the arrangement
        int tested = 0;
        while (tested < 50) {
            auto x = random_point(d, rng);
            auto l = arr.ell(x);
            bool off = true;
            for (const auto& v : l)
                if (v == 0) off = false;
            if (!off) continue;
            ++tested;
            for (const auto& gen : gens)
                CHECK(eval_at_gamma(gen.g, arr, x) == 0);
        }
    }
}

TEST_CASE("circuit generators: three points on a line give one quadric") {
    Arrangement arr = d1_points({Rat(0), Rat(-1), Rat(-2)});
    auto gens = circuit_generators(arr);
    REQUIRE(gens.size() == 1);
    const Poly& g = gens[0].g;
    CHECK(g.total_degree() == 2);
    CHECK(g.n_terms() == 3);
    // each term is y_i y_j, i != j
    for (const auto& [e, c] : g.terms) {
        int mx = 0;
        for (int v : e) mx = std::max(mx, v);
        CHECK(mx == 1);
    }
}

TEST_CASE("plucker substitution") {
    Arrangement arr = m05();
    std::vector<Rat> u = {Rat(1), Rat(2), Rat(3), Rat(5), Rat(7)};
    SUBCASE("malformed subsets are rejected") {
        CHECK_THROWS_AS(plucker_substitution(arr, {0, 1}, u),
                        std::invalid_argument);
        CHECK_THROWS_AS(plucker_substitution(arr, {0, 1, 1}, u),
                        std::invalid_argument);
        CHECK_THROWS_AS(plucker_substitution(arr, {0, 1, 9}, u),
                        std::invalid_argument);
    }
    SUBCASE("zero u_i on I is rejected") {
        std::vector<Rat> u0 = u;
        u0[2] = 0;
        CHECK_THROWS_AS(plucker_substitution(arr, {0, 2, 4}, u0),
                        std::domain_error);
    }
    SUBCASE("uniform arrangement gives nonzero values at generic u") {
        std::mt19937_64 rng(3);
        Arrangement r = random_arrangement(2, 5, rng);
        CHECK(validate(r).uniform_A);
        for (auto I : {std::vector<int>{0, 1, 2}, std::vector<int>{1, 3, 4},
                       std::vector<int>{0, 2, 4}})
            CHECK(plucker_substitution(r, I, u) != 0);
    }
    SUBCASE("homogeneity: u -> 2u scales by 2^{-(n+1-d)}") {
        std::vector<Rat> u2(u.size());
        for (size_t i = 0; i < u.size(); ++i) u2[i] = Rat(2) * u[i];
        std::vector<int> I = {0, 1, 4};
        Rat a = plucker_substitution(arr, I, u);
        Rat b2 = plucker_substitution(arr, I, u2);
        CHECK(b2 * Rat(8) == a);
    }
}
