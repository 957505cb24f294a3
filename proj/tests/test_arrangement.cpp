#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "logdisc/arrangement.hpp"
#include "logdisc/jsonio.hpp"

using namespace logdisc;
using namespace logdisc::testing;

TEST_CASE("load/construct and structural errors") {
    Arrangement m = m05();
    CHECK(m.d == 2);
    CHECK(m.n_plus_1 == 5);
    // document round trip
    Arrangement m2 = load_arrangement(arrangement_to_doc(m));
    CHECK(m2.A == m.A);
    CHECK(m2.b == m.b);
    CHECK(m2.labels == m.labels);

    // d=1 three points
    Arrangement p3 = load_arrangement(Json::parse(
        R"({"d":1,"b":["0","-1","-2"],"A":[["1"],["1"],["1"]]})"));
    CHECK(p3.n_plus_1 == 3);

    // all-zero row: not essential
    try {
        make_arrangement(2, QMat{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
                         {Rat(1), Rat(0), Rat(0)});
        FAIL("expected rejection of zero linear part");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("not essential") != std::string::npos);
    }
    // rank-deficient: central arrangement x1, x2, x1+x2
    CHECK_THROWS_AS(make_arrangement(2, QMat{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}},
                                     {Rat(0), Rat(0), Rat(0)}),
                    std::invalid_argument);
    // repeated hyperplane up to scaling
    CHECK_THROWS_AS(make_arrangement(2, QMat{{Rat(1), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(1)}},
                                     {Rat(1), Rat(2), Rat(0)}),
                    std::invalid_argument);
}

TEST_CASE("validate: uniformity and flats at infinity") {
    ValidationReport rep = validate(m05());
    CHECK(rep.essential);
    CHECK_FALSE(rep.uniform_A); // rows for x1 and x1-1 share linear part
    CHECK_FALSE(rep.doubly_uniform);
    CHECK(rep.flats_at_infinity);
    REQUIRE(rep.witness.has_value());
    CHECK(*rep.witness == std::vector<int>{0, 2});

    CHECK(validate(simplex(3)).essential);

    std::mt19937_64 rng(5);
    Arrangement r = random_arrangement(2, 5, rng);
    ValidationReport rr = validate(r);
    CHECK(rr.doubly_uniform);
    CHECK_FALSE(rr.flats_at_infinity);
}

TEST_CASE("characteristic polynomial and counts") {
    Poly t = Poly::variable("t");
    CHECK(characteristic_polynomial(m05()) == t * t - Rat(5) * t + Poly::constant(6));
    CHECK(region_count(m05()) == 12);
    CHECK(ml_degree(m05()) == 2);

    CHECK(characteristic_polynomial(d1_points({Rat(0), Rat(1), Rat(2)})) ==
          t - Poly::constant(3));

    // simplex: all proper subsets central and independent, the full set not;
    // chi(t) = ((t-1)^{d+1} - (-1)^{d+1})/t, so chi(1) = (-1)^d and ml = 1
    for (int d = 2; d <= 4; ++d) {
        Poly expect = divexact(pow(t - Poly::constant(1), d + 1) -
                                   Poly::constant((d % 2) ? Rat(1) : Rat(-1)),
                               t);
        CHECK(characteristic_polynomial(simplex(d)) == expect);
        CHECK(ml_degree(simplex(d)) == 1);
    }

    // generic doubly uniform: ml degree C(n, d)
    std::mt19937_64 rng(17);
    Arrangement g24 = random_arrangement(2, 5, rng);
    CHECK(ml_degree(g24) == 6); // C(4,2)
}

TEST_CASE("invariance properties of chi") {
    Arrangement m = m05();
    Poly chi = characteristic_polynomial(m);
    // row permutation
    QMat A2 = {m.A[4], m.A[2], m.A[0], m.A[3], m.A[1]};
    std::vector<Rat> b2 = {m.b[4], m.b[2], m.b[0], m.b[3], m.b[1]};
    CHECK(characteristic_polynomial(make_arrangement(2, A2, b2)) == chi);
    // scaling a form
    QMat A3 = m.A;
    std::vector<Rat> b3 = m.b;
    for (auto& x : A3[1]) x *= Rat(7, 3);
    b3[1] *= Rat(7, 3);
    CHECK(characteristic_polynomial(make_arrangement(2, A3, b3)) == chi);
}

TEST_CASE("doubly uniform implies no flats at infinity") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10; ++i) {
        Arrangement r = random_arrangement(2, 4 + (int)(rng() % 3), rng);
        ValidationReport rep = validate(r);
        REQUIRE(rep.doubly_uniform);
        CHECK_FALSE(rep.flats_at_infinity);
    }
}

TEST_CASE("flats enumeration on M0,5") {
    auto fl = dependent_flats(m05());
    // triple points: {0,1,4} at origin, {2,3,4} at (1,1)
    REQUIRE(fl.size() == 2);
    CHECK(fl[0] == std::vector<int>{0, 1, 4});
    CHECK(fl[1] == std::vector<int>{2, 3, 4});
    auto inf = infinity_flats(m05());
    // parallel families {0,2} (vertical) and {1,3} (horizontal); the family
    // {1,3,4}? no: x2 and x2-x1 are not parallel
    REQUIRE(inf.size() == 2);
    CHECK(inf[0] == std::vector<int>{0, 2});
    CHECK(inf[1] == std::vector<int>{1, 3});
}

TEST_CASE("subset cap") {
    std::mt19937_64 rng(3);
    Arrangement big = random_arrangement(2, 17, rng, false);
    CHECK_THROWS_AS(characteristic_polynomial(big), std::domain_error);
}
