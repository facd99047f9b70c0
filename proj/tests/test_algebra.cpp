#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blocktype/algebra.hpp"
#include "test_util.hpp"

using namespace blocktype;

TEST_CASE("bracket_basis matches the defining relation") {
    // q=1: [L[-1,i], L[1,0]] = (i+2) L[0,i]
    for (std::int64_t i = 0; i <= 5; ++i) {
        Element got = bracket_basis({1, false}, {-1, i}, {1, 0});
        CHECK(got == Element::basis({0, i}, Rational(i + 2)));
    }
    // alpha = beta = 0 kills the coefficient
    for (std::int64_t q = 1; q <= 4; ++q)
        CHECK(bracket_basis({q, false}, {0, 5}, {0, 3}).is_zero());
    // extended q=2: [L[2,0], L[-2,0]] = -8 L[0,0] + 1/2 c
    {
        Element got = bracket_basis({2, true}, {2, 0}, {-2, 0});
        Element want = Element::basis({0, 0}, -8);
        want.add_central(Rational(1, 2));
        CHECK(got == want);
    }
}

TEST_CASE("bracket handles nested and multi-term arguments") {
    const AlgebraCfg q1{1, false};
    // [L[-2,0], [L[2,0], L[3,0]]] = 7 L[3,0]
    Element inner = bracket(q1, Element::basis({2, 0}), Element::basis({3, 0}));
    Element got = bracket(q1, Element::basis({-2, 0}), inner);
    CHECK(got == Element::basis({3, 0}, 7));

    // q=3: [L[1,0] + L[0,1], L[1,2]] = -2 L[2,2] + 4 L[1,3]
    const AlgebraCfg q3{3, false};
    Element x = Element::basis({1, 0}) + Element::basis({0, 1});
    Element want = Element::basis({2, 2}, -2) + Element::basis({1, 3}, 4);
    CHECK(bracket(q3, x, Element::basis({1, 2})) == want);
}

TEST_CASE("bracket rejects central components in the plain algebra") {
    const AlgebraCfg plain{1, false};
    Element bad = Element::central(1);
    CHECK_THROWS_AS(bracket(plain, bad, Element::basis({1, 0})), invalid_element_error);
}

TEST_CASE("antisymmetry and bilinearity on random elements") {
    std::mt19937 rng(20250811);
    const AlgebraCfg cfg{2, true};
    const Window w{3, 3};
    for (int n = 0; n < 50; ++n) {
        Element x = testutil::random_element(rng, w, 4, true);
        Element y = testutil::random_element(rng, w, 4, true);
        Element z = testutil::random_element(rng, w, 3, true);
        CHECK((bracket(cfg, x, y) + bracket(cfg, y, x)).is_zero());
        Rational a = testutil::random_rational(rng), b = testutil::random_rational(rng);
        Element lhs = bracket(cfg, a * x + b * y, z);
        Element rhs = a * bracket(cfg, x, z) + b * bracket(cfg, y, z);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("ad_pow") {
    // q=2: ad_{L[0,0]}^N L[1,0] = 2^N L[1,0]
    const AlgebraCfg q2{2, false};
    Element v = Element::basis({1, 0});
    CHECK(ad_pow(q2, Element::basis({0, 0}), v, 6) == Element::basis({1, 0}, 64));
    // k = 0 is the identity
    std::mt19937 rng(7);
    Element x = testutil::random_element(rng, {3, 3});
    CHECK(ad_pow(q2, Element::basis({2, 1}), x, 0) == x);
    // q=1: each application of ad_{L[0,1]} to L[1,j] multiplies by (1+q) = 2
    const AlgebraCfg q1{1, false};
    CHECK(ad_pow(q1, Element::basis({0, 1}), v, 2) == Element::basis({1, 2}, 4));
}

TEST_CASE("jacobi identity on basis triples") {
    // Spot coverage here; the full Window(4,4) sweep lives in the acceptance suite.
    for (std::int64_t q : {1, 2, 3})
        for (bool ext : {false, true}) {
            const AlgebraCfg cfg{q, ext};
            const Window w{3, 2};
            const auto idx = w.indices();
            std::mt19937 rng(99 + q);
            std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
            for (int n = 0; n < 200; ++n) {
                Element x = Element::basis(idx[pick(rng)]);
                Element y = Element::basis(idx[pick(rng)]);
                Element z = Element::basis(idx[pick(rng)]);
                CHECK(jacobi_residual(cfg, x, y, z).is_zero());
            }
        }
    // degenerate triple and the central cancellation case
    const AlgebraCfg ext{1, true};
    Element x = Element::basis({1, 0});
    CHECK(jacobi_residual(ext, x, x, Element::basis({2, 1})).is_zero());
    CHECK(jacobi_residual(ext, x, Element::basis({-1, 0}), Element::basis({0, 0})).is_zero());
}

TEST_CASE("centrality of c") {
    const AlgebraCfg ext{2, true};
    std::mt19937 rng(3);
    for (int n = 0; n < 20; ++n) {
        Element x = testutil::random_element(rng, {3, 3}, 4, true);
        CHECK(bracket(ext, Element::central(1), x).is_zero());
        CHECK(bracket(ext, x, Element::central(Rational(5, 3))).is_zero());
    }
}

TEST_CASE("degree_component and the grading") {
    Element x = Element::basis({2, 1}) + Element::basis({-1, 0}, 3);
    CHECK(degree_component(x, 2) == Element::basis({2, 1}));
    CHECK(degree_component(x, 0).is_zero());
    CHECK(degree_component(Element::central(1), 0) == Element::central(1));

    // bracket maps degree a x degree b into degree a+b
    const AlgebraCfg cfg{1, false};
    for (std::int64_t a = -2; a <= 2; ++a)
        for (std::int64_t b = -2; b <= 2; ++b) {
            Element br = bracket_basis(cfg, {a, 1}, {b, 2});
            for (std::int64_t g = -5; g <= 5; ++g)
                if (g != a + b) CHECK(degree_component(br, g).is_zero());
        }

    // components sum back to the element
    std::mt19937 rng(11);
    for (int n = 0; n < 10; ++n) {
        Element y = testutil::random_element(rng, {4, 3}, 6, true);
        Element sum;
        for (std::int64_t g = -4; g <= 4; ++g) sum += degree_component(y, g);
        CHECK(sum == y);
    }
}
