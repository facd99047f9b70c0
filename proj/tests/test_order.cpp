#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blocktype/order.hpp"
#include "test_util.hpp"

using namespace blocktype;

TEST_CASE("the total order") {
    CHECK(precedes({-1, 0}, {0, 0}));
    CHECK(precedes({0, 1}, {0, 0}));  // same alpha, larger i is smaller
    CHECK(!precedes({0, 0}, {0, 0}));

    // totality and transitivity on random triples
    std::mt19937 rng(41);
    const Window w{6, 6};
    for (int n = 0; n < 300; ++n) {
        BasisIndex a = testutil::random_index(rng, w), b = testutil::random_index(rng, w),
                   c = testutil::random_index(rng, w);
        if (a != b) CHECK(precedes(a, b) != precedes(b, a));
        if (precedes(a, b) && precedes(b, c)) CHECK(precedes(a, c));
    }
}

TEST_CASE("min_term") {
    Element x = Element::basis({-1, 2}) + Element::basis({-1, 5}) + Element::basis({0, 0});
    auto [idx, coeff] = min_term(x);
    CHECK(idx == BasisIndex{-1, 5});
    CHECK(coeff == 1);

    auto [i2, c2] = min_term(Element::basis({3, 0}, 7));
    CHECK(i2 == BasisIndex{3, 0});
    CHECK(c2 == 7);

    auto [i3, c3] = min_term(Element::basis({0, 0}) + Element::basis({0, 1}));
    CHECK(i3 == BasisIndex{0, 1});

    CHECK_THROWS_AS(min_term(Element{}), no_minimal_term_error);
    CHECK_THROWS_AS(min_term(Element::central(2)), no_minimal_term_error);
}

TEST_CASE("minimal terms add under bracketing of basis vectors") {
    const AlgebraCfg cfg{2, false};
    std::mt19937 rng(42);
    const Window w{4, 3};
    for (int n = 0; n < 200; ++n) {
        BasisIndex a = testutil::random_index(rng, w), b = testutil::random_index(rng, w);
        Element br = bracket_basis(cfg, a, b);
        if (br.is_zero()) continue;
        auto [idx, coeff] = min_term(br);
        CHECK(idx == BasisIndex{a.alpha + b.alpha, a.i + b.i});
    }
}

TEST_CASE("local_finiteness classifies span{L[0,0]}") {
    const AlgebraCfg cfg{1, false};
    CHECK(local_finiteness(cfg, Element::basis({0, 0}, 5)).locally_finite);
    CHECK(local_finiteness(cfg, Element{}).locally_finite);

    // f = L[0,1]: witness L[1,0], iterates live on distinct basis vectors
    auto v = local_finiteness(cfg, Element::basis({0, 1}), 6);
    CHECK(!v.locally_finite);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == BasisIndex{1, 0});
    CHECK(v.iterates.size() == 7);
    // iterate k is (1+q)^k L[1,k]
    CHECK(v.iterates[3] == Element::basis({1, 3}, 8));
}

TEST_CASE("local_finiteness returns LocallyFinite exactly on span{L[0,0]}") {
    // every single- or two-term element of Window(3,3) outside the span fails
    for (std::int64_t q : {1, 2}) {
        const AlgebraCfg cfg{q, false};
        const Window w{3, 3};
        std::mt19937 rng(1234 + q);
        for (int n = 0; n < 60; ++n) {
            Element f = testutil::random_element(rng, w, 3);
            bool in_span = true;
            for (const auto& [b, c] : f.terms()) in_span = in_span && b == BasisIndex{0, 0};
            auto verdict = local_finiteness(cfg, f);
            CHECK(verdict.locally_finite == in_span);
            if (!verdict.locally_finite) {
                CHECK(verdict.witness.has_value());
                CHECK(verdict.iterates.size() == std::size_t(verdict.depth) + 1);
            }
        }
    }
}

TEST_CASE("local_nilpotency") {
    // f = L[0,0], q=2, K=3: certificate 8 L[1,0]
    const AlgebraCfg q2{2, false};
    auto r = local_nilpotency(q2, Element::basis({0, 0}), 3);
    CHECK(!r.locally_nilpotent);
    CHECK(r.certificate == Element::basis({1, 0}, 8));

    CHECK(local_nilpotency(q2, Element{}).locally_nilpotent);

    auto r2 = local_nilpotency(q2, Element::basis({1, 0}));
    CHECK(!r2.locally_nilpotent);
    CHECK(!r2.certificate.is_zero());
}
