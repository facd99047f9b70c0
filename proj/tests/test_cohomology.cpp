#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blocktype/cohomology.hpp"
#include "test_util.hpp"

using namespace blocktype;

TEST_CASE("WindowForm is antisymmetric storage") {
    WindowForm psi({3, 2});
    psi.set({1, 0}, {-1, 0}, Rational(5));
    CHECK(psi.value({1, 0}, {-1, 0}) == 5);
    CHECK(psi.value({-1, 0}, {1, 0}) == -5);
    CHECK(psi.value({1, 0}, {1, 0}) == 0);
    psi.set({2, 1}, {0, 0}, Rational(0));
    CHECK(psi.values().size() == 1);
    psi.set({1, 0}, {-1, 0}, Rational(0));
    CHECK(psi.values().empty());
}

TEST_CASE("the canonical cocycle") {
    const AlgebraCfg cfg{1, false};
    const Window w{6, 3};
    WindowForm phi = canonical_cocycle(cfg, w);
    CHECK(phi.value({1, 0}, {-1, 0}) == 0);
    CHECK(phi.value({2, 0}, {-2, 0}) == Rational(1, 2));
    CHECK(phi.value({3, 0}, {-3, 0}) == 2);
    CHECK(phi.value({4, 0}, {-4, 0}) == 5);
    CHECK(phi.value({2, 1}, {-2, 0}) == 0);
    CHECK(phi.value({2, 0}, {-1, 0}) == 0);

    // it satisfies the cyclic identity on the window, for any q
    for (std::int64_t q : {1, 2, 3}) {
        auto rep = cocycle_residuals({q, false}, canonical_cocycle({q, false}, w), w);
        CHECK(rep.empty());
        CHECK(rep.checked > 0);
    }
}

TEST_CASE("cocycle_residuals flags a non-cocycle") {
    const AlgebraCfg cfg{1, false};
    const Window w{4, 2};
    WindowForm bad(w);
    bad.set({1, 0}, {0, 0}, Rational(1));
    auto rep = cocycle_residuals(cfg, bad, w);
    CHECK(!rep.empty());
    CHECK(rep.first.size() >= 1);
}

TEST_CASE("coboundaries are cocycles") {
    const Window w{4, 3};
    std::mt19937 rng(61);
    for (std::int64_t q : {1, 2}) {
        const AlgebraCfg cfg{q, false};
        for (int n = 0; n < 5; ++n) {
            LinearFunctional f;
            f.window = w;
            for (const BasisIndex& b : w.indices())
                if (rng() % 3 == 0) f.set(b, testutil::random_rational(rng));
            WindowForm psi = coboundary_from_functional(cfg, f, w);
            CHECK(cocycle_residuals(cfg, psi, w).empty());
        }
    }
    // explicit value: f = dual of L[0,0], q=1: psi(L[1,0], L[-1,0]) = f(-2 L[0,0]) = -2
    LinearFunctional f;
    f.window = w;
    f.set({0, 0}, Rational(1));
    WindowForm psi = coboundary_from_functional({1, false}, f, w);
    CHECK(psi.value({1, 0}, {-1, 0}) == -2);
    CHECK(psi.value({2, 1}, {-2, 0}) == 0);  // bracket lands on L[0,1], f-value 0
}

TEST_CASE("normalize_cocycle") {
    const AlgebraCfg cfg{1, false};
    const Window w{5, 3};
    WindowForm canon = canonical_cocycle(cfg, w);

    // the canonical cocycle already vanishes on the normalization pairs
    auto [phi0, f0] = normalize_cocycle(cfg, canon, w);
    CHECK(f0.is_zero());
    for (const auto& [p, v] : canon.values())
        CHECK(phi0.value(p.first, p.second) == v);

    // adding a coboundary is undone up to a coboundary: the normalized form
    // agrees with the canonical one wherever the dropped boundary terms
    // cannot reach (pairs whose bracket stays well inside the window)
    LinearFunctional g;
    g.window = w;
    g.set({0, 0}, Rational(3));
    g.set({2, 1}, Rational(-1, 2));
    g.set({0, 1}, Rational(7));
    WindowForm mixed = canon;
    WindowForm cb = coboundary_from_functional(cfg, g, w);
    for (const auto& [p, v] : cb.values())
        mixed.set(p.first, p.second, mixed.value(p.first, p.second) + v);
    auto [phi1, f1] = normalize_cocycle(cfg, mixed, w);
    CHECK(!f1.is_zero());
    CHECK(phi1.value({2, 0}, {-2, 0}) == Rational(1, 2));
    CHECK(phi1.value({3, 0}, {-3, 0}) == 2);
    CHECK(phi1.value({1, 0}, {-1, 0}) == 0);
    CHECK(phi1.value({1, 1}, {-1, 0}) == 0);

    // non-cocycles are rejected
    WindowForm bad(w);
    bad.set({1, 0}, {0, 0}, Rational(1));
    CHECK_THROWS_AS(normalize_cocycle(cfg, bad, w), precondition_error);
}

TEST_CASE("solve_h1 dimensions stabilize across windows") {
    for (std::int64_t q : {1, 2}) {
        const AlgebraCfg cfg{q, false};
        for (auto [w, core] :
             std::vector<std::pair<Window, Window>>{{{5, 4}, {3, 2}}, {{6, 5}, {4, 3}}}) {
            for (std::int64_t d : {-2, -1, 1, 2}) {
                auto r = solve_h1(cfg, d, w, core);
                CHECK(r.dimension == 0);
                CHECK(!r.representative.has_value());
            }
            auto r0 = solve_h1(cfg, 0, w, core);
            CHECK(r0.dimension == 1);
            REQUIRE(r0.representative.has_value());

            // the class is represented by the level-counting derivation
            WindowMap d0 = tabulate(
                w, [](BasisIndex b) { return d0_apply(Element::basis(b)); }, 0);
            auto lam = r0.coset_ratio(d0);
            REQUIRE(lam.has_value());
            CHECK(*lam != 0);

            // inner candidates sit in the zero coset, so no ratio exists
            WindowMap inner = inner_derivation(cfg, Element::basis({0, 1})).on(w);
            inner.degree = 0;
            CHECK(!r0.coset_ratio(inner).has_value());

            // the representative satisfies Leibniz on the core
            auto rep = leibniz_residuals(cfg, *r0.representative, core);
            CHECK(rep.empty());
        }
    }
}

TEST_CASE("solve_h1 rejects cores that hug the window boundary") {
    const AlgebraCfg cfg{1, false};
    CHECK_THROWS_AS(solve_h1(cfg, 0, {4, 3}, {3, 2}), window_too_small_error);
    CHECK_THROWS_AS(solve_h1(cfg, 0, {4, 3}, {2, 3}), window_too_small_error);
}

TEST_CASE("solve_h2 finds a one-dimensional space spanned by the canonical cocycle") {
    for (std::int64_t q : {1, 2}) {
        const AlgebraCfg cfg{q, false};
        for (auto [w, core] :
             std::vector<std::pair<Window, Window>>{{{5, 3}, {3, 1}}, {{6, 3}, {4, 1}}}) {
            auto r = solve_h2(cfg, w, core);
            CHECK(r.dimension == 1);
            CHECK(r.proportional);
            REQUIRE(r.lambda.has_value());
            CHECK(*r.lambda == 1);
            REQUIRE(r.representative.has_value());
            CHECK(r.representative->value({2, 0}, {-2, 0}) == Rational(1, 2));
            CHECK(r.representative->value({3, 0}, {-3, 0}) == 2);
            CHECK(cocycle_residuals(cfg, *r.representative, w).empty());

            // record serialization carries the headline facts
            std::string rec = r.to_record();
            CHECK(rec.find("blocktype-cohom v1") == 0);
            CHECK(rec.find("dimension: 1") != std::string::npos);
            CHECK(rec.find("lambda: 1") != std::string::npos);
        }
    }
}

TEST_CASE("h1 record serialization") {
    const AlgebraCfg cfg{1, false};
    auto r = solve_h1(cfg, 0, {5, 4}, {3, 2});
    std::string rec = r.to_record();
    CHECK(rec.find("blocktype-cohom v1") == 0);
    CHECK(rec.find("kind: h1") != std::string::npos);
    CHECK(rec.find("dimension: 1") != std::string::npos);
    CHECK(rec.find("representative:") != std::string::npos);
}
