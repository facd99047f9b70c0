#pragma once

// Shared helpers for the test suites: deterministic random elements and
// rationals (hand-rolled generators, fixed seeds per test).

#include <random>

#include "blocktype/algebra.hpp"

namespace testutil {

using namespace blocktype;

inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 9);
    return Rational(num(rng), den(rng));
}

inline Rational random_nonzero_rational(std::mt19937& rng) {
    for (;;) {
        Rational r = random_rational(rng);
        if (r != 0) return r;
    }
}

inline Element random_element(std::mt19937& rng, const Window& w, int max_terms = 4,
                              bool allow_central = false) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<std::int64_t> alpha(-w.A, w.A);
    std::uniform_int_distribution<std::int64_t> lvl(0, w.I);
    Element e;
    const int n = nterms(rng);
    for (int k = 0; k < n; ++k) e.add_term({alpha(rng), lvl(rng)}, random_rational(rng));
    if (allow_central) e.add_central(random_rational(rng));
    return e;
}

inline BasisIndex random_index(std::mt19937& rng, const Window& w) {
    std::uniform_int_distribution<std::int64_t> alpha(-w.A, w.A);
    std::uniform_int_distribution<std::int64_t> lvl(0, w.I);
    return {alpha(rng), lvl(rng)};
}

}  // namespace testutil
