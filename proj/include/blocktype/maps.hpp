#pragma once

// Automorphisms sigma_{s,mu,nu} with their group law, the outer derivation
// D0, inner derivations, extension of generator assignments along the
// canonical generation tree, and residual checking of homomorphism/Leibniz
// identities on truncation windows.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blocktype/algebra.hpp"
#include "blocktype/errors.hpp"

namespace blocktype {

/// Parameters of the automorphism L[a,i] -> s mu^a nu^i L[s*a,i], c -> s*c.
struct AutParams {
    int s = 1;  // +1 or -1
    Rational mu = 1;
    Rational nu = 1;

    friend bool operator==(const AutParams&, const AutParams&) = default;
};

inline AutParams aut_identity() { return {}; }

namespace detail {
inline Rational int_pow(const Rational& base, std::int64_t e) {
    if (base == 0) throw invalid_element_error("automorphism parameter is zero");
    Rational b = e < 0 ? Rational(1) / base : base;
    std::int64_t n = e < 0 ? -e : e;
    Rational out = 1;
    while (n > 0) {
        if (n & 1) out *= b;
        b *= b;
        n >>= 1;
    }
    return out;
}
}  // namespace detail

inline Element apply_aut(const AlgebraCfg& cfg, const AutParams& p, const Element& x) {
    require_valid(cfg, x, "apply_aut argument");
    if (p.mu == 0 || p.nu == 0 || (p.s != 1 && p.s != -1))
        throw invalid_element_error("invalid automorphism parameters");
    Element out;
    for (const auto& [b, c] : x.terms()) {
        Rational f = Rational(p.s) * detail::int_pow(p.mu, b.alpha) *
                     detail::int_pow(p.nu, b.i);
        out.add_term({p.s * b.alpha, b.i}, c * f);
    }
    out.add_central(Rational(p.s) * x.central());
    return out;
}

/// p3 with apply(p3, x) = apply(p1, apply(p2, x)).
inline AutParams compose_aut(const AutParams& p1, const AutParams& p2) {
    AutParams p3;
    p3.s = p1.s * p2.s;
    p3.mu = p2.mu * detail::int_pow(p1.mu, p2.s);
    p3.nu = p1.nu * p2.nu;
    return p3;
}

inline AutParams invert_aut(const AutParams& p) {
    AutParams inv;
    inv.s = p.s;
    inv.mu = detail::int_pow(p.mu, -p.s);
    inv.nu = Rational(1) / p.nu;
    return inv;
}

/// A linear map recorded by its images on every basis vector of a window.
struct WindowMap {
    Window window;
    std::optional<std::int64_t> degree;
    std::map<BasisIndex, Element> images;
    Rational central_scale = 1;  // action on c, for maps of the extended algebra

    const Element& image(const BasisIndex& b) const {
        static const Element zero;
        auto it = images.find(b);
        return it == images.end() ? zero : it->second;
    }

    /// Linear extension to elements supported in the window.
    Element apply(const Element& x) const {
        Element out;
        for (const auto& [b, c] : x.terms()) {
            Element t = image(b);
            t *= c;
            out += t;
        }
        out.add_central(central_scale * x.central());
        return out;
    }
};

inline WindowMap tabulate(const Window& w,
                          const std::function<Element(BasisIndex)>& f,
                          std::optional<std::int64_t> degree = std::nullopt) {
    WindowMap m;
    m.window = w;
    m.degree = degree;
    for (const BasisIndex& b : w.indices()) m.images[b] = f(b);
    return m;
}

inline WindowMap tabulate_aut(const AlgebraCfg& cfg, const AutParams& p, const Window& w) {
    WindowMap m =
        tabulate(w, [&](BasisIndex b) { return apply_aut(cfg, p, Element::basis(b)); });
    m.central_scale = p.s;
    return m;
}

/// One failing pair/triple with its residual element.
struct ResidualEntry {
    std::vector<BasisIndex> where;
    Element residual;
};

/// Bounded list of failures plus the total count.
struct ResidualReport {
    static constexpr std::size_t kMaxListed = 10;
    std::vector<ResidualEntry> first;
    std::size_t total = 0;
    std::size_t checked = 0;

    bool empty() const { return total == 0; }
    void record(std::vector<BasisIndex> where, Element residual) {
        ++total;
        if (first.size() < kMaxListed)
            first.push_back({std::move(where), std::move(residual)});
    }
};

/// m([x,y]) - [m(x), m(y)] over basis pairs of w whose bracket result stays
/// inside w. Source bracket uses cfg_src, image bracket cfg_dst (equal for
/// endomorphism checks).
inline ResidualReport hom_residuals(const AlgebraCfg& cfg_src, const AlgebraCfg& cfg_dst,
                                    const WindowMap& m, const Window& w) {
    ResidualReport rep;
    const auto idx = w.indices();
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            Element br = bracket_basis(cfg_src, idx[a], idx[b]);
            if (!br.supported_in(w)) continue;
            ++rep.checked;
            Element lhs = m.apply(br);
            Element rhs = bracket(cfg_dst, m.image(idx[a]), m.image(idx[b]));
            Element res = lhs - rhs;
            if (!res.is_zero()) rep.record({idx[a], idx[b]}, std::move(res));
        }
    return rep;
}

inline ResidualReport hom_residuals(const AlgebraCfg& cfg, const WindowMap& m,
                                    const Window& w) {
    return hom_residuals(cfg, cfg, m, w);
}

/// D0: L[b,j] -> j L[b,j]; central component -> 0.
inline Element d0_apply(const Element& x) {
    Element out;
    for (const auto& [b, c] : x.terms()) out.add_term(b, c * Rational(b.i));
    return out;
}

/// The inner derivation ad_u = [u, .], tabulated on demand.
class InnerDerivation {
public:
    InnerDerivation(AlgebraCfg cfg, Element u) : cfg_(cfg), u_(std::move(u)) {}

    Element operator()(const BasisIndex& b) const {
        return bracket(cfg_, u_, Element::basis(b));
    }

    WindowMap on(const Window& w, bool truncate = false) const {
        return tabulate(w, [&](BasisIndex b) {
            Element img = (*this)(b);
            if (!truncate) return img;
            Element out;
            for (const auto& [t, c] : img.terms())
                if (w.contains(t)) out.add_term(t, c);
            return out;
        });
    }

private:
    AlgebraCfg cfg_;
    Element u_;
};

inline InnerDerivation inner_derivation(const AlgebraCfg& cfg, const Element& u) {
    return InnerDerivation(cfg, u);
}

/// Images of the five generators L[1,0], L[-1,0], L[2,0], L[-2,0], L[0,1].
struct GeneratorAssignment {
    Element g_p1, g_m1, g_p2, g_m2, g_01;

    static GeneratorAssignment from_map(const std::function<Element(BasisIndex)>& d) {
        return {d({1, 0}), d({-1, 0}), d({2, 0}), d({-2, 0}), d({0, 1})};
    }
};

namespace detail {

/// Fixed recursion expressing every basis vector from the five generators;
/// every divisor below is nonzero because q >= 1.
class DerivationExtender {
public:
    DerivationExtender(AlgebraCfg cfg, GeneratorAssignment g)
        : cfg_(cfg), g_(std::move(g)) {}

    const Element& d(const BasisIndex& b) {
        auto it = memo_.find(b);
        if (it != memo_.end()) return it->second;
        Element val = compute(b);
        return memo_.emplace(b, std::move(val)).first->second;
    }

private:
    // d of k^-1 [x, y] via Leibniz: k^-1 ([d x, y] + [x, d y]).
    Element via(const Rational& k, const BasisIndex& x, const BasisIndex& y) {
        Element dx = d(x), dy = d(y);
        Element out = bracket(cfg_, dx, Element::basis(y));
        out += bracket(cfg_, Element::basis(x), dy);
        out *= Rational(1) / k;
        return out;
    }

    Element compute(const BasisIndex& b) {
        const std::int64_t q = cfg_.q, a = b.alpha, j = b.i;
        if (j == 0) {
            if (a == 1) return g_.g_p1;
            if (a == -1) return g_.g_m1;
            if (a == 2) return g_.g_p2;
            if (a == -2) return g_.g_m2;
            if (a == 0) return via(Rational(2 * q), {-1, 0}, {1, 0});
            if (a >= 3) return via(Rational((a - 2) * q), {1, 0}, {a - 1, 0});
            return via(Rational((a + 2) * q), {-1, 0}, {a + 1, 0});  // a <= -3
        }
        if (a == 0 && j == 1) return g_.g_01;
        if (a == 1) return via(Rational(1 + q), {0, 1}, {1, j - 1});
        if (a == 0) return via(Rational(j + 2 * q), {-1, 0}, {1, j});
        return via(Rational(-a * (j + q)), {a, 0}, {0, j});
    }

    AlgebraCfg cfg_;
    GeneratorAssignment g_;
    std::map<BasisIndex, Element> memo_;
};

}  // namespace detail

/// Leibniz residuals d([x,y]) - [d x, y] - [x, d y] of a window map over
/// basis pairs whose bracket result stays inside the window.
inline ResidualReport leibniz_residuals(const AlgebraCfg& cfg, const WindowMap& m,
                                        const Window& w) {
    ResidualReport rep;
    const auto idx = w.indices();
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            Element br = bracket_basis(cfg, idx[a], idx[b]);
            if (!br.supported_in(w)) continue;
            ++rep.checked;
            Element res = m.apply(br);
            res -= bracket(cfg, m.image(idx[a]), Element::basis(idx[b]));
            res -= bracket(cfg, Element::basis(idx[a]), m.image(idx[b]));
            if (!res.is_zero()) rep.record({idx[a], idx[b]}, std::move(res));
        }
    return rep;
}

/// Extend generator images to the whole window along the generation tree,
/// then report Leibniz residuals. An inconsistent assignment yields a
/// nonempty report, never a failure.
inline std::pair<WindowMap, ResidualReport> extend_derivation(const AlgebraCfg& cfg,
                                                              const GeneratorAssignment& g,
                                                              const Window& w) {
    detail::DerivationExtender ext(cfg, g);
    WindowMap m = tabulate(w, [&](BasisIndex b) { return ext.d(b); });
    ResidualReport rep = leibniz_residuals(cfg, m, w);
    return {std::move(m), std::move(rep)};
}

/// Split a window map into its homogeneous degree components; summing the
/// components recovers the map on the window.
inline std::vector<std::pair<std::int64_t, WindowMap>> decompose_by_degree(
    const WindowMap& m) {
    std::map<std::int64_t, WindowMap> parts;
    for (const auto& [b, img] : m.images) {
        for (const auto& [t, c] : img.terms()) {
            const std::int64_t deg = t.alpha - b.alpha;
            auto [it, fresh] = parts.try_emplace(deg);
            if (fresh) {
                it->second.window = m.window;
                it->second.degree = deg;
            }
            it->second.images[b].add_term(t, c);
        }
        if (img.central() != 0) {
            auto [it, fresh] = parts.try_emplace(std::int64_t(0) - b.alpha);
            if (fresh) {
                it->second.window = m.window;
                it->second.degree = -b.alpha;
            }
            it->second.images[b].add_central(img.central());
        }
    }
    std::vector<std::pair<std::int64_t, WindowMap>> out;
    for (auto& [deg, part] : parts) {
        for (const BasisIndex& b : m.window.indices())
            part.images.try_emplace(b);  // fill zero images for completeness
        out.emplace_back(deg, std::move(part));
    }
    return out;
}

}  // namespace blocktype
