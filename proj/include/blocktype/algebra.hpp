#pragma once

// Core arithmetic for the Block-type Lie algebras B(q) and their
// one-dimensional central extensions: basis indexing, sparse elements over
// exact rationals, the bracket, adjoint powers and the integer grading.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blocktype/errors.hpp"
#include "blocktype/rational.hpp"

namespace blocktype {

/// Index (alpha, i) of the basis vector L[alpha,i]; alpha ranges over all
/// integers, i over nonnegative integers.
struct BasisIndex {
    std::int64_t alpha = 0;
    std::int64_t i = 0;

    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

/// Which algebra we are working in: B(q) or its central extension.
struct AlgebraCfg {
    std::int64_t q = 1;
    bool extended = false;
};

/// Closed truncation box |alpha| <= A, 0 <= i <= I.
struct Window {
    std::int64_t A = 1;
    std::int64_t I = 0;

    bool contains(const BasisIndex& b) const {
        return b.alpha >= -A && b.alpha <= A && b.i >= 0 && b.i <= I;
    }

    /// All indices of the window in lexicographic (alpha, i) order.
    std::vector<BasisIndex> indices() const {
        std::vector<BasisIndex> out;
        out.reserve(static_cast<std::size_t>((2 * A + 1) * (I + 1)));
        for (std::int64_t a = -A; a <= A; ++a)
            for (std::int64_t i = 0; i <= I; ++i) out.push_back({a, i});
        return out;
    }

    friend auto operator<=>(const Window&, const Window&) = default;
};

/// Finite linear combination of basis vectors plus a central component.
/// Zero coefficients are never stored; iteration order is lexicographic in
/// (alpha, i). Immutable use is expected after construction.
class Element {
public:
    Element() = default;

    static Element basis(BasisIndex b, Rational coeff = 1) {
        Element e;
        if (coeff != 0) e.terms_[b] = std::move(coeff);
        return e;
    }

    static Element basis(std::int64_t alpha, std::int64_t i, Rational coeff = 1) {
        return basis(BasisIndex{alpha, i}, std::move(coeff));
    }

    static Element central(Rational coeff) {
        Element e;
        e.central_ = std::move(coeff);
        return e;
    }

    const std::map<BasisIndex, Rational>& terms() const { return terms_; }
    const Rational& central() const { return central_; }

    Rational coeff(const BasisIndex& b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return terms_.empty() && central_ == 0; }

    void add_term(const BasisIndex& b, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(b, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add_central(const Rational& coeff) { central_ += coeff; }

    Element& operator+=(const Element& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, c);
        central_ += o.central_;
        return *this;
    }

    Element& operator-=(const Element& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, -c);
        central_ -= o.central_;
        return *this;
    }

    Element& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            central_ = 0;
            return *this;
        }
        for (auto& [b, c] : terms_) c *= s;
        central_ *= s;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& s, Element a) { return a *= s; }
    friend Element operator-(Element a) { return a *= Rational(-1); }

    friend bool operator==(const Element&, const Element&) = default;

    /// True when every term (and the central component, if the window is
    /// taken as support bound) lies inside w.
    bool supported_in(const Window& w) const {
        for (const auto& [b, c] : terms_)
            if (!w.contains(b)) return false;
        return true;
    }

private:
    std::map<BasisIndex, Rational> terms_;
    Rational central_ = 0;
};

inline void require_valid(const AlgebraCfg& cfg, const Element& x,
                          const char* what = "element") {
    if (!cfg.extended && x.central() != 0)
        throw invalid_element_error(std::string(what) +
                                    " has a central component but the algebra is not extended");
}

/// [L[a.alpha,a.i], L[b.alpha,b.i]] = (beta(i+q) - alpha(j+q)) L[alpha+beta, i+j],
/// plus (alpha^3-alpha)/12 * c when extended and alpha+beta=0, i=j=0.
inline Element bracket_basis(const AlgebraCfg& cfg, const BasisIndex& a,
                             const BasisIndex& b) {
    const std::int64_t coeff = b.alpha * (a.i + cfg.q) - a.alpha * (b.i + cfg.q);
    Element out = Element::basis({a.alpha + b.alpha, a.i + b.i}, Rational(coeff));
    if (cfg.extended && a.alpha + b.alpha == 0 && a.i == 0 && b.i == 0) {
        const std::int64_t al = a.alpha;
        out.add_central(Rational(al * al * al - al, 12));
    }
    return out;
}

/// Bilinear extension of bracket_basis; central components of the arguments
/// contribute nothing.
inline Element bracket(const AlgebraCfg& cfg, const Element& x, const Element& y) {
    require_valid(cfg, x, "left bracket argument");
    require_valid(cfg, y, "right bracket argument");
    Element out;
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms()) {
            Element t = bracket_basis(cfg, a, b);
            t *= ca * cb;
            out += t;
        }
    return out;
}

/// k-fold application of ad_f = [f, .] to v; k = 0 returns v.
inline Element ad_pow(const AlgebraCfg& cfg, const Element& f, const Element& v,
                      std::int64_t k) {
    Element out = v;
    for (std::int64_t n = 0; n < k; ++n) out = bracket(cfg, f, out);
    return out;
}

/// [[x,y],z] + [[y,z],x] + [[z,x],y]; zero for a Lie bracket.
inline Element jacobi_residual(const AlgebraCfg& cfg, const Element& x,
                               const Element& y, const Element& z) {
    Element out = bracket(cfg, bracket(cfg, x, y), z);
    out += bracket(cfg, bracket(cfg, y, z), x);
    out += bracket(cfg, bracket(cfg, z, x), y);
    return out;
}

/// Projection onto the degree-alpha homogeneous part; the central component
/// sits in degree 0.
inline Element degree_component(const Element& x, std::int64_t alpha) {
    Element out;
    for (const auto& [b, c] : x.terms())
        if (b.alpha == alpha) out.add_term(b, c);
    if (alpha == 0) out.add_central(x.central());
    return out;
}

}  // namespace blocktype
