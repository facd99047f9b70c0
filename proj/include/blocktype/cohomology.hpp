#pragma once

// Windowed exact solvers for the first cohomology (derivations modulo inner
// derivations, per graded degree) and the second cohomology (2-cocycles
// modulo coboundaries), together with the canonical cocycle and the
// functional-subtraction normalization.
//
// Truncation scheme: constraints are imposed only on pairs/triples whose
// bracket results stay inside the window; quotient dimensions are measured
// after restriction to a strictly smaller core box, and stabilization across
// growing windows is the acceptance signal.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blocktype/algebra.hpp"
#include "blocktype/errors.hpp"
#include "blocktype/linalg.hpp"
#include "blocktype/maps.hpp"

namespace blocktype {

/// Antisymmetric bilinear form on a window, stored on lexicographically
/// ordered pairs; lookups with swapped arguments negate.
class WindowForm {
public:
    WindowForm() = default;
    explicit WindowForm(Window w) : window_(w) {}

    const Window& window() const { return window_; }

    void set(const BasisIndex& a, const BasisIndex& b, Rational v) {
        if (a == b) return;  // psi(x,x) = 0 always
        if (v == 0) {
            values_.erase(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
            return;
        }
        if (a < b)
            values_[{a, b}] = std::move(v);
        else
            values_[{b, a}] = -v;
    }

    Rational value(const BasisIndex& a, const BasisIndex& b) const {
        if (a == b) return 0;
        if (a < b) {
            auto it = values_.find({a, b});
            return it == values_.end() ? Rational(0) : it->second;
        }
        auto it = values_.find({b, a});
        return it == values_.end() ? Rational(0) : -it->second;
    }

    /// Stored (ordered) pairs, lexicographic.
    const std::map<std::pair<BasisIndex, BasisIndex>, Rational>& values() const {
        return values_;
    }

    WindowForm& operator-=(const WindowForm& o) {
        for (const auto& [p, v] : o.values_) set(p.first, p.second, value(p.first, p.second) - v);
        return *this;
    }

    WindowForm& operator*=(const Rational& s) {
        if (s == 0) {
            values_.clear();
            return *this;
        }
        for (auto& [p, v] : values_) v *= s;
        return *this;
    }

private:
    Window window_;
    std::map<std::pair<BasisIndex, BasisIndex>, Rational> values_;
};

/// Linear functional with finite support inside a window.
struct LinearFunctional {
    Window window;
    std::map<BasisIndex, Rational> values;

    Rational value(const BasisIndex& b) const {
        auto it = values.find(b);
        return it == values.end() ? Rational(0) : it->second;
    }

    void set(const BasisIndex& b, Rational v) {
        if (v == 0)
            values.erase(b);
        else
            values[b] = std::move(v);
    }

    bool is_zero() const { return values.empty(); }
};

/// One failing triple of the cyclic identity.
struct FormResidualEntry {
    BasisIndex x, y, z;
    Rational residual;
};

struct FormResidualReport {
    static constexpr std::size_t kMaxListed = 10;
    std::vector<FormResidualEntry> first;
    std::size_t total = 0;
    std::size_t checked = 0;

    bool empty() const { return total == 0; }
};

/// psi([x,y],z) + psi([y,z],x) + psi([z,x],y) over basis triples of w whose
/// bracket results all stay inside w.
inline FormResidualReport cocycle_residuals(const AlgebraCfg& cfg, const WindowForm& psi,
                                            const Window& w) {
    const AlgebraCfg plain{cfg.q, false};
    FormResidualReport rep;
    const auto idx = w.indices();
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            for (std::size_t c = b + 1; c < idx.size(); ++c) {
                Rational res = 0;
                bool admissible = true;
                const BasisIndex tri[3] = {idx[a], idx[b], idx[c]};
                for (int t = 0; t < 3 && admissible; ++t) {
                    const BasisIndex &x = tri[t], &y = tri[(t + 1) % 3], &z = tri[(t + 2) % 3];
                    Element br = bracket_basis(plain, x, y);
                    if (br.terms().empty()) continue;
                    const auto& [r, cb] = *br.terms().begin();
                    if (!w.contains(r)) {
                        admissible = false;
                        break;
                    }
                    res += cb * psi.value(r, z);
                }
                if (!admissible) continue;
                ++rep.checked;
                if (res != 0) {
                    ++rep.total;
                    if (rep.first.size() < FormResidualReport::kMaxListed)
                        rep.first.push_back({idx[a], idx[b], idx[c], res});
                }
            }
    return rep;
}

/// The coboundary psi_f(x,y) = f([x,y]); f is treated as zero outside its
/// stored support.
inline WindowForm coboundary_from_functional(const AlgebraCfg& cfg,
                                             const LinearFunctional& f, const Window& w) {
    const AlgebraCfg plain{cfg.q, false};
    WindowForm psi(w);
    const auto idx = w.indices();
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            Element br = bracket_basis(plain, idx[a], idx[b]);
            if (br.terms().empty()) continue;
            const auto& [r, cb] = *br.terms().begin();
            psi.set(idx[a], idx[b], cb * f.value(r));
        }
    return psi;
}

/// phi(L[a,i], L[b,j]) = (a^3-a)/12 when a+b=0, i=j=0, else 0.
inline WindowForm canonical_cocycle(const AlgebraCfg& cfg, const Window& w) {
    (void)cfg;
    WindowForm phi(w);
    for (std::int64_t a = 1; a <= w.A; ++a)
        phi.set({a, 0}, {-a, 0}, Rational(a * a * a - a, 12));
    return phi;
}

/// Subtract the coboundary of the functional
///   f(L[a,i]) = -(a q)^-1 psi(L[a,i], L[0,0])        (a != 0)
///   f(L[0,i]) = (i+2q)^-1 psi(L[-1,i], L[1,0])
/// so the result vanishes on the normalization pairs. Requires psi to be a
/// cocycle on the window.
inline std::pair<WindowForm, LinearFunctional> normalize_cocycle(const AlgebraCfg& cfg,
                                                                 const WindowForm& psi,
                                                                 const Window& w) {
    if (!cocycle_residuals(cfg, psi, w).empty())
        throw precondition_error("normalize_cocycle: input fails the cocycle identity");
    LinearFunctional f;
    f.window = w;
    for (const BasisIndex& b : w.indices()) {
        if (b.alpha != 0)
            f.set(b, -psi.value(b, {0, 0}) / Rational(b.alpha * cfg.q));
        else
            f.set(b, psi.value({-1, b.i}, {1, 0}) / Rational(b.i + 2 * cfg.q));
    }
    WindowForm phi = psi;
    phi -= coboundary_from_functional(cfg, f, w);
    return {std::move(phi), std::move(f)};
}

/// Exact infeasibility of ad_u = D0 on the window: D0 is homogeneous of
/// degree 0, so u ranges over span{L[0,i] : i <= w.I}; compare the rank of
/// the matching system with and without the D0 right-hand side.
inline bool d0_is_outer(const AlgebraCfg& cfg, const Window& w) {
    std::vector<linalg::Vec> rows;
    linalg::Vec rhs;
    for (const BasisIndex& b : w.indices()) {
        if (b.alpha == 0) continue;  // ad_u vanishes there
        for (std::int64_t m = 0; m <= w.I; ++m) {
            linalg::Vec row(w.I + 1, Rational(0));
            for (std::int64_t i = 0; i <= w.I; ++i)
                if (b.i + i == m) row[i] = Rational(b.alpha * (i + cfg.q));
            rows.push_back(std::move(row));
            rhs.push_back(m == b.i ? Rational(b.i) : Rational(0));
        }
    }
    linalg::Matrix plain = rows, aug = rows;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(rhs[r]);
    return linalg::rank(std::move(plain)) < linalg::rank(std::move(aug));
}

// ---------------------------------------------------------------------------
// Windowed H^1 (degree-graded derivations modulo inner derivations)
// ---------------------------------------------------------------------------

struct H1Report {
    AlgebraCfg cfg;
    std::int64_t degree = 0;
    Window window, core;
    std::size_t dimension = 0;
    std::optional<WindowMap> representative;

    // Solver context for coset comparisons on the core.
    std::vector<std::pair<BasisIndex, std::int64_t>> core_coords;  // (domain idx, image i)
    linalg::Matrix inner_rref;
    std::vector<std::size_t> inner_pivots;
    linalg::Vec rep_reduced;  // representative's core vector mod inner, zero if dim 0

    /// lambda with representative == lambda * candidate modulo inner
    /// derivations on the core; nullopt when not proportional.
    std::optional<Rational> coset_ratio(const WindowMap& candidate) const {
        if (!representative) return std::nullopt;
        linalg::Vec cand(core_coords.size(), Rational(0));
        for (std::size_t k = 0; k < core_coords.size(); ++k) {
            const auto& [b, m] = core_coords[k];
            cand[k] = candidate.image(b).coeff({degree + b.alpha, m});
        }
        linalg::reduce_mod(inner_rref, inner_pivots, cand);
        std::optional<Rational> lambda;
        for (std::size_t k = 0; k < cand.size(); ++k) {
            if (cand[k] == 0) {
                if (rep_reduced[k] != 0) return std::nullopt;
                continue;
            }
            Rational r = rep_reduced[k] / cand[k];
            if (!lambda)
                lambda = r;
            else if (*lambda != r)
                return std::nullopt;
        }
        return lambda;
    }

    std::string to_record() const;
};

namespace detail {

inline void require_core_inside(const Window& w, const Window& core) {
    if (!(core.A >= 1 && core.A <= w.A - 2 && core.I >= 0 && core.I <= w.I - 1))
        throw window_too_small_error(
            "core must satisfy core.A <= window.A - 2 and core.I <= window.I - 1");
}

}  // namespace detail

/// Solve for degree-`degree` linear maps satisfying the Leibniz constraints
/// on all window-interior pairs; quotient by inner derivations ad_u with u in
/// the degree part of the window, both restricted to the core.
inline H1Report solve_h1(const AlgebraCfg& cfg, std::int64_t degree, const Window& w,
                         const Window& core) {
    detail::require_core_inside(w, core);
    const std::int64_t q = cfg.q;

    // Domain: window indices whose degree-shifted image stays representable.
    std::vector<BasisIndex> domain;
    for (const BasisIndex& b : w.indices())
        if (std::abs(degree + b.alpha) <= w.A) domain.push_back(b);

    std::map<std::pair<BasisIndex, std::int64_t>, std::size_t> col;
    for (const BasisIndex& b : domain)
        for (std::int64_t i = 0; i <= w.I; ++i) col.try_emplace({b, i}, col.size());
    auto in_domain = [&](const BasisIndex& b) {
        return w.contains(b) && std::abs(degree + b.alpha) <= w.A;
    };

    // Leibniz constraints, one row per interior pair and image level m:
    //   cb * d(z)_m = [d(x), y]_m + [x, d(y)]_m,   z = x + y as indices.
    std::vector<linalg::SparseRow> rows;
    for (std::size_t ia = 0; ia < domain.size(); ++ia)
        for (std::size_t ib = ia + 1; ib < domain.size(); ++ib) {
            const BasisIndex x = domain[ia], y = domain[ib];
            const BasisIndex z{x.alpha + y.alpha, x.i + y.i};
            if (!in_domain(z)) continue;
            const std::int64_t cb = y.alpha * (x.i + q) - x.alpha * (y.i + q);
            for (std::int64_t m = 0; m <= w.I; ++m) {
                std::map<std::size_t, Rational> acc;
                if (cb != 0) acc[col.at({z, m})] += cb;
                if (m >= y.i) {
                    const std::int64_t c1 =
                        y.alpha * (m - y.i + q) - (degree + x.alpha) * (y.i + q);
                    if (c1 != 0) acc[col.at({x, m - y.i})] -= c1;
                }
                if (m >= x.i) {
                    const std::int64_t c2 =
                        (degree + y.alpha) * (x.i + q) - x.alpha * (m - x.i + q);
                    if (c2 != 0) acc[col.at({y, m - x.i})] -= c2;
                }
                linalg::SparseRow row;
                for (auto& [c, v] : acc)
                    if (v != 0) row.emplace_back(c, std::move(v));
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    linalg::SparseEchelon ech(col.size());
    for (auto& r : rows) ech.add_row(std::move(r));
    linalg::Matrix sol = ech.kernel();

    // Core coordinates for quotient measurement.
    H1Report rep;
    rep.cfg = cfg;
    rep.degree = degree;
    rep.window = w;
    rep.core = core;
    for (const BasisIndex& b : domain) {
        if (!core.contains(b) || std::abs(degree + b.alpha) > core.A) continue;
        for (std::int64_t m = 0; m <= core.I; ++m) rep.core_coords.emplace_back(b, m);
    }

    auto restrict_cols = [&](const linalg::Vec& full) {
        linalg::Vec v(rep.core_coords.size(), Rational(0));
        for (std::size_t k = 0; k < rep.core_coords.size(); ++k)
            v[k] = full[col.at(rep.core_coords[k])];
        return v;
    };

    // Inner derivations ad_u, u = L[degree, i] for i <= w.I, on the core.
    linalg::Matrix inner;
    for (std::int64_t i = 0; i <= w.I; ++i) {
        linalg::Vec v(rep.core_coords.size(), Rational(0));
        for (std::size_t k = 0; k < rep.core_coords.size(); ++k) {
            const auto& [b, m] = rep.core_coords[k];
            if (m == i + b.i)
                v[k] = Rational(b.alpha * (i + q) - degree * (b.i + q));
        }
        inner.push_back(std::move(v));
    }

    linalg::Matrix sol_core;
    for (const auto& vfull : sol) sol_core.push_back(restrict_cols(vfull));

    const std::size_t rank_sol = linalg::rank(sol_core);
    rep.inner_rref = inner;
    rep.inner_pivots = linalg::rref(rep.inner_rref);
    rep.inner_rref.resize(rep.inner_pivots.size());
    if (rank_sol < rep.inner_pivots.size())
        throw internal_error("inner derivations escaped the H1 solution space");
    rep.dimension = rank_sol - rep.inner_pivots.size();

    if (rep.dimension > 0) {
        for (std::size_t r = 0; r < sol.size(); ++r) {
            linalg::Vec v = sol_core[r];
            linalg::reduce_mod(rep.inner_rref, rep.inner_pivots, v);
            bool nonzero = false;
            for (const auto& x : v) nonzero = nonzero || x != 0;
            if (!nonzero) continue;
            // Leading-1 normalization for a deterministic representative.
            Rational lead = 0;
            for (const auto& x : v)
                if (x != 0) {
                    lead = x;
                    break;
                }
            WindowMap m;
            m.window = w;
            m.degree = degree;
            for (const BasisIndex& b : domain) {
                Element img;
                for (std::int64_t i = 0; i <= w.I; ++i)
                    img.add_term({degree + b.alpha, i}, sol[r][col.at({b, i})] / lead);
                m.images[b] = std::move(img);
            }
            for (auto& x : v) x /= lead;
            rep.rep_reduced = std::move(v);
            rep.representative = std::move(m);
            break;
        }
    } else {
        rep.rep_reduced.assign(rep.core_coords.size(), Rational(0));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Windowed H^2 (2-cocycles modulo coboundaries)
// ---------------------------------------------------------------------------

struct H2Report {
    AlgebraCfg cfg;
    Window window, core;
    std::size_t dimension = 0;
    std::optional<WindowForm> representative;  // normalized and rescaled
    std::optional<LinearFunctional> normalizer;
    std::optional<Rational> lambda;  // representative == lambda * canonical on core
    bool proportional = false;

    std::string to_record() const;
};

/// Solve for antisymmetric window forms satisfying the cyclic identity on
/// interior triples; quotient by coboundaries of window functionals on the
/// core. The representative is normalized by functional subtraction and
/// rescaled so its value at (L[2,0], L[-2,0]) is 1/2 when nonzero.
inline H2Report solve_h2(const AlgebraCfg& cfg, const Window& w, const Window& core) {
    detail::require_core_inside(w, core);
    const AlgebraCfg plain{cfg.q, false};
    const auto idx = w.indices();

    std::map<std::pair<BasisIndex, BasisIndex>, std::size_t> col;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            col.try_emplace({idx[a], idx[b]}, col.size());
    auto var = [&](const BasisIndex& a, const BasisIndex& b) {
        // (column, sign); a != b assumed
        if (a < b) return std::make_pair(col.at({a, b}), 1);
        return std::make_pair(col.at({b, a}), -1);
    };

    std::vector<linalg::SparseRow> rows;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            for (std::size_t c = b + 1; c < idx.size(); ++c) {
                const BasisIndex tri[3] = {idx[a], idx[b], idx[c]};
                std::map<std::size_t, Rational> acc;
                bool admissible = true;
                for (int t = 0; t < 3 && admissible; ++t) {
                    const BasisIndex &x = tri[t], &y = tri[(t + 1) % 3],
                                     &z = tri[(t + 2) % 3];
                    Element br = bracket_basis(plain, x, y);
                    if (br.terms().empty()) continue;
                    const auto& [r, cb] = *br.terms().begin();
                    if (!w.contains(r)) {
                        admissible = false;
                        break;
                    }
                    if (r == z) continue;  // psi(z,z) = 0
                    auto [cidx, sign] = var(r, z);
                    acc[cidx] += Rational(sign) * cb;
                }
                if (!admissible) continue;
                linalg::SparseRow row;
                for (auto& [ci, v] : acc)
                    if (v != 0) row.emplace_back(ci, std::move(v));
                if (!row.empty()) rows.push_back(std::move(row));
            }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    linalg::SparseEchelon ech(col.size());
    for (auto& r : rows) ech.add_row(std::move(r));
    linalg::Matrix sol = ech.kernel();

    H2Report rep;
    rep.cfg = cfg;
    rep.window = w;
    rep.core = core;

    std::vector<std::pair<BasisIndex, BasisIndex>> core_pairs;
    const auto cidx = core.indices();
    for (std::size_t a = 0; a < cidx.size(); ++a)
        for (std::size_t b = a + 1; b < cidx.size(); ++b)
            core_pairs.emplace_back(cidx[a], cidx[b]);

    auto restrict_pairs = [&](const linalg::Vec& full) {
        linalg::Vec v(core_pairs.size(), Rational(0));
        for (std::size_t k = 0; k < core_pairs.size(); ++k)
            v[k] = full[col.at(core_pairs[k])];
        return v;
    };

    // Coboundary space restricted to the core. A coboundary psi_f(x,y) =
    // f([x,y]) on core pairs only sees f at bracket results of core pairs, so
    // one generator per such result (these reach outside the window).
    std::map<BasisIndex, linalg::Vec> cob_by_target;
    for (std::size_t k = 0; k < core_pairs.size(); ++k) {
        Element br = bracket_basis(plain, core_pairs[k].first, core_pairs[k].second);
        if (br.terms().empty()) continue;
        const auto& [r, cb] = *br.terms().begin();
        auto [it, fresh] =
            cob_by_target.try_emplace(r, linalg::Vec(core_pairs.size(), Rational(0)));
        it->second[k] = cb;
    }
    linalg::Matrix cob;
    for (auto& [t, v] : cob_by_target) cob.push_back(std::move(v));

    linalg::Matrix sol_core;
    for (const auto& vfull : sol) sol_core.push_back(restrict_pairs(vfull));
    const std::size_t rank_sol = linalg::rank(sol_core);
    linalg::Matrix cob_rref = cob;
    const auto cob_pivots = linalg::rref(cob_rref);
    cob_rref.resize(cob_pivots.size());
    if (rank_sol < cob_pivots.size())
        throw internal_error("coboundaries escaped the H2 solution space");
    rep.dimension = rank_sol - cob_pivots.size();

    if (rep.dimension == 0) return rep;

    for (std::size_t r = 0; r < sol.size(); ++r) {
        linalg::Vec v = sol_core[r];
        linalg::reduce_mod(cob_rref, cob_pivots, v);
        bool nonzero = false;
        for (const auto& x : v) nonzero = nonzero || x != 0;
        if (!nonzero) continue;
        WindowForm psi(w);
        for (const auto& [p, ci] : col) psi.set(p.first, p.second, sol[r][ci]);
        auto [phi, f] = normalize_cocycle(cfg, psi, w);
        const Rational pin = phi.value({2, 0}, {-2, 0});
        if (pin != 0) {
            const Rational scale = Rational(1, 2) / pin;
            phi *= scale;
            for (auto& [bb, fv] : f.values) fv *= scale;
        }
        // Proportionality to the canonical cocycle on the core.
        WindowForm canon = canonical_cocycle(cfg, w);
        std::optional<Rational> lambda;
        bool prop = true;
        for (const auto& p : core_pairs) {
            const Rational pv = phi.value(p.first, p.second);
            const Rational cv = canon.value(p.first, p.second);
            if (cv == 0) {
                if (pv != 0) prop = false;
            } else {
                Rational ratio = pv / cv;
                if (!lambda)
                    lambda = ratio;
                else if (*lambda != ratio)
                    prop = false;
            }
            if (!prop) break;
        }
        rep.representative = std::move(phi);
        rep.normalizer = std::move(f);
        rep.proportional = prop && lambda.has_value();
        if (rep.proportional) rep.lambda = lambda;
        break;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Text records
// ---------------------------------------------------------------------------

inline std::string H1Report::to_record() const {
    std::ostringstream os;
    os << "blocktype-cohom v1\n";
    os << "kind: h1\n";
    os << "q: " << cfg.q << "\n";
    os << "degree: " << degree << "\n";
    os << "window: " << window.A << "," << window.I << "\n";
    os << "core: " << core.A << "," << core.I << "\n";
    os << "dimension: " << dimension << "\n";
    if (representative) {
        os << "representative:\n";
        for (const auto& [b, m] : core_coords) {
            const Rational v = representative->image(b).coeff({degree + b.alpha, m});
            if (v != 0)
                os << "  L[" << b.alpha << "," << b.i << "] -> " << rat_str(v) << "*L["
                   << degree + b.alpha << "," << m << "]\n";
        }
    }
    return os.str();
}

inline std::string H2Report::to_record() const {
    std::ostringstream os;
    os << "blocktype-cohom v1\n";
    os << "kind: h2\n";
    os << "q: " << cfg.q << "\n";
    os << "window: " << window.A << "," << window.I << "\n";
    os << "core: " << core.A << "," << core.I << "\n";
    os << "dimension: " << dimension << "\n";
    os << "proportional: " << (proportional ? "yes" : "no") << "\n";
    if (lambda) os << "lambda: " << rat_str(*lambda) << "\n";
    if (representative) {
        os << "representative:\n";
        for (const auto& [p, v] : representative->values())
            os << "  L[" << p.first.alpha << "," << p.first.i << "] L[" << p.second.alpha
               << "," << p.second.i << "] " << rat_str(v) << "\n";
    }
    return os.str();
}

}  // namespace blocktype
