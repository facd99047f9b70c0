// Command-line front end: element calculator, automorphism and derivation
// tools, windowed cohomology solvers, isomorphism search, embedding checks
// and a one-shot verification suite.
//
// Exit codes: 0 success, 2 parse error, 3 precondition violation,
// 4 mathematical failure, 64 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "blocktype/blocktype.hpp"

using namespace blocktype;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitMath = 4;
constexpr int kExitUsage = 64;
constexpr int kSchemaVersion = 1;

struct CliState {
    std::int64_t q = 1;
    bool extended = false;
    std::string window_str, core_str;
    std::int64_t degree = 0;
    std::string output = "plain";
    int rc = kExitOk;

    AlgebraCfg cfg() const { return {q, extended}; }

    Window window_or(const Window& def) const {
        return window_str.empty() ? def : parse_window(window_str);
    }
    Window core_or(const Window& def) const {
        return core_str.empty() ? def : parse_window(core_str);
    }

    static Window parse_window(const std::string& s) {
        const std::size_t comma = s.find(',');
        if (comma == std::string::npos)
            throw precondition_error("window must be of the form 'A,I', got '" + s + "'");
        try {
            const std::int64_t a = std::stoll(s.substr(0, comma));
            const std::int64_t i = std::stoll(s.substr(comma + 1));
            if (a < 0 || i < 0) throw precondition_error("window bounds must be nonnegative");
            return {a, i};
        } catch (const std::logic_error&) {
            throw precondition_error("window must be of the form 'A,I', got '" + s + "'");
        }
    }

    void emit(const json& record, const std::string& plain) const {
        if (output == "json")
            std::cout << record.dump(2) << "\n";
        else
            std::cout << plain;
    }

    json base_record(const std::string& command) const {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = command;
        j["q"] = q;
        j["extended"] = extended;
        return j;
    }
};

// Flat key=value config file; flags parsed afterwards override these values.
void apply_config_file(CliState& st, const std::string& path, bool explicit_path) {
    std::ifstream in(path);
    if (!in) {
        if (explicit_path) throw precondition_error("cannot read config file '" + path + "'");
        return;
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw precondition_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        auto trim = [](std::string s) {
            const std::size_t a = s.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            const std::size_t b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "q")
            st.q = std::stoll(val);
        else if (key == "extended")
            st.extended = val == "true" || val == "1" || val == "yes";
        else if (key == "window")
            st.window_str = val;
        else if (key == "core")
            st.core_str = val;
        else if (key == "degree")
            st.degree = std::stoll(val);
        else if (key == "output")
            st.output = val;
        else
            throw precondition_error(path + ":" + std::to_string(lineno) +
                                     ": unknown config key '" + key + "'");
    }
}

BasisIndex parse_atom_index(const std::string& tok) {
    Element e = parse_element(tok);
    if (e.terms().size() != 1 || e.central() != 0 ||
        e.terms().begin()->second != 1)
        throw parse_error(0, "expected a bare basis atom, got '" + tok + "'");
    return e.terms().begin()->first;
}

json element_json(const Element& x) { return format_element(x); }

// ---------------------------------------------------------------------------
// verification suite
// ---------------------------------------------------------------------------

struct CheckList {
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::string> details;

    void add(const std::string& name, bool ok, const std::string& detail = "") {
        checks.emplace_back(name, ok);
        details.push_back(detail);
    }
    bool all_ok() const {
        for (const auto& [n, ok] : checks)
            if (!ok) return false;
        return true;
    }
};

void verify_jacobi(const CliState& st, CheckList& out) {
    const Window w = st.window_or({4, 4});
    for (bool ext : {false, true}) {
        const AlgebraCfg cfg{st.q, ext};
        const auto idx = w.indices();
        std::size_t bad = 0, n = 0;
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                for (std::size_t c = b + 1; c < idx.size(); ++c) {
                    ++n;
                    if (!jacobi_residual(cfg, Element::basis(idx[a]), Element::basis(idx[b]),
                                         Element::basis(idx[c]))
                             .is_zero())
                        ++bad;
                }
        // antisymmetry on basis pairs
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a; b < idx.size(); ++b) {
                Element s = bracket_basis(cfg, idx[a], idx[b]);
                s += bracket_basis(cfg, idx[b], idx[a]);
                if (!s.is_zero()) ++bad;
            }
        out.add(std::string("jacobi-") + (ext ? "extended" : "plain"), bad == 0,
                std::to_string(n) + " triples");
    }
}

void verify_aut(const CliState& st, CheckList& out) {
    const AlgebraCfg cfg = st.cfg();
    const Window w = st.window_or({4, 3});
    std::mt19937 rng(2024);
    auto rnd = [&] {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
        for (;;) {
            Rational r(num(rng), den(rng));
            if (r != 0) return r;
        }
    };
    bool hom_ok = true, round_ok = true, sub_ok = true;
    for (int n = 0; n < 20; ++n) {
        AutParams p{rng() % 2 ? 1 : -1, rnd(), rnd()};
        hom_ok = hom_ok && hom_residuals(cfg, tabulate_aut(cfg, p, w), w).empty();
        round_ok = round_ok && compose_aut(p, invert_aut(p)) == aut_identity() &&
                   compose_aut(invert_aut(p), p) == aut_identity();
        AutParams a{1, rnd(), rnd()}, b{1, rnd(), rnd()};
        AutParams flip{-1, Rational(1), Rational(1)};
        sub_ok = sub_ok && compose_aut(a, b).s == 1 &&
                 compose_aut(compose_aut(flip, a), invert_aut(flip)).s == 1;
    }
    out.add("aut-hom-residuals", hom_ok, "20 random instances");
    out.add("aut-round-trips", round_ok);
    out.add("aut-positive-subgroup", sub_ok);
}

void verify_der(const CliState& st, CheckList& out) {
    const AlgebraCfg cfg = st.cfg();
    {
        const Window w{4, 4};
        WindowMap d0 = tabulate(w, [](BasisIndex b) { return d0_apply(Element::basis(b)); });
        out.add("d0-leibniz", leibniz_residuals({st.q, false}, d0, w).empty(), "window 4,4");
    }
    out.add("d0-outer", d0_is_outer({st.q, false}, {4, 3}), "ad_u = d0 infeasible");
    (void)cfg;
}

void verify_h1(const CliState& st, CheckList& out) {
    const AlgebraCfg cfg{st.q, false};
    for (auto [w, core] :
         std::vector<std::pair<Window, Window>>{{{5, 4}, {3, 2}}, {{6, 5}, {4, 3}}}) {
        bool ok = solve_h1(cfg, 0, w, core).dimension == 1;
        for (std::int64_t d : {-2, -1, 1, 2})
            ok = ok && solve_h1(cfg, d, w, core).dimension == 0;
        std::ostringstream name;
        name << "h1-window-" << w.A << "," << w.I;
        out.add(name.str(), ok, "dim 1 at degree 0, dim 0 at degrees +-1, +-2");
    }
}

void verify_h2(const CliState& st, CheckList& out) {
    const AlgebraCfg cfg{st.q, false};
    {
        const Window w{6, 3};
        out.add("canonical-cocycle",
                cocycle_residuals(cfg, canonical_cocycle(cfg, w), w).empty(), "window 6,3");
    }
    for (auto [w, core] :
         std::vector<std::pair<Window, Window>>{{{5, 3}, {3, 1}}, {{6, 3}, {4, 1}}}) {
        auto r = solve_h2(cfg, w, core);
        bool ok = r.dimension == 1 && r.proportional && r.lambda && *r.lambda != 0 &&
                  r.representative.has_value();
        if (ok) {
            const WindowForm& phi = *r.representative;
            for (std::int64_t i = 1; i <= w.I; ++i)
                ok = ok && phi.value({-2, i}, {2, 0}) == 0;
            for (const auto& [p, v] : phi.values())
                if (p.first.alpha + p.second.alpha != 0) ok = false;
            const Rational base = phi.value({2, 0}, {-2, 0});
            for (std::int64_t a = 3; a <= std::min<std::int64_t>(4, w.A); ++a)
                ok = ok && phi.value({a, 0}, {-a, 0}) ==
                               base * Rational(a * a * a - a, 6);
        }
        std::ostringstream name;
        name << "h2-window-" << w.A << "," << w.I;
        out.add(name.str(), ok, "dim 1, proportional to the canonical cocycle");
    }
}

void verify_iso(const CliState& st, CheckList& out) {
    (void)st;
    bool ok = true;
    for (std::int64_t q1 = 1; q1 <= 3; ++q1)
        for (std::int64_t q2 = 1; q2 <= 3; ++q2) {
            auto r = constrained_iso_search(q1, q2, {4, 2});
            if (q1 == q2)
                ok = ok && r.outcome == IsoSearchResult::Outcome::Family && r.instance_verified;
            else
                ok = ok && r.outcome == IsoSearchResult::Outcome::Empty;
            ok = ok && divisibility_obstruction(q1, q2) == (q2 % q1 == 0);
        }
    out.add("iso-grid", ok, "q <= 3, window 4,2");
}

void verify_embed(const CliState& st, CheckList& out) {
    out.add("embed-virasoro", virasoro_embedding_check({st.q, false}, {4, 0}).empty());
    out.add("embed-virasoro-extended", virasoro_embedding_check({st.q, true}, {4, 0}).empty());
    out.add("embed-b1", b1_embedding_check({st.q, false}, {3, 2 * st.q}).empty());
}

void run_verify(CliState& st, const std::string& suite) {
    CheckList out;
    if (suite == "jacobi" || suite == "all") verify_jacobi(st, out);
    if (suite == "aut" || suite == "all") verify_aut(st, out);
    if (suite == "der" || suite == "all") verify_der(st, out);
    if (suite == "h1" || suite == "all") verify_h1(st, out);
    if (suite == "h2" || suite == "all") verify_h2(st, out);
    if (suite == "iso" || suite == "all") verify_iso(st, out);
    if (suite == "embed" || suite == "all") verify_embed(st, out);

    json j = st.base_record("verify");
    j["suite"] = suite;
    j["checks"] = json::array();
    std::ostringstream plain;
    for (std::size_t k = 0; k < out.checks.size(); ++k) {
        const auto& [name, ok] = out.checks[k];
        j["checks"].push_back({{"name", name}, {"ok", ok}, {"detail", out.details[k]}});
        plain << (ok ? "ok   " : "FAIL ") << name;
        if (!out.details[k].empty()) plain << "  (" << out.details[k] << ")";
        plain << "\n";
    }
    j["ok"] = out.all_ok();
    plain << (out.all_ok() ? "verify: pass\n" : "verify: FAIL\n");
    st.emit(j, plain.str());
    if (!out.all_ok()) st.rc = kExitMath;
}

// ---------------------------------------------------------------------------

WindowForm read_form(std::istream& in, const Window& w) {
    WindowForm psi(w);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string ta, tb, tv;
        if (!(ls >> ta)) continue;
        if (!(ls >> tb >> tv))
            throw parse_error(0, "form line must be 'L[a,i] L[b,j] value': " + line);
        psi.set(parse_atom_index(ta), parse_atom_index(tb), parse_rational(tv));
    }
    return psi;
}

std::string format_form(const WindowForm& psi) {
    std::ostringstream os;
    for (const auto& [p, v] : psi.values())
        os << "L[" << p.first.alpha << "," << p.first.i << "] L[" << p.second.alpha << ","
           << p.second.i << "] " << rat_str(v) << "\n";
    return os.str();
}

json form_json(const WindowForm& psi) {
    json arr = json::array();
    for (const auto& [p, v] : psi.values()) {
        std::ostringstream a, b;
        a << "L[" << p.first.alpha << "," << p.first.i << "]";
        b << "L[" << p.second.alpha << "," << p.second.i << "]";
        arr.push_back({a.str(), b.str(), rat_str(v)});
    }
    return arr;
}

int dispatch(int argc, char** argv) {
    CliState st;

    // config prepass: flags parsed later take precedence
    {
        std::string path;
        bool explicit_path = false;
        for (int k = 1; k < argc; ++k) {
            const std::string a = argv[k];
            if (a == "--config" && k + 1 < argc) {
                path = argv[k + 1];
                explicit_path = true;
            } else if (a.rfind("--config=", 0) == 0) {
                path = a.substr(9);
                explicit_path = true;
            }
        }
        if (!explicit_path)
            if (const char* env = std::getenv("BLOCKTYPE_CONFIG")) path = env;
        if (!path.empty()) apply_config_file(st, path, explicit_path);
    }

    CLI::App app{"Block-type Lie algebra calculator"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_dummy;
    app.add_option("--config", config_dummy, "flat key=value config file");
    app.add_option("--q", st.q, "algebra parameter q (positive)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--extended", st.extended, "use the central extension");
    app.add_option("--window", st.window_str, "truncation window 'A,I'");
    app.add_option("--core", st.core_str, "measurement core 'A,I'");
    app.add_option("--degree", st.degree, "graded degree (h1)");
    app.add_option("--output", st.output, "output format")
        ->check(CLI::IsMember({"plain", "json"}));

    // bracket X Y
    {
        auto* cmd = app.add_subcommand("bracket", "Lie bracket of two elements");
        auto xs = std::make_shared<std::string>();
        auto ys = std::make_shared<std::string>();
        cmd->add_option("x", *xs, "first element")->required();
        cmd->add_option("y", *ys, "second element")->required();
        cmd->callback([&st, xs, ys] {
            Element r = bracket(st.cfg(), parse_element(*xs), parse_element(*ys));
            json j = st.base_record("bracket");
            j["result"] = element_json(r);
            st.emit(j, format_element(r) + "\n");
        });
    }

    // adpow F V K
    {
        auto* cmd = app.add_subcommand("adpow", "iterated adjoint action ad_F^K(V)");
        auto fs = std::make_shared<std::string>();
        auto vs = std::make_shared<std::string>();
        auto k = std::make_shared<std::int64_t>(1);
        cmd->add_option("f", *fs, "acting element")->required();
        cmd->add_option("v", *vs, "target element")->required();
        cmd->add_option("k", *k, "power")->required()->check(CLI::NonNegativeNumber);
        cmd->callback([&st, fs, vs, k] {
            Element r = ad_pow(st.cfg(), parse_element(*fs), parse_element(*vs), *k);
            json j = st.base_record("adpow");
            j["k"] = *k;
            j["result"] = element_json(r);
            st.emit(j, format_element(r) + "\n");
        });
    }

    // minterm X
    {
        auto* cmd = app.add_subcommand("minterm", "minimal term in the total order");
        auto xs = std::make_shared<std::string>();
        cmd->add_option("x", *xs, "element")->required();
        cmd->callback([&st, xs] {
            auto [idx, coeff] = min_term(parse_element(*xs));
            json j = st.base_record("minterm");
            j["index"] = {idx.alpha, idx.i};
            j["coeff"] = rat_str(coeff);
            st.emit(j, format_element(Element::basis(idx, coeff)) + "\n");
        });
    }

    // finite F
    {
        auto* cmd = app.add_subcommand("finite", "ad-local finiteness certificate");
        auto fs = std::make_shared<std::string>();
        auto depth = std::make_shared<std::int64_t>(8);
        cmd->add_option("f", *fs, "element")->required();
        cmd->add_option("--depth", *depth, "iterates checked")->check(CLI::PositiveNumber);
        cmd->callback([&st, fs, depth] {
            auto v = local_finiteness(st.cfg(), parse_element(*fs), *depth);
            json j = st.base_record("finite");
            j["locally_finite"] = v.locally_finite;
            std::ostringstream plain;
            if (v.locally_finite) {
                plain << "locally finite (element of span{L[0,0]})\n";
            } else {
                j["witness"] = {v.witness->alpha, v.witness->i};
                j["depth"] = v.depth;
                plain << "not locally finite; witness L[" << v.witness->alpha << ","
                      << v.witness->i << "], " << v.depth
                      << " iterates linearly independent\n";
            }
            st.emit(j, plain.str());
        });
    }

    // aut apply|compose|invert
    {
        auto* aut = app.add_subcommand("aut", "automorphism tools");
        aut->require_subcommand(1);
        {
            auto* cmd = aut->add_subcommand("apply", "apply sigma_{s,mu,nu} to an element");
            auto ps = std::make_shared<std::string>();
            auto xs = std::make_shared<std::string>();
            cmd->add_option("params", *ps, "s=..,mu=..,nu=..")->required();
            cmd->add_option("x", *xs, "element")->required();
            cmd->callback([&st, ps, xs] {
                Element r = apply_aut(st.cfg(), parse_aut_params(*ps), parse_element(*xs));
                json j = st.base_record("aut-apply");
                j["params"] = *ps;
                j["result"] = element_json(r);
                st.emit(j, format_element(r) + "\n");
            });
        }
        {
            auto* cmd = aut->add_subcommand("compose", "compose two parameter triples");
            auto p1 = std::make_shared<std::string>();
            auto p2 = std::make_shared<std::string>();
            cmd->add_option("first", *p1, "applied second")->required();
            cmd->add_option("second", *p2, "applied first")->required();
            cmd->callback([&st, p1, p2] {
                AutParams r = compose_aut(parse_aut_params(*p1), parse_aut_params(*p2));
                json j = st.base_record("aut-compose");
                j["result"] = format_aut_params(r);
                st.emit(j, format_aut_params(r) + "\n");
            });
        }
        {
            auto* cmd = aut->add_subcommand("invert", "invert a parameter triple");
            auto ps = std::make_shared<std::string>();
            cmd->add_option("params", *ps, "s=..,mu=..,nu=..")->required();
            cmd->callback([&st, ps] {
                AutParams r = invert_aut(parse_aut_params(*ps));
                json j = st.base_record("aut-invert");
                j["result"] = format_aut_params(r);
                st.emit(j, format_aut_params(r) + "\n");
            });
        }
    }

    // der extend|check|d0
    {
        auto* der = app.add_subcommand("der", "derivation tools");
        der->require_subcommand(1);
        auto gens = std::make_shared<std::vector<std::string>>();
        auto add_gen_opts = [&gens](CLI::App* cmd) {
            cmd->add_option("images", *gens,
                            "images of L[1,0], L[-1,0], L[2,0], L[-2,0], L[0,1]")
                ->expected(5)
                ->required();
        };
        auto assignment = [&st, gens] {
            GeneratorAssignment g;
            g.g_p1 = parse_element((*gens)[0]);
            g.g_m1 = parse_element((*gens)[1]);
            g.g_p2 = parse_element((*gens)[2]);
            g.g_m2 = parse_element((*gens)[3]);
            g.g_01 = parse_element((*gens)[4]);
            return g;
        };
        {
            auto* cmd = der->add_subcommand("extend", "extend generator images to a window");
            add_gen_opts(cmd);
            cmd->callback([&st, assignment] {
                const Window w = st.window_or({4, 3});
                auto [m, rep] = extend_derivation({st.q, false}, assignment(), w);
                json j = st.base_record("der-extend");
                j["window"] = {w.A, w.I};
                j["residuals"] = rep.total;
                json imgs = json::object();
                std::ostringstream plain;
                for (const BasisIndex& b : w.indices()) {
                    std::ostringstream key;
                    key << "L[" << b.alpha << "," << b.i << "]";
                    imgs[key.str()] = format_element(m.image(b));
                    plain << key.str() << " -> " << format_element(m.image(b)) << "\n";
                }
                j["images"] = imgs;
                plain << "residuals: " << rep.total << " of " << rep.checked << " pairs\n";
                st.emit(j, plain.str());
            });
        }
        {
            auto* cmd = der->add_subcommand("check", "test whether the extension is a derivation");
            add_gen_opts(cmd);
            cmd->callback([&st, assignment] {
                const Window w = st.window_or({4, 3});
                auto [m, rep] = extend_derivation({st.q, false}, assignment(), w);
                json j = st.base_record("der-check");
                j["window"] = {w.A, w.I};
                j["ok"] = rep.empty();
                j["residuals"] = rep.total;
                j["checked"] = rep.checked;
                std::ostringstream plain;
                plain << (rep.empty() ? "derivation: ok" : "derivation: FAIL") << " ("
                      << rep.total << " of " << rep.checked << " pairs fail)\n";
                st.emit(j, plain.str());
                if (!rep.empty()) st.rc = kExitMath;
            });
        }
        {
            auto* cmd = der->add_subcommand("d0", "apply the level-counting derivation");
            auto xs = std::make_shared<std::string>();
            cmd->add_option("x", *xs, "element")->required();
            cmd->callback([&st, xs] {
                Element r = d0_apply(parse_element(*xs));
                json j = st.base_record("der-d0");
                j["result"] = element_json(r);
                st.emit(j, format_element(r) + "\n");
            });
        }
    }

    // h1
    {
        auto* cmd = app.add_subcommand("h1", "windowed first cohomology at a graded degree");
        cmd->callback([&st] {
            auto r = solve_h1({st.q, false}, st.degree, st.window_or({5, 4}),
                              st.core_or({3, 2}));
            json j = st.base_record("h1");
            j["degree"] = st.degree;
            j["window"] = {r.window.A, r.window.I};
            j["core"] = {r.core.A, r.core.I};
            j["dimension"] = r.dimension;
            if (r.representative) {
                json rep = json::array();
                for (const auto& [b, m] : r.core_coords) {
                    const Rational v = r.representative->image(b).coeff(
                        {st.degree + b.alpha, m});
                    if (v == 0) continue;
                    std::ostringstream from, to;
                    from << "L[" << b.alpha << "," << b.i << "]";
                    to << rat_str(v) << "*L[" << st.degree + b.alpha << "," << m << "]";
                    rep.push_back({from.str(), to.str()});
                }
                j["representative"] = rep;
            }
            st.emit(j, r.to_record());
        });
    }

    // h2
    {
        auto* cmd = app.add_subcommand("h2", "windowed second cohomology");
        cmd->callback([&st] {
            auto r = solve_h2({st.q, false}, st.window_or({5, 3}), st.core_or({3, 1}));
            json j = st.base_record("h2");
            j["window"] = {r.window.A, r.window.I};
            j["core"] = {r.core.A, r.core.I};
            j["dimension"] = r.dimension;
            j["proportional"] = r.proportional;
            if (r.lambda) j["lambda"] = rat_str(*r.lambda);
            if (r.representative) j["representative"] = form_json(*r.representative);
            st.emit(j, r.to_record());
        });
    }

    // normalize (form read from stdin)
    {
        auto* cmd = app.add_subcommand(
            "normalize", "normalize a 2-cocycle (lines 'L[a,i] L[b,j] value' on stdin)");
        cmd->callback([&st] {
            const Window w = st.window_or({5, 3});
            WindowForm psi = read_form(std::cin, w);
            auto [phi, f] = normalize_cocycle({st.q, false}, psi, w);
            json j = st.base_record("normalize");
            j["window"] = {w.A, w.I};
            j["result"] = form_json(phi);
            json fj = json::object();
            for (const auto& [b, v] : f.values) {
                std::ostringstream key;
                key << "L[" << b.alpha << "," << b.i << "]";
                fj[key.str()] = rat_str(v);
            }
            j["functional"] = fj;
            st.emit(j, format_form(phi));
        });
    }

    // iso Q1 Q2
    {
        auto* cmd = app.add_subcommand("iso", "constrained isomorphism search B(q1) -> B(q2)");
        auto q1 = std::make_shared<std::int64_t>();
        auto q2 = std::make_shared<std::int64_t>();
        cmd->add_option("q1", *q1, "source parameter")->required()->check(CLI::PositiveNumber);
        cmd->add_option("q2", *q2, "target parameter")->required()->check(CLI::PositiveNumber);
        cmd->callback([&st, q1, q2] {
            auto r = constrained_iso_search(*q1, *q2, st.window_or({4, 2}));
            json j = st.base_record("iso");
            j["q1"] = *q1;
            j["q2"] = *q2;
            j["window"] = {r.window.A, r.window.I};
            j["outcome"] = r.outcome == IsoSearchResult::Outcome::Family ? "family" : "empty";
            j["note"] = r.reason;
            if (r.outcome == IsoSearchResult::Outcome::Family)
                j["instance_verified"] = r.instance_verified;
            st.emit(j, r.to_record());
        });
    }

    // embed vir|b1
    {
        auto* embed = app.add_subcommand("embed", "subalgebra embedding checks");
        embed->require_subcommand(1);
        {
            auto* cmd = embed->add_subcommand("vir", "Virasoro span {q^-1 L[a,0]}");
            cmd->callback([&st] {
                const Window w = st.window_or({4, 0});
                auto rep = virasoro_embedding_check(st.cfg(), w);
                json j = st.base_record("embed-vir");
                j["window"] = {w.A, w.I};
                j["ok"] = rep.empty();
                j["checked"] = rep.checked;
                std::ostringstream plain;
                plain << (rep.empty() ? "embedding: ok" : "embedding: FAIL") << " ("
                      << rep.checked << " pairs)\n";
                st.emit(j, plain.str());
                if (!rep.empty()) st.rc = kExitMath;
            });
        }
        {
            auto* cmd = embed->add_subcommand("b1", "B(1) copy {q^-1 L[a,q*i]}");
            cmd->callback([&st] {
                const Window w = st.window_or({3, 2 * st.q});
                auto rep = b1_embedding_check(st.cfg(), w);
                json j = st.base_record("embed-b1");
                j["window"] = {w.A, w.I};
                j["ok"] = rep.empty();
                j["checked"] = rep.checked;
                std::ostringstream plain;
                plain << (rep.empty() ? "embedding: ok" : "embedding: FAIL") << " ("
                      << rep.checked << " pairs)\n";
                st.emit(j, plain.str());
                if (!rep.empty()) st.rc = kExitMath;
            });
        }
    }

    // verify SUITE
    {
        auto* cmd = app.add_subcommand("verify", "run an invariant suite");
        auto suite = std::make_shared<std::string>();
        cmd->add_option("suite", *suite, "jacobi|aut|der|h1|h2|iso|embed|all")
            ->required()
            ->check(CLI::IsMember({"jacobi", "aut", "der", "h1", "h2", "iso", "embed", "all"}));
        cmd->callback([&st, suite] { run_verify(st, *suite); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    return st.rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const invalid_element_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const window_too_small_error& e) {
        std::cerr << "error: " << e.what() << " (enlarge --window or shrink --core)\n";
        return kExitPrecondition;
    } catch (const no_minimal_term_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    }
}
