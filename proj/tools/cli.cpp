#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "liesym/conservation.hpp"
#include "liesym/special.hpp"

namespace liesym::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string n_range = "1..4";
    std::string regime;  // integer | fractional | both; empty = command default
    double alpha = 0.5;
    std::size_t grid = 2000;
    std::size_t quad = 256;
    std::string scheme = "gl";
    double tcut = 0.1;
    std::string format = "text";
    std::string output;
    unsigned seed = 1;
    std::string fixtures_path;

    int n_lo = 1, n_hi = 4;
    std::vector<Regime> regimes;
    JetOptions jet;
    Fixtures fixtures;
};

std::pair<int, int> parse_range(const std::string& s) {
    auto to_int = [&](const std::string& v) {
        std::size_t used = 0;
        int x = 0;
        try {
            x = std::stoi(v, &used);
        } catch (const std::exception&) {
            throw UsageError("bad dimension range '" + s + "'");
        }
        if (used != v.size()) throw UsageError("bad dimension range '" + s + "'");
        return x;
    };
    const auto dots = s.find("..");
    const int lo = to_int(dots == std::string::npos ? s : s.substr(0, dots));
    const int hi = dots == std::string::npos ? lo : to_int(s.substr(dots + 2));
    if (lo < 1 || hi < lo) throw UsageError("dimension range must satisfy 1 <= a <= b");
    return {lo, hi};
}

void finish_config(RunConfig& c) {
    std::tie(c.n_lo, c.n_hi) = parse_range(c.n_range);
    std::string r = c.regime;
    if (r.empty()) r = c.command == "count" ? "both" : "integer";
    if (r == "both") c.regimes = {Regime::Integer, Regime::Fractional};
    else c.regimes = {parse_regime(r)};
    if (!(c.alpha > 0 && c.alpha < 1)) throw UsageError("--alpha must lie in (0, 1)");
    if (c.grid < 16) throw UsageError("--grid must be at least 16");
    if (c.quad < 2) throw UsageError("--quad must be at least 2");
    if (!(c.tcut > 0 && c.tcut < 1)) throw UsageError("--tcut must lie in (0, 1)");
    (void)parse_scheme(c.scheme);
    if (const char* env = std::getenv("LIESYM_MAX_JET")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 2 || v > 12) throw UsageError("LIESYM_MAX_JET must be an integer in [2, 12]");
        c.jet.max_order = static_cast<int>(v);
    }
    if (c.fixtures_path.empty()) {
        c.fixtures = default_fixtures();
        return;
    }
    std::ifstream in(c.fixtures_path);
    if (!in) throw IoError("cannot read " + c.fixtures_path);
    json j;
    try {
        in >> j;
        c.fixtures = fixtures_from_json(j);
    } catch (const std::exception& e) {
        throw IoError("malformed fixtures in " + c.fixtures_path + ": " + e.what());
    }
}

std::vector<HeatEquation> equations(const RunConfig& c) {
    std::vector<HeatEquation> out;
    for (Regime r : c.regimes)
        for (int n = c.n_lo; n <= c.n_hi; ++n) out.emplace_back(n, r);
    return out;
}

std::string label(const HeatEquation& eq) { return "n=" + std::to_string(eq.n) + " " + regime_name(eq.regime); }

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

// --- count -----------------------------------------------------------------------

struct Output {
    json j;
    std::string text, latex;
    bool pass = true;
};

Output cmd_count(const RunConfig& c) {
    Output o;
    o.j = {{"command", "count"}, {"rows", json::array()}};
    std::ostringstream t, l;
    t << "n  integer  fractional\n";
    l << "\\begin{tabular}{rrr}\nn & integer & fractional\\\\\n";
    for (int n = c.n_lo; n <= c.n_hi; ++n) {
        json row{{"n", n}};
        t << n;
        l << n;
        for (Regime r : {Regime::Integer, Regime::Fractional}) {
            const int formula = count_formula(n, r);
            const auto listed = static_cast<int>(generators({n, r}).size());
            row[regime_name(r)] = formula;
            row[regime_name(r) + "_catalog"] = listed;
            if (listed != formula) o.pass = false;
            t << "  " << formula;
            l << " & " << formula;
        }
        t << "\n";
        l << "\\\\\n";
        o.j["rows"].push_back(row);
    }
    l << "\\end{tabular}\n";
    o.j["pass"] = o.pass;
    o.text = t.str();
    o.latex = l.str();
    return o;
}

// --- gen ---------------------------------------------------------------------------

Output cmd_gen(const RunConfig& c) {
    Output o;
    o.j = {{"command", "gen"}, {"catalogs", json::array()}};
    std::ostringstream t;
    for (const auto& eq : equations(c)) {
        o.j["catalogs"].push_back(catalog_json(eq));
        o.latex += catalog_latex(eq);
        t << "# " << eq.str() << " (" << label(eq) << ")\n";
        for (const auto& g : generators(eq)) {
            t << g.field.name << "  [" << class_name(g.cls) << "]  " << g.field.str();
            if (!g.note.empty()) t << "  -- " << g.note;
            t << "\n";
        }
        for (const auto& note : catalog_notes(eq)) t << "note: " << note << "\n";
    }
    o.text = t.str();
    return o;
}

// --- brackets ----------------------------------------------------------------------

Output cmd_brackets(const RunConfig& c) {
    Output o;
    o.j = {{"command", "brackets"}, {"results", json::array()}};
    std::ostringstream t;
    for (const auto& eq : equations(c)) {
        const auto basis = fields(generators(eq));
        const auto table = commutator_table(basis);
        json r{{"dimension", eq.n}, {"regime", regime_name(eq.regime)}, {"table", to_json(table)}};
        t << "# " << label(eq) << "\n";
        const auto names = table.names();
        for (std::size_t i = 0; i < table.size(); ++i)
            for (std::size_t j = i + 1; j < table.size(); ++j) {
                const auto& d = table.at(i, j).dec;
                if (d.in_span && d.is_zero()) continue;
                t << "[" << names[i] << ", " << names[j] << "] = "
                  << (d.in_span ? d.str(names) : "outside the span (F family)") << "\n";
            }
        o.latex += to_latex(table);
        if (const auto* printed = c.fixtures.bracket_table(eq.n, eq.regime)) {
            const auto reg = bracket_regression(*printed, c.fixtures.allow_list);
            r["regression"] = to_json(reg);
            o.pass = o.pass && reg.pass();
            t << "printed table " << reg.table << ": " << reg.checks.size() << " entries, " << reg.mismatches()
              << " disagree with computation\n";
            for (const auto& ck : reg.checks)
                if (!ck.match)
                    t << "  [" << ck.a << ", " << ck.b << "] printed " << ck.printed << ", computed " << ck.computed
                      << (ck.allowed ? " (allow-listed)" : " (NOT allow-listed)") << "\n";
            for (const auto& s : reg.stale_allowances) t << "  stale allowance: " << s << "\n";
        }
        o.j["results"].push_back(r);
    }
    o.j["pass"] = o.pass;
    o.text = t.str();
    return o;
}

// --- algebra -----------------------------------------------------------------------

json algebra_report(const HeatEquation& eq, bool& pass) {
    const auto gens = generators(eq);
    std::vector<NamedGenerator> finite;
    for (const auto& g : gens)
        if (g.cls != GenClass::Infinite) finite.push_back(g);
    const auto basis = fields(finite);
    json r{{"dimension", eq.n}, {"regime", regime_name(eq.regime)}};
    const auto closure = closure_report(basis);
    r["closed"] = closure.closed;
    pass = pass && closure.closed;
    try {
        const auto sc = structure_constants(basis);
        r["antisymmetric"] = sc.antisymmetric();
        r["jacobi"] = sc.jacobi();
        r["derived_series"] = derived_series(sc);
        pass = pass && sc.antisymmetric() && sc.jacobi();
    } catch (const NotClosed& e) {
        r["structure_constants_error"] = e.what();
        pass = false;
    }
    json matches = json::array();
    if (!eq.fractional()) {
        const auto tt = select(gens, {GenClass::TimeTranslation});
        const auto dil = select(gens, {GenClass::Dilation});
        const auto proj = select(gens, {GenClass::Projective});
        const auto hom = select(gens, {GenClass::Homogeneity});
        if (tt.size() == 1 && dil.size() == 1 && proj.size() == 1 && hom.size() == 1) {
            const auto m = match_canonical({tt[0].field, dil[0].field, proj[0].field}, CanonicalPattern::sl2(),
                                           {hom[0].field});
            matches.push_back({{"pattern", "sl(2,R)"},
                               {"basis", {tt[0].field.name, dil[0].field.name, proj[0].field.name}},
                               {"modulo", hom[0].field.name},
                               {"matched", m.matched},
                               {"reason", m.reason}});
            pass = pass && m.matched;
        }
    }
    if (eq.n >= 2) {
        const auto rot = fields(select(gens, {GenClass::Rotation}));
        std::vector<VectorField> ordered;
        for (int a = 1; a <= eq.n; ++a)
            for (int b = a + 1; b <= eq.n; ++b)
                for (const auto& f : rot)
                    if (!equals_zero(f.xi[static_cast<std::size_t>(a - 1)]) &&
                        !equals_zero(f.xi[static_cast<std::size_t>(b - 1)]))
                        ordered.push_back(f);
        json names = json::array();
        for (const auto& f : ordered) names.push_back(f.name);
        json m{{"pattern", CanonicalPattern::so(eq.n).name()}, {"basis", names}};
        try {
            const auto cm = match_canonical(ordered, CanonicalPattern::so(eq.n));
            m["matched"] = cm.matched;
            m["reason"] = cm.reason;
            pass = pass && cm.matched;
        } catch (const std::exception& e) {
            m["matched"] = false;
            m["reason"] = e.what();
            pass = false;
        }
        matches.push_back(m);
    }
    r["canonical_matches"] = matches;
    return r;
}

Output cmd_algebra(const RunConfig& c) {
    Output o;
    o.j = {{"command", "algebra"}, {"results", json::array()}};
    std::ostringstream t;
    for (const auto& eq : equations(c)) {
        const auto r = algebra_report(eq, o.pass);
        o.j["results"].push_back(r);
        t << "# " << label(eq) << " (finite part)\n";
        t << "closed: " << (r.at("closed").get<bool>() ? "yes" : "no") << "\n";
        if (r.contains("jacobi")) {
            t << "antisymmetry: " << (r.at("antisymmetric").get<bool>() ? "yes" : "no")
              << ", Jacobi: " << (r.at("jacobi").get<bool>() ? "yes" : "no") << "\n";
            t << "derived series:";
            for (int d : r.at("derived_series")) t << " " << d;
            t << "\n";
        }
        for (const auto& m : r.at("canonical_matches")) {
            t << m.at("pattern").get<std::string>() << " on";
            for (const auto& b : m.at("basis")) t << " " << b.get<std::string>();
            if (m.contains("modulo")) t << " modulo " << m.at("modulo").get<std::string>();
            t << ": " << (m.at("matched").get<bool>() ? "matched" : "no match");
            const auto reason = m.at("reason").get<std::string>();
            if (!reason.empty()) t << " (" << reason << ")";
            t << "\n";
        }
    }
    o.j["pass"] = o.pass;
    o.text = t.str();
    o.latex = o.text;
    return o;
}

// --- conserve ----------------------------------------------------------------------

Output cmd_conserve(const RunConfig& c) {
    Output o;
    o.j = {{"command", "conserve"}, {"results", json::array()}};
    std::ostringstream t;
    for (const auto& eq : equations(c)) {
        json r{{"dimension", eq.n}, {"regime", regime_name(eq.regime)}, {"vectors", json::array()}};
        t << "# " << label(eq) << "\n";
        const PrintOptions po{eq.n};
        for (const auto& cv : conserved_vectors(eq, c.fixtures, c.jet)) {
            r["vectors"].push_back(to_json(cv));
            o.latex += "% " + cv.symmetry + "\n" + to_latex(cv);
            t << cv.symmetry << ": W = " << to_string(cv.W, po) << "\n";
            t << "  C^t = " << cv.Ct_str(po) << "\n";
            for (int i = 1; i <= eq.n; ++i)
                t << "  C^" << var_name(static_cast<VarIndex>(i), eq.n) << " = "
                  << to_string(cv.Cx[static_cast<std::size_t>(i - 1)], po) << "\n";
            if (cv.trivial) t << "  trivial\n";
            if (!cv.paper_diff) continue;
            const auto& d = *cv.paper_diff;
            t << "  printed entry: " << (d.printed_entry.empty() ? "none" : d.printed_entry);
            if (!d.matched_by.empty()) t << " (matched by " << d.matched_by << ")";
            t << "\n";
            for (const auto& comp : d.components) {
                t << "    " << comp.component << ": " << comp.status;
                if (!comp.difference.empty()) t << "  printed - computed = " << comp.difference;
                t << "\n";
            }
            for (const auto& note : d.notes) t << "    note: " << note << "\n";
        }
        o.j["results"].push_back(r);
    }
    o.text = t.str();
    return o;
}

// --- verify ------------------------------------------------------------------------

struct Check {
    std::string name;
    HeatEquation eq;
    bool pass;
    std::string detail;
};

void integer_checks(const HeatEquation& eq, const RunConfig& c, std::vector<Check>& out) {
    const auto gens = generators(eq);
    int zero = 0;
    std::string bad;
    for (const auto& g : gens) {
        if (equals_zero(determining_residual(eq, g.field, c.jet))) ++zero;
        else bad += " " + g.field.name;
    }
    const auto total = static_cast<int>(gens.size());
    out.push_back({"determining residuals", eq, zero == total,
                   std::to_string(zero) + "/" + std::to_string(total) + " zero" + (bad.empty() ? "" : ";" + bad)});

    int rejected = 0, controls = 0;
    for (const auto& g : gens)
        for (const auto& p : negative_controls(g.field, c.seed, 1)) {
            ++controls;
            if (!equals_zero(determining_residual(eq, p.field, c.jet))) ++rejected;
        }
    out.push_back({"negative controls", eq, rejected == controls,
                   std::to_string(rejected) + "/" + std::to_string(controls) + " rejected"});

    int div_zero = 0;
    bad.clear();
    for (const auto& g : gens) {
        const auto cv = conserved_vector(g.field, eq, c.jet);
        if (equals_zero(divergence_onshell_symbolic(cv, eq, c.jet))) ++div_zero;
        else bad += " " + g.field.name;
    }
    out.push_back({"conservation divergences", eq, div_zero == total,
                   std::to_string(div_zero) + "/" + std::to_string(total) + " zero" + (bad.empty() ? "" : ";" + bad)});
}

void fractional_checks(const HeatEquation& eq, const RunConfig& c, std::vector<Check>& out) {
    const auto gens = generators(eq);
    int ok = 0;
    for (const auto& g : gens) {
        const auto cv = conserved_vector(g.field, eq, c.jet);
        const bool shape = cv.nonlocal.size() == 2 && equal(cv.nonlocal[0].arg, cv.W) &&
                           equal(cv.nonlocal[1].arg, cv.W);
        ok += shape ? 1 : 0;
    }
    out.push_back({"conserved vector structure", eq, ok == static_cast<int>(gens.size()),
                   std::to_string(ok) + "/" + std::to_string(gens.size()) + " carry the two nonlocal nodes"});

    if (eq.n <= 2) {
        InvarianceConfig cfg;
        cfg.scheme = parse_scheme(c.scheme);
        cfg.tcut_fraction = c.tcut;
        if (eq.n == 2) {
            cfg.time_points = 501;
            cfg.space_points = 32;
        }
        const auto src = exact_solutions(eq, c.alpha, 1.0)[2].value;
        for (const auto& g : gens) {
            if (g.cls == GenClass::Infinite) continue;
            for (double eps : {0.1, 0.3}) {
                const auto r = invariance_check(eq, src, exponentiate(g, c.alpha), eps, c.alpha, cfg);
                out.push_back({"invariance " + g.field.name + " eps=" + fmt(eps), eq, r.pass,
                               r.message.empty() ? "residual " + fmt(r.base_residual) + " -> " +
                                                       fmt(r.transformed_residual)
                                                 : r.message});
            }
        }
        const auto wrong = invariance_check(eq, src, dilation_flow(eq.n, 2.0, 1.0, 0.0), 0.1, c.alpha, cfg);
        out.push_back({"mis-weighted dilation rejected", eq, !wrong.pass,
                       "residual " + fmt(wrong.base_residual) + " -> " + fmt(wrong.transformed_residual)});
    }

    if (eq.n == 1) {
        const double a = c.alpha, T = 2.0;
        const std::size_t K = c.grid + 1;
        const FluxConfig fc{a, c.quad, parse_scheme(c.scheme)};
        const auto cv = conserved_vector(by_name(gens, "G03").field, eq, c.jet);
        auto sample = [&](const std::function<double(double, double)>& f) {
            return GridFunction::sample(Axis::span(0, T, K), {Axis::span(0, 1, 11)},
                                        [&](double t, std::span<const double> x) { return f(t, x[0]); });
        };
        const auto ml = sample([&](double t, double x) {
            return std::pow(t, a - 1) * mittag_leffler(a, a, -std::pow(t, a)) * std::cos(x);
        });
        const auto one = sample([](double, double) { return 1.0; });
        const auto r1 = divergence_numeric_fractional(cv, ml, one, {}, fc);
        out.push_back({"flux balance G03, Mittag-Leffler u, phi = 1", eq, r1.imbalance < 1e-2,
                       "imbalance " + fmt(r1.imbalance)});
        const auto u = sample([&](double t, double) { return std::pow(t, a - 1); });
        const auto phi = sample([&](double t, double) { return std::pow(T - t, a - 1); });
        const auto r2 = divergence_numeric_fractional(cv, u, phi, {}, fc);
        out.push_back({"flux balance G03, u = t^(a-1), phi = (T-t)^(a-1)", eq, r2.imbalance < 1e-2,
                       "imbalance " + fmt(r2.imbalance) + "; J(u, phi_t) diverges at t = T"});
    }
}

Output cmd_verify(const RunConfig& c) {
    std::vector<Check> checks;
    for (const auto& eq : equations(c)) {
        const auto listed = static_cast<int>(generators(eq).size());
        checks.push_back({"catalog size", eq, listed == count_formula(eq.n, eq.regime),
                          std::to_string(listed) + " generators"});
        if (const auto* printed = c.fixtures.bracket_table(eq.n, eq.regime)) {
            const auto reg = bracket_regression(*printed, c.fixtures.allow_list);
            checks.push_back({"bracket regression", eq, reg.pass(),
                              std::to_string(reg.checks.size()) + " printed, " + std::to_string(reg.mismatches()) +
                                  " allow-listed discrepancies"});
        }
        bool alg = true;
        const auto ar = algebra_report(eq, alg);
        checks.push_back({"algebra structure", eq, alg, "closure, Jacobi, canonical matches"});
        if (eq.fractional()) fractional_checks(eq, c, checks);
        else integer_checks(eq, c, checks);
    }
    Output o;
    o.j = {{"command", "verify"},
           {"config",
            {{"n", c.n_range},
             {"alpha", c.alpha},
             {"grid", c.grid},
             {"quad", c.quad},
             {"scheme", c.scheme},
             {"tcut", c.tcut},
             {"seed", c.seed},
             {"max_jet", c.jet.max_order}}},
           {"checks", json::array()}};
    std::ostringstream t;
    int passed = 0;
    for (const auto& ck : checks) {
        o.j["checks"].push_back({{"name", ck.name},
                                 {"dimension", ck.eq.n},
                                 {"regime", regime_name(ck.eq.regime)},
                                 {"pass", ck.pass},
                                 {"detail", ck.detail}});
        t << (ck.pass ? "PASS " : "FAIL ") << label(ck.eq) << "  " << ck.name << ": " << ck.detail << "\n";
        passed += ck.pass ? 1 : 0;
        o.pass = o.pass && ck.pass;
    }
    t << passed << "/" << checks.size() << " checks passed\n";
    o.j["pass"] = o.pass;
    o.text = t.str();
    o.latex = o.text;
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lie point symmetries and conservation laws of the heat equation"};
    app.require_subcommand(1);
    RunConfig c;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"gen", "generator catalog"},
        {"brackets", "commutator tables and the printed-table regression"},
        {"algebra", "closure, derived series and canonical matches"},
        {"conserve", "conserved vectors with the printed-table diff"},
        {"verify", "symbolic and numeric verification suite"},
        {"count", "generator counts for a range of n"}};
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--n", c.n_range, "dimension or range a..b")->capture_default_str();
        sub->add_option("--regime", c.regime, "integer, fractional or both")
            ->check(CLI::IsMember({"integer", "fractional", "both"}));
        sub->add_option("--alpha", c.alpha, "fractional order in (0, 1)")->capture_default_str();
        sub->add_option("--grid", c.grid, "time steps K")->capture_default_str();
        sub->add_option("--quad", c.quad, "J quadrature nodes k")->capture_default_str();
        sub->add_option("--scheme", c.scheme, "gl or l1")->check(CLI::IsMember({"gl", "l1", "GL", "L1"}));
        sub->add_option("--tcut", c.tcut, "initial-layer cut as a fraction of T")->capture_default_str();
        sub->add_option("--format", c.format, "json, latex or text")->check(CLI::IsMember({"json", "latex", "text"}));
        sub->add_option("--output", c.output, "write to this file");
        sub->add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();
        sub->add_option("--fixtures,--catalog", c.fixtures_path, "printed-table fixtures (JSON)");
        sub->callback([&c, name = name] { c.command = name; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Output o;
    try {
        finish_config(c);
        if (c.command == "count") o = cmd_count(c);
        else if (c.command == "gen") o = cmd_gen(c);
        else if (c.command == "brackets") o = cmd_brackets(c);
        else if (c.command == "algebra") o = cmd_algebra(c);
        else if (c.command == "conserve") o = cmd_conserve(c);
        else o = cmd_verify(c);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    std::string body;
    if (c.format == "json") body = o.j.dump(2) + "\n";
    else if (c.format == "latex") body = o.latex.empty() ? o.text : o.latex;
    else body = o.text;

    if (c.output.empty()) {
        out << body;
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!(f << body)) {
            err << "error: cannot write " << c.output << "\n";
            return kIo;
        }
    }
    return o.pass ? kOk : kCheckFailed;
}

}  // namespace liesym::cli
