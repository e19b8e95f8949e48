#include "liesym/heat_catalog.hpp"

#include <cmath>
#include <numbers>

#include "liesym/special.hpp"

namespace liesym {

std::string regime_name(Regime r) { return r == Regime::Integer ? "integer" : "fractional"; }

Regime parse_regime(const std::string& s) {
    if (s == "integer") return Regime::Integer;
    if (s == "fractional") return Regime::Fractional;
    throw std::invalid_argument("unknown regime '" + s + "' (expected integer or fractional)");
}

HeatEquation::HeatEquation(int n_, Regime r) : n(n_), regime(r) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (n > 255) throw std::invalid_argument("dimension too large");
}

Expr HeatEquation::lhs() const {
    return fractional() ? Expr::symbol(Atom::jet(Field::DalphaU)) : Expr::u({kTime});
}

Expr HeatEquation::rhs() const {
    std::vector<Expr> terms;
    for (int i = 1; i <= n; ++i) {
        const auto v = static_cast<VarIndex>(i);
        terms.push_back(Expr::u({v, v}));
    }
    return normalize(Expr::sum(std::move(terms)));
}

std::string HeatEquation::str() const {
    return to_string(lhs(), {n}) + " = " + to_string(rhs(), {n});
}

std::string class_name(GenClass c) {
    switch (c) {
        case GenClass::SpaceTranslation: return "space-translation";
        case GenClass::TimeTranslation: return "time-translation";
        case GenClass::Solution: return "solution";
        case GenClass::Rotation: return "rotation";
        case GenClass::Dilation: return "dilation";
        case GenClass::Projective: return "projective";
        case GenClass::Homogeneity: return "homogeneity";
        case GenClass::Infinite: return "infinite";
    }
    return "?";
}

namespace {

using GC = GenClass;

NamedGenerator gen(std::string name, GC cls, const char* xi0, std::vector<const char*> xi,
                   const char* eta, std::string note = {}) {
    VectorField f;
    f.name = std::move(name);
    f.xi0 = parse(xi0);
    for (const char* s : xi) f.xi.push_back(parse(s));
    f.eta = parse(eta);
    return {std::move(f), cls, std::move(note)};
}

const char* const kG14Note =
    "kept as printed: 4t d_t + 2 alpha (x d_x + y d_y) + (3 alpha - 2) u d_u; it equals twice the "
    "2t-normalized dilation plus (3 alpha - 2) u d_u";

std::vector<NamedGenerator> catalog_1d(Regime r) {
    if (r == Regime::Integer)
        return {
            gen("G1", GC::SpaceTranslation, "0", {"1"}, "0"),
            gen("G2", GC::Solution, "0", {"2*t"}, "-u*x"),
            gen("G3", GC::TimeTranslation, "1", {"0"}, "0"),
            gen("G4", GC::Dilation, "2*t", {"x"}, "0"),
            gen("G5", GC::Projective, "4*t^2", {"4*t*x"}, "-u*(2*t + x^2)"),
            gen("G6", GC::Homogeneity, "0", {"0"}, "u"),
            gen("G7", GC::Infinite, "0", {"0"}, "F"),
        };
    return {
        gen("G01", GC::SpaceTranslation, "0", {"1"}, "0"),
        gen("G02", GC::Dilation, "2*t", {"alpha*x"}, "0"),
        gen("G03", GC::Homogeneity, "0", {"0"}, "u"),
        gen("G04", GC::Infinite, "0", {"0"}, "F"),
    };
}

std::vector<NamedGenerator> catalog_2d(Regime r) {
    if (r == Regime::Integer)
        return {
            gen("G21", GC::SpaceTranslation, "0", {"1", "0"}, "0"),
            gen("G22", GC::SpaceTranslation, "0", {"0", "1"}, "0"),
            gen("G23", GC::Solution, "0", {"0", "2*t"}, "-u*y"),
            gen("G24", GC::Solution, "0", {"2*t", "0"}, "-u*x"),
            gen("G25", GC::Rotation, "0", {"y", "-x"}, "0"),
            gen("G26", GC::TimeTranslation, "1", {"0", "0"}, "0"),
            gen("G27", GC::Dilation, "2*t", {"x", "y"}, "0"),
            gen("G28", GC::Projective, "4*t^2", {"4*x*t", "4*y*t"}, "-u*(4*t + x^2 + y^2)"),
            gen("G29", GC::Homogeneity, "0", {"0", "0"}, "u"),
            gen("G210", GC::Infinite, "0", {"0", "0"}, "F"),
        };
    return {
        gen("G11", GC::SpaceTranslation, "0", {"1", "0"}, "0"),
        gen("G12", GC::SpaceTranslation, "0", {"0", "1"}, "0"),
        gen("G13", GC::Rotation, "0", {"y", "-x"}, "0"),
        gen("G14", GC::Dilation, "4*t", {"2*alpha*x", "2*alpha*y"}, "u*(3*alpha - 2)", kG14Note),
        gen("G15", GC::Homogeneity, "0", {"0", "0"}, "u"),
        gen("G16", GC::Infinite, "0", {"0", "0"}, "F"),
    };
}

std::vector<NamedGenerator> catalog_3d(Regime r) {
    if (r == Regime::Integer)
        return {
            gen("G31", GC::SpaceTranslation, "0", {"1", "0", "0"}, "0"),
            gen("G32", GC::SpaceTranslation, "0", {"0", "1", "0"}, "0"),
            gen("G33", GC::SpaceTranslation, "0", {"0", "0", "1"}, "0"),
            gen("G34", GC::Solution, "0", {"0", "2*t", "0"}, "-u*y"),
            gen("G35", GC::Solution, "0", {"2*t", "0", "0"}, "-u*x"),
            gen("G36", GC::Solution, "0", {"0", "0", "2*t"}, "-u*z"),
            gen("G37", GC::Rotation, "0", {"-y", "x", "0"}, "0"),
            gen("G38", GC::Rotation, "0", {"-z", "0", "x"}, "0"),
            gen("G39", GC::Rotation, "0", {"0", "-z", "y"}, "0"),
            gen("G310", GC::TimeTranslation, "1", {"0", "0", "0"}, "0"),
            gen("G311", GC::Dilation, "2*t", {"x", "y", "z"}, "0"),
            gen("G312", GC::Projective, "4*t^2", {"4*x*t", "4*y*t", "4*z*t"},
                "-u*(6*t + x^2 + y^2 + z^2)"),
            gen("G313", GC::Homogeneity, "0", {"0", "0", "0"}, "u"),
            gen("G314", GC::Infinite, "0", {"0", "0", "0"}, "F"),
        };
    return {
        gen("G41", GC::SpaceTranslation, "0", {"1", "0", "0"}, "0"),
        gen("G42", GC::SpaceTranslation, "0", {"0", "1", "0"}, "0"),
        gen("G43", GC::SpaceTranslation, "0", {"0", "0", "1"}, "0"),
        gen("G44", GC::Rotation, "0", {"-y", "x", "0"}, "0"),
        gen("G45", GC::Rotation, "0", {"0", "z", "-y"}, "0"),
        gen("G46", GC::Rotation, "0", {"z", "0", "-x"}, "0"),
        gen("G47", GC::Dilation, "2*t", {"alpha*x", "alpha*y", "alpha*z"}, "u*(alpha - 1)"),
        gen("G48", GC::Homogeneity, "0", {"0", "0", "0"}, "u"),
        gen("G49", GC::Infinite, "0", {"0", "0", "0"}, "F"),
    };
}

std::vector<NamedGenerator> catalog_4d(Regime r) {
    if (r == Regime::Integer)
        return {
            gen("G51", GC::SpaceTranslation, "0", {"1", "0", "0", "0"}, "0"),
            gen("G52", GC::SpaceTranslation, "0", {"0", "1", "0", "0"}, "0"),
            gen("G53", GC::SpaceTranslation, "0", {"0", "0", "1", "0"}, "0"),
            gen("G54", GC::SpaceTranslation, "0", {"0", "0", "0", "1"}, "0"),
            gen("G55", GC::Solution, "0", {"0", "2*t", "0", "0"}, "-u*y"),
            gen("G56", GC::Solution, "0", {"2*t", "0", "0", "0"}, "-u*x"),
            gen("G57", GC::Solution, "0", {"0", "0", "2*t", "0"}, "-u*z"),
            gen("G58", GC::Solution, "0", {"0", "0", "0", "2*t"}, "-u*w"),
            gen("G59", GC::Rotation, "0", {"-y", "x", "0", "0"}, "0"),
            gen("G510", GC::Rotation, "0", {"0", "-w", "0", "y"}, "0"),
            gen("G511", GC::Rotation, "0", {"0", "-z", "y", "0"}, "0"),
            gen("G512", GC::Rotation, "0", {"-z", "0", "x", "0"}, "0"),
            gen("G513", GC::Rotation, "0", {"-w", "0", "0", "x"}, "0"),
            gen("G514", GC::Rotation, "0", {"0", "0", "-w", "z"}, "0"),
            gen("G515", GC::TimeTranslation, "1", {"0", "0", "0", "0"}, "0"),
            gen("G516", GC::Dilation, "2*t", {"x", "y", "z", "w"}, "0"),
            gen("G517", GC::Projective, "4*t^2", {"4*x*t", "4*y*t", "4*z*t", "4*w*t"},
                "-u*(8*t + x^2 + y^2 + z^2 + w^2)"),
            gen("G518", GC::Homogeneity, "0", {"0", "0", "0", "0"}, "u"),
            gen("G519", GC::Infinite, "0", {"0", "0", "0", "0"}, "F"),
        };
    return {
        gen("G61", GC::SpaceTranslation, "0", {"1", "0", "0", "0"}, "0"),
        gen("G62", GC::SpaceTranslation, "0", {"0", "1", "0", "0"}, "0"),
        gen("G63", GC::SpaceTranslation, "0", {"0", "0", "1", "0"}, "0"),
        gen("G64", GC::SpaceTranslation, "0", {"0", "0", "0", "1"}, "0"),
        gen("G65", GC::Rotation, "0", {"-y", "x", "0", "0"}, "0"),
        gen("G66", GC::Rotation, "0", {"0", "z", "-y", "0"}, "0"),
        gen("G67", GC::Rotation, "0", {"0", "-w", "0", "y"}, "0"),
        gen("G68", GC::Rotation, "0", {"z", "0", "-x", "0"}, "0"),
        gen("G69", GC::Rotation, "0", {"-w", "0", "0", "x"}, "0"),
        gen("G610", GC::Rotation, "0", {"0", "0", "-w", "z"}, "0"),
        gen("G611", GC::Dilation, "2*t", {"alpha*x", "alpha*y", "alpha*z", "alpha*w"},
            "u*(alpha - 1)"),
        gen("G612", GC::Homogeneity, "0", {"0", "0", "0", "0"}, "u"),
        gen("G613", GC::Infinite, "0", {"0", "0", "0", "0"}, "F"),
    };
}

std::vector<NamedGenerator> catalog_nd(int n, Regime r) {
    std::vector<NamedGenerator> out;
    int counter = 0;
    auto next_name = [&] { return "G" + std::to_string(n) + ":" + std::to_string(++counter); };
    auto add = [&](GC cls, Expr xi0, std::vector<Expr> xi, Expr eta, std::string note = {}) {
        VectorField f;
        f.name = next_name();
        f.xi0 = normalize(xi0);
        for (auto& e : xi) e = normalize(e);
        f.xi = std::move(xi);
        f.eta = normalize(eta);
        out.push_back({std::move(f), cls, std::move(note)});
    };
    const auto N = static_cast<std::size_t>(n);
    auto unit = [&](int i, Expr v) {
        std::vector<Expr> xi(N, Expr());
        xi[static_cast<std::size_t>(i - 1)] = std::move(v);
        return xi;
    };
    auto x = [](int i) { return Expr::x(static_cast<VarIndex>(i)); };
    Expr sum_sq;
    std::vector<Expr> radial(N);
    for (int i = 1; i <= n; ++i) {
        sum_sq += x(i) * x(i);
        radial[static_cast<std::size_t>(i - 1)] = x(i);
    }
    const Expr t = Expr::t();
    const Expr u = Expr::u();
    const bool integer = r == Regime::Integer;

    for (int i = 1; i <= n; ++i) add(GC::SpaceTranslation, 0, unit(i, 1), 0);
    if (integer)
        for (int i = 1; i <= n; ++i) add(GC::Solution, 0, unit(i, Expr(2) * t), -(u * x(i)));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<Expr> xi(N, Expr());
            xi[static_cast<std::size_t>(i - 1)] = -x(j);
            xi[static_cast<std::size_t>(j - 1)] = x(i);
            add(GC::Rotation, 0, std::move(xi), 0,
                "rotation x_i d_{x_j} - x_j d_{x_i}; the printed general form is identically zero");
        }
    if (integer) {
        add(GC::TimeTranslation, 1, std::vector<Expr>(N, Expr()), 0);
        add(GC::Dilation, Expr(2) * t, radial, 0);
        std::vector<Expr> proj(N);
        for (std::size_t i = 0; i < N; ++i) proj[i] = Expr(4) * t * radial[i];
        add(GC::Projective, Expr(4) * t * t, proj, -(u * (Expr(2 * n) * t + sum_sq)));
    } else {
        std::vector<Expr> dil(N);
        for (std::size_t i = 0; i < N; ++i) dil[i] = Expr::alpha() * radial[i];
        add(GC::Dilation, Expr(2) * t, dil, u * (Expr::alpha() - 1),
            "2t d_t normalization; the general-n listing prints t d_t");
    }
    add(GC::Homogeneity, 0, std::vector<Expr>(N, Expr()), u);
    add(GC::Infinite, 0, std::vector<Expr>(N, Expr()), Expr::F());
    return out;
}

}  // namespace

std::vector<NamedGenerator> generators(const HeatEquation& eq) {
    switch (eq.n) {
        case 1: return catalog_1d(eq.regime);
        case 2: return catalog_2d(eq.regime);
        case 3: return catalog_3d(eq.regime);
        case 4: return catalog_4d(eq.regime);
        default: return catalog_nd(eq.n, eq.regime);
    }
}

std::vector<VectorField> fields(const std::vector<NamedGenerator>& gens) {
    std::vector<VectorField> r;
    for (const auto& g : gens) r.push_back(g.field);
    return r;
}

std::vector<NamedGenerator> select(const std::vector<NamedGenerator>& gens,
                                   std::initializer_list<GenClass> classes) {
    std::vector<NamedGenerator> r;
    for (const auto& g : gens)
        if (std::find(classes.begin(), classes.end(), g.cls) != classes.end()) r.push_back(g);
    return r;
}

const NamedGenerator& by_name(const std::vector<NamedGenerator>& gens, const std::string& name) {
    for (const auto& g : gens)
        if (g.field.name == name) return g;
    throw std::out_of_range("no generator named " + name);
}

int count_formula(int n, Regime r) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    return r == Regime::Integer ? (n * n + 3 * n + 10) / 2 : (n * n + n + 6) / 2;
}

std::vector<std::string> catalog_notes(const HeatEquation& eq) {
    std::vector<std::string> notes;
    if (!eq.fractional()) return notes;
    notes.emplace_back(
        "dilation u-coefficients differ by dimension as printed (0 for n=1, 3 alpha - 2 with the "
        "4t normalization for n=2, alpha - 1 for n=3,4); every choice differs from the others by "
        "a multiple of the homogeneity generator, so all are symmetries of the linear equation");
    notes.emplace_back(
        "fractional generators are not certified symbolically; numeric invariance checks cover "
        "translation, rotation, dilation and homogeneity for n <= 2");
    if (eq.n > 4)
        notes.emplace_back("n > 4 dilation uses 2t d_t + alpha sum x_i d_{x_i} + (alpha - 1) u d_u");
    return notes;
}

nlohmann::json catalog_json(const HeatEquation& eq) {
    const PrintOptions opts{eq.n};
    nlohmann::json j;
    j["dimension"] = eq.n;
    j["regime"] = regime_name(eq.regime);
    j["generators"] = nlohmann::json::array();
    for (const auto& g : generators(eq)) {
        nlohmann::json row;
        row["name"] = g.field.name;
        row["class"] = class_name(g.cls);
        row["xi0"] = to_string(g.field.xi0, opts);
        row["xi"] = nlohmann::json::array();
        for (const auto& e : g.field.xi) row["xi"].push_back(to_string(e, opts));
        row["eta"] = to_string(g.field.eta, opts);
        if (!g.note.empty()) row["note"] = g.note;
        j["generators"].push_back(row);
    }
    j["notes"] = catalog_notes(eq);
    return j;
}

std::string catalog_latex(const HeatEquation& eq) {
    const PrintOptions opts{eq.n};
    std::string out = "\\begin{eqnarray}\n";
    const auto gens = generators(eq);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& f = gens[i].field;
        std::string rhs;
        for (int k = 0; k < f.num_components(); ++k) {
            const Expr& c = f.component(k);
            if (equals_zero(c)) continue;
            const std::string d = k == 0                   ? "\\partial_{t}"
                                  : k == f.dimension() + 1 ? "\\partial_{u}"
                                                           : "\\partial_{" +
                                                                 var_name(static_cast<VarIndex>(k),
                                                                          eq.n) +
                                                                 "}";
            std::string s = to_latex(c, opts);
            const bool neg = s[0] == '-' && c.kind() != Expr::Kind::Sum;
            if (neg) s.erase(0, 1);
            if (c.kind() == Expr::Kind::Sum) s = "\\left(" + s + "\\right)";
            if (s == "1") s.clear();
            else s += " ";
            if (rhs.empty()) rhs = (neg ? "-" : "") + s + d;
            else rhs += (neg ? " - " : " + ") + s + d;
        }
        out += "\\Gamma_{" + f.name.substr(1) + "}&=&" + rhs +
               (i + 1 == gens.size() ? "\n" : ",\\nonumber\\\\\n");
    }
    out += "\\end{eqnarray}\n";
    return out;
}

std::vector<ExactSolution> exact_solutions(const HeatEquation& eq, double alpha, double k) {
    std::vector<ExactSolution> out;
    const int n = eq.n;
    if (!eq.fractional()) {
        out.push_back({"u = 1", parse("1"), [](double, std::span<const double>) { return 1.0; },
                       ""});
        out.push_back({"u = x1", Expr::x(1),
                       [](double, std::span<const double> x) { return x[0]; }, ""});
        out.push_back({"u = x1^2 + 2t", normalize(Expr::x(1) * Expr::x(1) + Expr(2) * Expr::t()),
                       [](double t, std::span<const double> x) { return x[0] * x[0] + 2 * t; },
                       ""});
        out.push_back({"u = exp(t + x1)", std::nullopt,
                       [](double t, std::span<const double> x) { return std::exp(t + x[0]); },
                       ""});
        out.push_back({"heat kernel", std::nullopt,
                       [n](double t, std::span<const double> x) {
                           double r2 = 0;
                           for (double v : x) r2 += v * v;
                           return std::pow(t, -0.5 * n) * std::exp(-r2 / (4 * t));
                       },
                       "valid for t > 0"});
        return out;
    }
    out.push_back({"u = t^(alpha-1)", std::nullopt,
                   [alpha](double t, std::span<const double>) { return std::pow(t, alpha - 1); },
                   "singular at t = 0"});
    out.push_back({"u = x1 t^(alpha-1)", std::nullopt,
                   [alpha](double t, std::span<const double> x) {
                       return x[0] * std::pow(t, alpha - 1);
                   },
                   "singular at t = 0"});
    out.push_back({"u = t^(alpha-1) E_{alpha,alpha}(-k^2 t^alpha) cos(k x1)", std::nullopt,
                   [alpha, k](double t, std::span<const double> x) {
                       return std::pow(t, alpha - 1) *
                              mittag_leffler(alpha, alpha, -k * k * std::pow(t, alpha)) *
                              std::cos(k * x[0]);
                   },
                   "singular at t = 0; the series window limits k^2 t^alpha to 50"});
    return out;
}

}  // namespace liesym
