#include "liesym/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <sstream>

namespace liesym {

FormalLagrangian formal_lagrangian(const HeatEquation& eq) {
    return {eq, normalize(Expr::phi() * (eq.lhs() - eq.rhs()))};
}

namespace {

Expr laplacian(Field f, int n) {
    std::vector<Expr> terms;
    for (int i = 1; i <= n; ++i) {
        const auto v = static_cast<VarIndex>(i);
        terms.push_back(Expr::symbol(Atom::jet(f, {v, v})));
    }
    return Expr::sum(std::move(terms));
}

PrintOptions print_opts(int n) { return PrintOptions{n}; }

std::string node_kind(NonlocalNode::Kind k) { return k == NonlocalNode::Kind::FracInt ? "FracInt" : "J"; }

}  // namespace

std::string NonlocalNode::str(const PrintOptions& opts) const {
    if (kind == Kind::FracInt) {
        const std::string c = to_string(coefficient, opts);
        const std::string body = "I^(1-alpha)[" + to_string(arg, opts) + "]";
        if (c == "1") return body;
        if (c == "-1") return "-" + body;
        return c + "*" + body;
    }
    const std::string body = "J[" + to_string(arg, opts) + ", " + to_string(second, opts) + "]";
    const std::string c = to_string(coefficient, opts);
    if (c == "1") return body;
    if (c == "-1") return "-" + body;
    return "(" + c + ")*" + body;
}

bool PaperDiff::all_match() const {
    return std::all_of(components.begin(), components.end(),
                       [](const ComponentDiff& c) { return c.status == "match"; });
}

std::string ConservedVector::Ct_str(const PrintOptions& opts) const {
    std::string out = equals_zero(Ct) ? "" : to_string(Ct, opts);
    for (const auto& node : nonlocal) {
        std::string s = node.str(opts);
        if (out.empty()) out = s;
        else if (s[0] == '-') out += " - " + s.substr(1);
        else out += " + " + s;
    }
    return out.empty() ? "0" : out;
}

SubstitutionRules both_shell_rules(const HeatEquation& eq) {
    SubstitutionRules r;
    if (eq.fractional()) {
        r.emplace_back(Atom::jet(Field::DalphaU), eq.rhs());
        return r;
    }
    r = heat_onshell_rules(eq.n);
    r.emplace_back(Atom::jet(Field::Phi, {kTime}), -laplacian(Field::Phi, eq.n));
    return r;
}

namespace {

void check_regime(const VectorField& f, const HeatEquation& eq) {
    if (f.dimension() != eq.n)
        throw DimensionMismatch("field " + f.name + " has dimension " + std::to_string(f.dimension()) +
                                ", equation has " + std::to_string(eq.n));
    if (!eq.fractional()) {
        for (int k = 0; k < f.num_components(); ++k)
            if (depends_on(f.component(k), Atom::alpha()))
                throw RegimeMismatch("field " + f.name + " depends on alpha; the equation is integer");
        if (!is_symmetry(eq, f))
            throw RegimeMismatch("field " + f.name + " is not a point symmetry of " + eq.str());
        return;
    }
    const auto dec = decompose_in_basis(f, fields(generators(eq)));
    if (!dec.in_span)
        throw RegimeMismatch("field " + f.name + " is outside the span of the catalog of " + eq.str());
}

}  // namespace

ConservedVector conserved_vector(const VectorField& f, const HeatEquation& eq, const JetOptions& opts) {
    check_regime(f, eq);
    ConservedVector cv;
    cv.symmetry = f.name;
    cv.n = eq.n;
    cv.regime = eq.regime;
    cv.W = normalize(characteristic(f));
    const Expr L = formal_lagrangian(eq).L;
    const Expr phi = Expr::phi();
    if (eq.fractional()) {
        cv.Ct = normalize(f.xi0 * L);
        cv.nonlocal.push_back({NonlocalNode::Kind::FracInt, phi, cv.W, Expr()});
        cv.nonlocal.push_back({NonlocalNode::Kind::J, Expr(1), cv.W, Expr::phi({kTime})});
    } else {
        cv.Ct = normalize(f.xi0 * L + cv.W * phi);
    }
    for (int i = 1; i <= eq.n; ++i) {
        const auto v = static_cast<VarIndex>(i);
        cv.Cx.push_back(normalize(f.xi[static_cast<std::size_t>(i - 1)] * L + cv.W * Expr::phi({v}) -
                                  phi * total_derivative(cv.W, v, opts)));
    }
    cv.trivial = is_trivial(cv, eq, opts);
    if (const auto* table = default_fixtures().conservation_table(eq.n, eq.regime))
        cv.paper_diff = paper_diff(cv, *table, opts);
    return cv;
}

bool is_trivial(const ConservedVector& cv, const HeatEquation& eq, const JetOptions& opts) {
    const auto rules = both_shell_rules(eq);
    auto vanishes = [&](const Expr& e) { return equals_zero(substitute(e, rules, opts)); };
    if (!vanishes(cv.Ct)) return false;
    for (const auto& c : cv.Cx)
        if (!vanishes(c)) return false;
    for (const auto& node : cv.nonlocal)
        if (!vanishes(node.arg)) return false;
    return true;
}

Expr apply_adjoint(const HeatEquation& eq, const Expr& phi) {
    if (eq.fractional())
        throw std::invalid_argument("the fractional adjoint involves the right RL derivative");
    std::vector<Expr> terms{partial_derivative(phi, Atom::variable(kTime))};
    for (int i = 1; i <= eq.n; ++i) {
        const Atom x = Atom::variable(static_cast<VarIndex>(i));
        terms.push_back(partial_derivative(partial_derivative(phi, x), x));
    }
    return normalize(Expr::sum(std::move(terms)));
}

AdjointEquation adjoint_residual(const HeatEquation& eq) {
    AdjointEquation a{eq, Expr(), eq.fractional(), {}, {}};
    if (eq.fractional()) {
        a.local = normalize(-laplacian(Field::Phi, eq.n));
        a.numeric_test_function = "(T-t)^(alpha-1)";
        return a;
    }
    a.local = normalize(Expr::phi({kTime}) + laplacian(Field::Phi, eq.n));
    const Expr t = Expr::t(), x = Expr::x(1);
    std::vector<Expr> candidates{Expr(1), x, x * x - Expr(2) * t, x * x + Expr(2) * t, t};
    if (eq.n >= 2) {
        const Expr y = Expr::x(2);
        candidates.push_back(x * y);
        candidates.push_back(x * x - y * y);
    }
    for (const auto& c : candidates)
        if (equals_zero(apply_adjoint(eq, c))) {
            const Expr nc = normalize(c);
            a.families.emplace_back(to_string(nc, print_opts(eq.n)), nc);
        }
    return a;
}

std::string AdjointEquation::str() const {
    const std::string loc = to_string(local, print_opts(eq.n));
    if (!right_derivative) return loc + " = 0";
    return "(D_t^alpha)^* phi + " + loc + " = 0";
}

Expr divergence_onshell_symbolic(const ConservedVector& cv, const HeatEquation& eq, const JetOptions& opts) {
    if (cv.has_nonlocal())
        throw NonlocalError("conserved vector of " + cv.symmetry + " has nonlocal components");
    if (static_cast<int>(cv.Cx.size()) != eq.n)
        throw DimensionMismatch("conserved vector has " + std::to_string(cv.Cx.size()) +
                                " spatial components, equation has " + std::to_string(eq.n));
    std::vector<Expr> terms{total_derivative(cv.Ct, kTime, opts)};
    for (int i = 1; i <= eq.n; ++i)
        terms.push_back(total_derivative(cv.Cx[static_cast<std::size_t>(i - 1)], static_cast<VarIndex>(i), opts));
    return substitute(Expr::sum(std::move(terms)), both_shell_rules(eq), opts);
}

// --- printed-table diff ----------------------------------------------------------------

namespace {

std::string with_W(const std::string& text, const std::string& W) {
    static const std::regex token("\\bW\\b");
    return std::regex_replace(text, token, "(" + W + ")");
}

ComponentDiff compare(const std::string& name, const std::string& printed_text, const Expr& computed,
                      const HeatEquation& eq, const JetOptions& opts) {
    ComponentDiff d{name, "", printed_text, to_string(computed, print_opts(eq.n)), ""};
    Expr printed;
    try {
        printed = parse(printed_text);
    } catch (const ExprError& e) {
        d.status = "unreadable";
        d.difference = e.what();
        return d;
    }
    const Expr diff = normalize(printed - computed);
    if (equals_zero(diff)) {
        d.status = "match";
        return d;
    }
    d.difference = to_string(diff, print_opts(eq.n));
    d.status = equals_zero(substitute(diff, both_shell_rules(eq), opts)) ? "match-on-shell" : "differs";
    return d;
}

}  // namespace

PaperDiff paper_diff(const ConservedVector& cv, const PrintedConservationTable& table, const JetOptions& opts) {
    const HeatEquation eq{cv.n, cv.regime};
    PaperDiff out;
    const PrintedConservedVector* by_name = nullptr;
    const PrintedConservedVector* by_w = nullptr;
    for (const auto& e : table.entries) {
        if (e.symmetry == cv.symmetry) by_name = &e;
        if (e.W.empty()) continue;
        bool same = false;
        try {
            same = equal(parse(e.W), cv.W);
        } catch (const ExprError&) {
        }
        if (same && (by_w == nullptr || e.symmetry == cv.symmetry)) by_w = &e;
    }
    const PrintedConservedVector* entry = by_w != nullptr ? by_w : by_name;
    if (entry == nullptr) {
        out.notes.push_back("no printed entry for " + cv.symmetry);
        return out;
    }
    out.printed_entry = entry->symmetry;
    out.matched_by = entry->symmetry == cv.symmetry ? "name" : "W";
    if (out.matched_by == "W")
        out.notes.push_back("printed entry " + entry->symmetry + " carries the characteristic of " + cv.symmetry);
    if (!entry->note.empty()) out.notes.push_back(entry->note);

    const PrintOptions po = print_opts(eq.n);
    std::string W_text = entry->W;
    if (W_text.empty()) {
        W_text = to_string(cv.W, po);
        out.notes.push_back("W not printed; the computed W stands in for the token W");
    } else {
        out.components.push_back(compare("W", W_text, cv.W, eq, opts));
    }
    out.components.push_back(compare("Ct", with_W(entry->Ct, W_text), cv.Ct, eq, opts));
    for (const auto& node : cv.nonlocal) {
        const bool fi = node.kind == NonlocalNode::Kind::FracInt;
        const std::string& arg = fi ? entry->fracint_arg : entry->j_arg;
        const std::string label = fi ? "Ct.fracint" : "Ct.J";
        if (arg.empty()) {
            out.components.push_back({label, "", node.str(po), "missing", ""});
            out.components.back().status = "missing";
            out.components.back().printed = "";
            out.components.back().computed = to_string(node.arg, po);
            continue;
        }
        out.components.push_back(compare(label, with_W(arg, W_text), node.arg, eq, opts));
    }
    for (int i = 0; i < eq.n; ++i) {
        const std::string label = "Cx[" + std::to_string(i + 1) + "]";
        const auto& c = cv.Cx[static_cast<std::size_t>(i)];
        if (static_cast<std::size_t>(i) >= entry->Cx.size()) {
            out.components.push_back({label, "missing", "", to_string(c, po), ""});
            continue;
        }
        out.components.push_back(compare(label, with_W(entry->Cx[static_cast<std::size_t>(i)], W_text), c, eq, opts));
    }
    return out;
}

std::vector<ConservedVector> conserved_vectors(const HeatEquation& eq, const Fixtures& fixtures,
                                               const JetOptions& opts) {
    const auto* table = fixtures.conservation_table(eq.n, eq.regime);
    std::vector<ConservedVector> out;
    for (const auto& g : generators(eq)) {
        auto cv = conserved_vector(g.field, eq, opts);
        if (table != nullptr) cv.paper_diff = paper_diff(cv, *table, opts);
        else cv.paper_diff.reset();
        out.push_back(std::move(cv));
    }
    return out;
}

nlohmann::json to_json(const ConservedVector& cv) {
    using nlohmann::json;
    const PrintOptions po = print_opts(cv.n);
    json cx = json::array();
    for (const auto& c : cv.Cx) cx.push_back(to_string(c, po));
    json nodes = json::array();
    for (const auto& node : cv.nonlocal) {
        json j{{"kind", node_kind(node.kind)},
               {"coefficient", to_string(node.coefficient, po)},
               {"arg", to_string(node.arg, po)}};
        if (node.kind == NonlocalNode::Kind::FracInt) j["order"] = "1-alpha";
        else j["second"] = to_string(node.second, po);
        nodes.push_back(std::move(j));
    }
    json diff = json::array();
    json entry = nullptr;
    if (cv.paper_diff) {
        for (const auto& c : cv.paper_diff->components) {
            json d{{"component", c.component}, {"status", c.status}, {"printed", c.printed}, {"computed", c.computed}};
            if (!c.difference.empty()) d["difference"] = c.difference;
            diff.push_back(std::move(d));
        }
        entry = {{"printed_entry", cv.paper_diff->printed_entry},
                 {"matched_by", cv.paper_diff->matched_by},
                 {"notes", cv.paper_diff->notes}};
    }
    return {{"symmetry", cv.symmetry}, {"W", to_string(cv.W, po)},  {"Ct", cv.Ct_str(po)},
            {"Cx", cx},                {"nonlocal_nodes", nodes},    {"trivial", cv.trivial},
            {"paper_entry", entry},    {"paper_diff", diff}};
}

std::string to_latex(const ConservedVector& cv) {
    const PrintOptions po = print_opts(cv.n);
    std::string ct = equals_zero(cv.Ct) ? "" : to_latex(cv.Ct, po);
    for (const auto& node : cv.nonlocal) {
        const std::string c = to_latex(node.coefficient, po);
        std::string body = node.kind == NonlocalNode::Kind::FracInt
                               ? "{}_{0}I_{t}^{1-\\alpha}\\left(" + to_latex(node.arg, po) + "\\right)"
                               : "J\\left(" + to_latex(node.arg, po) + "," + to_latex(node.second, po) + "\\right)";
        if (c != "1") body = c + "\\," + body;
        ct += ct.empty() ? body : "+" + body;
    }
    if (ct.empty()) ct = "0";
    std::ostringstream os;
    os << "\\begin{eqnarray}\n";
    os << "C^{t}&=&" << ct << ",\\nonumber\\\\\n";
    for (int i = 1; i <= cv.n; ++i)
        os << "C^{" << var_name(static_cast<VarIndex>(i), cv.n) << "}&=&"
           << to_latex(cv.Cx[static_cast<std::size_t>(i - 1)], po) << ",\\nonumber\\\\\n";
    os << "W&=&" << to_latex(cv.W, po) << ".\n";
    os << "\\end{eqnarray}\n";
    return os.str();
}

ConservedVector combine(const std::vector<std::pair<Rational, ConservedVector>>& terms) {
    if (terms.empty()) throw std::invalid_argument("empty combination");
    ConservedVector out;
    out.n = terms.front().second.n;
    out.regime = terms.front().second.regime;
    out.Cx.assign(static_cast<std::size_t>(out.n), Expr());
    std::string name;
    for (const auto& [c, cv] : terms) {
        if (cv.n != out.n) throw DimensionMismatch("combination of conserved vectors of different dimension");
        const Expr k(c);
        out.W = out.W + k * cv.W;
        out.Ct = out.Ct + k * cv.Ct;
        for (std::size_t i = 0; i < out.Cx.size(); ++i) out.Cx[i] = out.Cx[i] + k * cv.Cx[i];
        for (auto node : cv.nonlocal) {
            node.coefficient = normalize(k * node.coefficient);
            out.nonlocal.push_back(std::move(node));
        }
        name += (name.empty() ? "" : " + ") + c.str() + "*" + cv.symmetry;
    }
    out.symmetry = name;
    out.W = normalize(out.W);
    out.Ct = normalize(out.Ct);
    for (auto& c : out.Cx) c = normalize(c);
    return out;
}

// --- numeric flux balance ----------------------------------------------------------

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

// Second-order differences; one-sided at the ends.
MatrixXd diff_rows(const MatrixXd& m, double h) {
    const Index n = m.rows();
    MatrixXd d(n, m.cols());
    for (Index i = 1; i + 1 < n; ++i) d.row(i) = (m.row(i + 1) - m.row(i - 1)) / (2 * h);
    d.row(0) = (-3 * m.row(0) + 4 * m.row(1) - m.row(2)) / (2 * h);
    d.row(n - 1) = (3 * m.row(n - 1) - 4 * m.row(n - 2) + m.row(n - 3)) / (2 * h);
    return d;
}

MatrixXd diff_cols(const MatrixXd& m, double h) { return diff_rows(m.transpose(), h).transpose(); }

class Jets {
public:
    Jets(const GridFunction& g) : g_(g) {}

    const MatrixXd& get(const DerivIndex& idx) {
        auto it = cache_.find(idx);
        if (it != cache_.end()) return it->second;
        MatrixXd m;
        if (idx.empty()) {
            m = g_.values;
        } else {
            const auto& vars = idx.vars();
            const VarIndex last = vars.back();
            const MatrixXd& base = get(DerivIndex(std::vector<VarIndex>(vars.begin(), vars.end() - 1)));
            m = last == kTime ? diff_rows(base, g_.t.step) : diff_cols(base, g_.space.at(0).step);
        }
        return cache_.emplace(idx, std::move(m)).first->second;
    }

private:
    const GridFunction& g_;
    std::map<DerivIndex, MatrixXd> cache_;
};

struct GridContext {
    const GridFunction& u;
    const GridFunction& phi;
    double alpha;
    Scheme scheme;
    Jets ju, jphi;
    std::optional<MatrixXd> dalpha;

    GridContext(const GridFunction& u_, const GridFunction& phi_, double a, Scheme s)
        : u(u_), phi(phi_), alpha(a), scheme(s), ju(u_), jphi(phi_) {}

    const MatrixXd& atom_matrix(const Atom& a) {
        if (a.field == Field::U) return ju.get(a.index);
        if (a.field == Field::Phi) return jphi.get(a.index);
        if (a.field == Field::DalphaU && a.index.empty()) {
            if (!dalpha) dalpha = rl_derivative_grid(u, {alpha, scheme, Direction::Left}).values;
            return *dalpha;
        }
        throw GridError("no grid data for " + atom_name(a));
    }

    // e evaluated on rows [r0, r1] and the listed columns.
    MatrixXd eval(const Expr& e, Index r0, Index r1, const std::vector<Index>& cols) {
        const auto as = atoms(e);
        std::vector<std::pair<Atom, const MatrixXd*>> jets;
        for (const Atom& a : as)
            if (a.is_jet()) jets.emplace_back(a, &atom_matrix(a));
        MatrixXd out(r1 - r0 + 1, static_cast<Index>(cols.size()));
        Binding b;
        for (Index r = r0; r <= r1; ++r)
            for (std::size_t k = 0; k < cols.size(); ++k) {
                const Index c = cols[k];
                b.set_var(kTime, u.t.at(static_cast<std::size_t>(r)));
                const auto x = u.spatial_point(static_cast<std::size_t>(c));
                for (std::size_t i = 0; i < x.size(); ++i) b.set_var(static_cast<VarIndex>(i + 1), x[i]);
                for (const auto& [a, m] : jets) b.set(a, (*m)(r, c));
                out(r - r0, static_cast<Index>(k)) = eval_numeric(e, b, alpha);
            }
        return out;
    }
};

// Interpolant of one time column; power laws on the first / last two
// intervals of singular data, linear elsewhere.
class ColumnInterpolant {
public:
    ColumnInterpolant(const Axis& t, Eigen::VectorXd v, bool sing_start, bool sing_end)
        : t_(t), v_(std::move(v)), start_(sing_start), end_(sing_end) {}

    double operator()(double s) const {
        const auto K = static_cast<Index>(t_.count);
        if (start_ && s < t_.at(2)) return power(s - t_.origin, 2, 3, t_.at(2) - t_.origin, t_.at(3) - t_.origin);
        if (end_ && s > t_.at(t_.count - 3))
            return power(t_.back() - s, K - 3, K - 4, t_.back() - t_.at(t_.count - 3), t_.back() - t_.at(t_.count - 4));
        const double pos = std::clamp((s - t_.origin) / t_.step, 0.0, static_cast<double>(K - 1));
        const auto i = std::min(static_cast<Index>(pos), K - 2);
        const double w = pos - static_cast<double>(i);
        return (1 - w) * v_(i) + w * v_(i + 1);
    }

private:
    // v ~ v_a (d / d_a)^p through the samples a, b at distances d_a, d_b
    double power(double d, Index a, Index b, double da, double db) const {
        const double va = v_(a), vb = v_(b);
        if (va == 0 || vb == 0 || (va > 0) != (vb > 0)) return va;
        const double p = std::log(va / vb) / std::log(da / db);
        return va * std::pow(d / da, p);
    }

    Axis t_;
    Eigen::VectorXd v_;
    bool start_, end_;
};

// _0 I_t^beta of each column on rows 0..rows-1 by a negative-order GL sum;
// singular columns get the starting correction that reproduces t^(-beta)... exactly.
MatrixXd left_integral_grid(const MatrixXd& v, double beta, double h, bool singular, double alpha) {
    const Index n = v.rows();
    std::vector<double> w(static_cast<std::size_t>(n));
    w[0] = 1;
    for (std::size_t j = 1; j < w.size(); ++j) w[j] = w[j - 1] * (1 - (1 - beta) / static_cast<double>(j));
    auto gl = [&](const Eigen::VectorXd& col) {
        Eigen::VectorXd out(n);
        for (Index i = 0; i < n; ++i) {
            double s = 0;
            for (Index j = 0; j <= i; ++j) s += w[static_cast<std::size_t>(j)] * col(i - j);
            out(i) = s * std::pow(h, beta);
        }
        return out;
    };
    MatrixXd out(n, v.cols());
    Eigen::VectorXd model(n);
    for (Index i = 0; i < n; ++i) model(i) = i == 0 ? 0.0 : std::pow(h * static_cast<double>(i), alpha - 1);
    // I^(1-alpha) t^(alpha-1) = Gamma(alpha)
    const double exact = std::tgamma(alpha);
    for (Index c = 0; c < v.cols(); ++c) {
        Eigen::VectorXd col = v.col(c);
        if (singular && n > 1) {
            const double k = col(1) / model(1);
            out.col(c) = gl(col - k * model).array() + k * exact;
        } else {
            out.col(c) = gl(col);
        }
    }
    return out;
}

Index snap(double value, const Axis& a, const char* what) {
    const double pos = (value - a.origin) / a.step;
    const auto i = static_cast<Index>(std::llround(pos));
    if (i < 0 || i >= static_cast<Index>(a.count))
        throw GridError(std::string("cell ") + what + " boundary lies outside the grid");
    return i;
}

bool same_axis(const Axis& a, const Axis& b) {
    return a.count == b.count && std::abs(a.origin - b.origin) < 1e-12 && std::abs(a.step - b.step) < 1e-12;
}

double trapezoid(const Eigen::VectorXd& v, double h) {
    if (v.size() < 2) return 0.0;
    return h * (v.sum() - 0.5 * (v(0) + v(v.size() - 1)));
}

}  // namespace

FluxReport divergence_numeric_fractional(const ConservedVector& cv, const GridFunction& u, const GridFunction& phi,
                                         const Cell& cell, const FluxConfig& cfg) {
    if (cv.n != 1) throw GridError("numeric flux balance is implemented for one space dimension");
    if (u.space.size() != 1 || phi.space.size() != 1) throw GridError("grids must have one space axis");
    if (!same_axis(u.t, phi.t) || !same_axis(u.space[0], phi.space[0]))
        throw GridError("u and phi must share the grid");
    if (u.t.count < 8 || u.space[0].count < 3) throw GridError("grid too small for the flux balance");
    if (!(cfg.alpha > 0 && cfg.alpha < 1)) throw GridError("alpha must lie in (0, 1)");

    const Index r1 = snap(cell.t1, u.t, "t1"), r2 = snap(cell.t2, u.t, "t2");
    const Index c1 = snap(cell.x1, u.space[0], "x1"), c2 = snap(cell.x2, u.space[0], "x2");
    if (r1 <= 0) throw GridError("cell touches t = 0, where the data are singular");
    if (r2 <= r1 || c2 <= c1) throw GridError("empty cell");
    if (r2 >= static_cast<Index>(u.t.count) - 1) throw GridError("cell touches t = T");

    FluxReport rep;
    rep.cell = {u.t.at(static_cast<std::size_t>(r1)), u.t.at(static_cast<std::size_t>(r2)),
                u.space[0].at(static_cast<std::size_t>(c1)), u.space[0].at(static_cast<std::size_t>(c2))};

    GridContext ctx(u, phi, cfg.alpha, cfg.scheme);
    const Index last = static_cast<Index>(u.t.count) - 1;
    std::vector<Index> cols;
    for (Index c = c1; c <= c2; ++c) cols.push_back(c);

    // C^t on the two time faces
    auto time_face = [&](Index r) {
        Eigen::VectorXd ct = ctx.eval(cv.Ct, r, r, cols).row(0).transpose();
        for (const auto& node : cv.nonlocal) {
            const MatrixXd coef = ctx.eval(node.coefficient, r, r, cols);
            if (node.kind == NonlocalNode::Kind::FracInt) {
                const MatrixXd arg = ctx.eval(node.arg, 0, r, cols);
                const MatrixXd I = left_integral_grid(arg, 1 - cfg.alpha, u.t.step, u.singular_start, cfg.alpha);
                ct += coef.row(0).transpose().cwiseProduct(I.row(r).transpose());
            } else {
                const MatrixXd f = ctx.eval(node.arg, 0, last, cols);
                const MatrixXd g = ctx.eval(node.second, 0, last, cols);
                const double t = u.t.at(static_cast<std::size_t>(r));
                for (std::size_t k = 0; k < cols.size(); ++k) {
                    const auto K = static_cast<Index>(k);
                    const ColumnInterpolant fi(u.t, f.col(K), u.singular_start, false);
                    const ColumnInterpolant gi(u.t, g.col(K), false, phi.singular_end);
                    ct(K) += coef(0, K) * j_quadrature(fi, gi, cfg.alpha, t, u.t.back(), cfg.quad_nodes);
                }
            }
        }
        return ct;
    };
    const double hx = u.space[0].step;
    const double top = trapezoid(time_face(r2), hx);
    const double bottom = trapezoid(time_face(r1), hx);

    // C^x on the two space faces
    const MatrixXd cx = ctx.eval(cv.Cx.at(0), r1, r2, {c1, c2});
    const double right = trapezoid(cx.col(1), u.t.step);
    const double left = trapezoid(cx.col(0), u.t.step);

    rep.time_faces = top - bottom;
    rep.space_faces = right - left;
    rep.absolute = std::abs(rep.time_faces + rep.space_faces);
    rep.boundary_magnitude = std::abs(top) + std::abs(bottom) + std::abs(right) + std::abs(left);
    rep.imbalance = rep.boundary_magnitude > 0 ? rep.absolute / rep.boundary_magnitude : rep.absolute;
    return rep;
}

}  // namespace liesym
