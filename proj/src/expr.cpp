#include "liesym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace liesym {

// --- DerivIndex / Atom ----------------------------------------------------

DerivIndex::DerivIndex(std::initializer_list<VarIndex> vars) : vars_(vars) {
    std::sort(vars_.begin(), vars_.end());
}

DerivIndex::DerivIndex(std::vector<VarIndex> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
}

int DerivIndex::count(VarIndex v) const {
    return static_cast<int>(std::count(vars_.begin(), vars_.end(), v));
}

DerivIndex DerivIndex::with(VarIndex v) const {
    DerivIndex r = *this;
    r.vars_.insert(std::upper_bound(r.vars_.begin(), r.vars_.end(), v), v);
    return r;
}

bool DerivIndex::contains(const DerivIndex& sub) const {
    return std::includes(vars_.begin(), vars_.end(), sub.vars_.begin(), sub.vars_.end());
}

DerivIndex DerivIndex::minus(const DerivIndex& sub) const {
    DerivIndex r;
    std::set_difference(vars_.begin(), vars_.end(), sub.vars_.begin(), sub.vars_.end(),
                        std::back_inserter(r.vars_));
    return r;
}

std::strong_ordering operator<=>(const DerivIndex& a, const DerivIndex& b) {
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    return a.vars_ <=> b.vars_;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    switch (a.kind) {
        case AtomKind::Var: return a.var <=> b.var;
        case AtomKind::Jet:
            if (auto c = a.field <=> b.field; c != 0) return c;
            return a.index <=> b.index;
        case AtomKind::Alpha: return std::strong_ordering::equal;
    }
    return std::strong_ordering::equal;
}

// --- Poly -----------------------------------------------------------------

Poly::Poly(Rational c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::atom(const Atom& a) {
    Poly p;
    p.terms_.emplace(Monomial{{a, 1}}, Rational(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            r.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            r.push_back(*j++);
        } else {
            r.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(multiply(ma, mb), ca * cb);
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    if (c.is_zero()) return {};
    Poly r = *this;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw ExprError("negative power in polynomial context");
    Poly r(Rational(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

// --- Expr nodes -----------------------------------------------------------

namespace detail {
struct Node {
    Expr::Kind kind = Expr::Kind::Number;
    Rational number;
    Atom atom;
    std::vector<Expr> children;
    int exponent = 0;
    std::shared_ptr<const Poly> canon;  // set only on canonical trees
};
}  // namespace detail

namespace {

std::shared_ptr<detail::Node> make_node(Expr::Kind k) {
    auto n = std::make_shared<detail::Node>();
    n->kind = k;
    return n;
}

}  // namespace

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(Rational c) {
    auto n = make_node(Kind::Number);
    n->number = c;
    n->canon = std::make_shared<const Poly>(c);
    node_ = std::move(n);
}

Expr::Expr(std::int64_t c) : Expr(Rational(c)) {}

Expr Expr::symbol(const Atom& a) {
    auto n = make_node(Kind::Symbol);
    n->atom = a;
    n->canon = std::make_shared<const Poly>(Poly::atom(a));
    return Expr(std::shared_ptr<const detail::Node>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
    if (terms.empty()) return Expr();
    if (terms.size() == 1) return terms.front();
    auto n = make_node(Kind::Sum);
    n->children = std::move(terms);
    return Expr(std::shared_ptr<const detail::Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
    if (factors.empty()) return Expr(1);
    if (factors.size() == 1) return factors.front();
    auto n = make_node(Kind::Product);
    n->children = std::move(factors);
    return Expr(std::shared_ptr<const detail::Node>(std::move(n)));
}

Expr Expr::power(Expr base, int exponent) {
    auto n = make_node(Kind::Power);
    n->children = {std::move(base)};
    n->exponent = exponent;
    return Expr(std::shared_ptr<const detail::Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::number() const { return node_->number; }
const Atom& Expr::atom() const { return node_->atom; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
int Expr::exponent() const { return node_->exponent; }
bool Expr::is_canonical() const { return node_->canon != nullptr; }

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr Expr::operator-() const { return Expr::product({Expr(-1), *this}); }

Expr operator/(const Expr& a, const Expr& b) {
    const Poly pb = to_poly(b);
    if (!pb.is_constant()) throw ExprError("division by a non-constant expression");
    const Rational c = pb.constant_term();
    if (c.is_zero()) throw ExprError("division by zero");
    return a * Expr(Rational(1) / c);
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const auto& na = *a.node_;
    const auto& nb = *b.node_;
    if (na.canon && nb.canon) return *na.canon == *nb.canon;
    if (na.kind != nb.kind) return false;
    switch (na.kind) {
        case Expr::Kind::Number: return na.number == nb.number;
        case Expr::Kind::Symbol: return na.atom == nb.atom;
        case Expr::Kind::Power:
            return na.exponent == nb.exponent && na.children == nb.children;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: return na.children == nb.children;
    }
    return false;
}

// --- canonical form -------------------------------------------------------

Poly to_poly(const Expr& e) {
    if (e.is_canonical()) return canonical_poly(e);
    switch (e.kind()) {
        case Expr::Kind::Number: return Poly(e.number());
        case Expr::Kind::Symbol: return Poly::atom(e.atom());
        case Expr::Kind::Sum: {
            Poly r;
            for (const auto& c : e.children()) r += to_poly(c);
            return r;
        }
        case Expr::Kind::Product: {
            Poly r(Rational(1));
            for (const auto& c : e.children()) {
                r = r * to_poly(c);
                if (r.is_zero()) break;
            }
            return r;
        }
        case Expr::Kind::Power: {
            Poly base = to_poly(e.children().front());
            if (e.exponent() >= 0) return base.pow(e.exponent());
            if (!base.is_constant() || base.is_zero())
                throw ExprError("negative power of a non-constant expression");
            return Poly(Rational(1) / base.constant_term()).pow(-e.exponent());
        }
    }
    return {};
}

const Poly& canonical_poly(const Expr& e) {
    if (!e.node_->canon) throw ExprError("canonical_poly called on a non-canonical tree");
    return *e.node_->canon;
}

Expr from_poly(Poly p) {
    auto shared = std::make_shared<const Poly>(std::move(p));
    const Poly& poly = *shared;
    std::vector<Expr> terms;
    terms.reserve(poly.terms().size());
    for (const auto& [mono, coef] : poly.terms()) {
        std::vector<Expr> factors;
        if (mono.empty() || !coef.is_one()) factors.emplace_back(coef);
        for (const auto& [a, e] : mono) {
            Expr s = Expr::symbol(a);
            factors.push_back(e == 1 ? s : Expr::power(s, e));
        }
        terms.push_back(Expr::product(std::move(factors)));
    }
    Expr tree = terms.empty() ? Expr(Rational(0)) : Expr::sum(std::move(terms));
    // attach the canonical poly to a fresh root so the result is recognisable
    auto root = std::make_shared<detail::Node>(*tree.node_);
    root->canon = std::move(shared);
    return Expr(std::shared_ptr<const detail::Node>(std::move(root)));
}

Expr normalize(const Expr& e) {
    if (e.is_canonical()) return e;
    return from_poly(to_poly(e));
}

bool equals_zero(const Expr& e) { return to_poly(e).is_zero(); }

// --- printing -------------------------------------------------------------

std::string var_name(VarIndex v, int dimension) {
    if (v == kTime) return "t";
    static constexpr const char* kShort[] = {"", "x", "y", "z", "w"};
    if (dimension <= 4 && v <= 4) return kShort[v];
    return "x" + std::to_string(v);
}

namespace {

int max_var_index(const Poly& p) {
    int m = 0;
    for (const auto& [mono, c] : p.terms())
        for (const auto& [a, e] : mono) {
            if (a.is_var()) m = std::max<int>(m, a.var);
            if (a.is_jet())
                for (VarIndex v : a.index.vars()) m = std::max<int>(m, v);
        }
    return m;
}

int max_var_index(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Number: return 0;
        case Expr::Kind::Symbol: return max_var_index(Poly::atom(e.atom()));
        default: {
            int m = 0;
            for (const auto& c : e.children()) m = std::max(m, max_var_index(c));
            return m;
        }
    }
}

const char* field_prefix(Field f) {
    switch (f) {
        case Field::U: return "u";
        case Field::Phi: return "phi";
        case Field::F: return "F";
        case Field::DalphaU: return "Dalpha_u";
        case Field::D1alphaU: return "D1alpha_u";
    }
    return "?";
}

std::string index_string(const DerivIndex& idx, int dim, bool latex) {
    std::string body;
    for (VarIndex v : idx.vars()) body += var_name(v, dim);
    if (!latex && body.size() == 1) return body;
    return "{" + body + "}";
}

struct Printer {
    int dim;
    bool latex;

    std::string atom(const Atom& a) const {
        if (a.is_alpha()) return latex ? "\\alpha" : "alpha";
        if (a.is_var()) return var_name(a.var, dim);
        if (latex) {
            if (a.field == Field::DalphaU) return "D_{t}^{\\alpha}u";
            if (a.field == Field::D1alphaU) return "D_{t}^{1-\\alpha}u";
            std::string base = a.field == Field::Phi ? "\\phi" : field_prefix(a.field);
            return a.index.empty() ? base : base + "_" + index_string(a.index, dim, true);
        }
        std::string base = field_prefix(a.field);
        return a.index.empty() ? base : base + "_" + index_string(a.index, dim, false);
    }

    std::string number(const Rational& r) const {
        if (!latex || r.is_integer()) return r.str();
        const std::string s = r.sign() < 0 ? "-" : "";
        return s + "\\frac{" + std::to_string(std::abs(r.num())) + "}{" + std::to_string(r.den()) +
               "}";
    }

    static bool is_alpha_factor(const Expr& f) {
        if (f.kind() == Expr::Kind::Symbol) return f.atom().is_alpha();
        if (f.kind() == Expr::Kind::Power)
            return f.children().front().kind() == Expr::Kind::Symbol &&
                   f.children().front().atom().is_alpha();
        return false;
    }

    // Prints a term without its sign; returns true if the term is negative.
    std::pair<bool, std::string> unsigned_term(const Expr& e) const {
        if (e.kind() == Expr::Kind::Number && e.number().sign() < 0)
            return {true, number(-e.number())};
        if (e.kind() == Expr::Kind::Product && !e.children().empty() &&
            e.children().front().kind() == Expr::Kind::Number &&
            e.children().front().number().sign() < 0) {
            std::vector<Expr> rest(e.children().begin() + 1, e.children().end());
            const Rational c = -e.children().front().number();
            if (!c.is_one()) rest.insert(rest.begin(), Expr(c));
            return {true, print(Expr::product(std::move(rest)))};
        }
        return {false, print(e)};
    }

    std::string print(const Expr& e) const {
        switch (e.kind()) {
            case Expr::Kind::Number: return number(e.number());
            case Expr::Kind::Symbol: return atom(e.atom());
            case Expr::Kind::Sum: {
                std::string out;
                bool first = true;
                for (const auto& c : e.children()) {
                    auto [neg, s] = unsigned_term(c);
                    if (first) out = neg ? "-" + s : s;
                    else out += neg ? " - " + s : " + " + s;
                    first = false;
                }
                return out;
            }
            case Expr::Kind::Product: {
                if (!e.children().empty() && e.children().front().kind() == Expr::Kind::Number &&
                    e.children().front().number().sign() < 0)
                    return "-" + unsigned_term(e).second;
                std::vector<Expr> f = e.children();
                // alpha reads best right after the numeric coefficient
                std::stable_partition(f.begin(), f.end(), [](const Expr& x) {
                    return x.kind() == Expr::Kind::Number;
                });
                auto first_non_number = std::find_if(f.begin(), f.end(), [](const Expr& x) {
                    return x.kind() != Expr::Kind::Number;
                });
                std::stable_partition(first_non_number, f.end(), is_alpha_factor);
                std::string out;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    std::string s = print(f[i]);
                    const bool wrap = f[i].kind() == Expr::Kind::Sum ||
                                      (i > 0 && f[i].kind() == Expr::Kind::Number &&
                                       f[i].number().sign() < 0) ||
                                      (i > 0 && latex && f[i].kind() == Expr::Kind::Number);
                    if (wrap) s = latex ? "\\left(" + s + "\\right)" : "(" + s + ")";
                    if (i > 0) out += latex ? " " : "*";
                    out += s;
                }
                return out;
            }
            case Expr::Kind::Power: {
                const Expr& b = e.children().front();
                std::string s = print(b);
                const bool simple = b.kind() == Expr::Kind::Symbol ||
                                    (b.kind() == Expr::Kind::Number && b.number().sign() >= 0 &&
                                     b.number().is_integer());
                if (!simple) s = latex ? "\\left(" + s + "\\right)" : "(" + s + ")";
                if (latex) return s + "^{" + std::to_string(e.exponent()) + "}";
                return s + "^" + std::to_string(e.exponent());
            }
        }
        return {};
    }
};

int print_dimension(const Expr& e, const PrintOptions& opts) {
    if (opts.dimension > 0) return opts.dimension;
    const int m = e.is_canonical() ? max_var_index(canonical_poly(e)) : max_var_index(e);
    return m <= 4 ? 4 : m;
}

}  // namespace

std::string to_string(const Expr& e, const PrintOptions& opts) {
    return Printer{print_dimension(e, opts), false}.print(e);
}

std::string to_latex(const Expr& e, const PrintOptions& opts) {
    return Printer{print_dimension(e, opts), true}.print(e);
}

std::string atom_name(const Atom& a, const PrintOptions& opts) {
    const int dim = opts.dimension > 0 ? opts.dimension : std::max(4, max_var_index(Poly::atom(a)));
    return Printer{dim, false}.atom(a);
}

// --- calculus -------------------------------------------------------------

namespace {

// Monomial with one power of `a` removed; the multiplicity is returned.
std::pair<Monomial, int> drop_one(const Monomial& m, std::size_t pos) {
    Monomial r = m;
    const int e = r[pos].second;
    if (e == 1) r.erase(r.begin() + static_cast<std::ptrdiff_t>(pos));
    else r[pos].second = e - 1;
    return {r, e};
}

void check_order(const Atom& a, const JetOptions& opts) {
    if (a.index.order() > opts.max_order)
        throw JetOrderError("jet order " + std::to_string(a.index.order()) +
                            " exceeds the configured maximum " + std::to_string(opts.max_order) +
                            " (" + atom_name(a) + ")");
}

Poly differentiate(const Poly& p, const std::function<const Atom*(const Atom&, Atom&)>& rule) {
    // rule(a, scratch) returns the atom that a's derivative multiplies by, or
    // nullptr when a's contribution is zero; a returned pointer to a itself
    // means d(a)/dv = 1.
    Poly out;
    for (const auto& [mono, coef] : p.terms()) {
        for (std::size_t i = 0; i < mono.size(); ++i) {
            Atom scratch;
            const Atom* d = rule(mono[i].first, scratch);
            if (d == nullptr) continue;
            auto [rest, e] = drop_one(mono, i);
            if (d == &mono[i].first) {
                out.add_term(rest, coef * Rational(e));
            } else {
                out.add_term(multiply(rest, Monomial{{*d, 1}}), coef * Rational(e));
            }
        }
    }
    return out;
}

Poly partial_poly(const Poly& p, const Atom& v) {
    if (v.is_var()) {
        return differentiate(p, [&](const Atom& a, Atom& scratch) -> const Atom* {
            if (a.is_var()) return a.var == v.var ? &a : nullptr;
            if (a.is_function_symbol()) {
                scratch = Atom::jet(a.field, a.index.with(v.var));
                return &scratch;
            }
            return nullptr;
        });
    }
    return differentiate(p, [&](const Atom& a, Atom&) -> const Atom* { return a == v ? &a : nullptr; });
}

Poly total_poly(const Poly& p, VarIndex v, const JetOptions& opts) {
    return differentiate(p, [&](const Atom& a, Atom& scratch) -> const Atom* {
        if (a.is_alpha()) return nullptr;
        if (a.is_var()) return a.var == v ? &a : nullptr;
        if (a.is_nonlocal())
            throw ExprError("total derivative of the nonlocal symbol " + atom_name(a));
        scratch = Atom::jet(a.field, a.index.with(v));
        check_order(scratch, opts);
        return &scratch;
    });
}

Poly replace_poly(const Poly& p, const std::map<Atom, Poly>& repl) {
    Poly out;
    for (const auto& [mono, coef] : p.terms()) {
        Poly term(coef);
        Monomial kept;
        for (const auto& [a, e] : mono) {
            auto it = repl.find(a);
            if (it == repl.end()) kept.emplace_back(a, e);
            else term = term * it->second.pow(e);
        }
        if (!kept.empty()) {
            Poly k;
            k.add_term(kept, Rational(1));
            term = term * k;
        }
        out += term;
    }
    return out;
}

std::set<Atom> poly_atoms(const Poly& p) {
    std::set<Atom> s;
    for (const auto& [mono, c] : p.terms())
        for (const auto& [a, e] : mono) s.insert(a);
    return s;
}

}  // namespace

Expr partial_derivative(const Expr& e, const Atom& v) {
    if (v.is_alpha()) throw ExprError("alpha is a parameter, not a coordinate");
    return from_poly(partial_poly(to_poly(e), v));
}

Expr total_derivative(const Expr& e, VarIndex v, const JetOptions& opts) {
    return from_poly(total_poly(to_poly(e), v, opts));
}

Expr total_derivative(const Expr& e, const DerivIndex& vars, const JetOptions& opts) {
    Poly p = to_poly(e);
    for (VarIndex v : vars.vars()) p = total_poly(p, v, opts);
    return from_poly(std::move(p));
}

Expr replace_atoms(const Expr& e, const std::map<Atom, Expr>& repl) {
    std::map<Atom, Poly> r;
    for (const auto& [a, x] : repl) r.emplace(a, to_poly(x));
    return from_poly(replace_poly(to_poly(e), r));
}

Expr substitute(const Expr& e, const SubstitutionRules& rules, const JetOptions& opts) {
    std::vector<Poly> rhs;
    for (const auto& [key, value] : rules) {
        if (!key.is_jet()) throw SubstitutionError("substitution keys must be jet coordinates");
        rhs.push_back(to_poly(value));
    }
    auto matching_rule = [&](const Atom& a) -> int {
        if (!a.is_jet()) return -1;
        for (std::size_t k = 0; k < rules.size(); ++k)
            if (rules[k].first.field == a.field && a.index.contains(rules[k].first.index))
                return static_cast<int>(k);
        return -1;
    };

    // a rule whose right-hand side feeds back into any rule is a cycle
    const std::size_t n = rules.size();
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (const Atom& a : poly_atoms(rhs[i])) {
            const int j = matching_rule(a);
            if (j >= 0) edge[i][static_cast<std::size_t>(j)] = true;
        }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (edge[i][k] && edge[k][j]) edge[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (edge[i][i])
            throw SubstitutionError("substitution rules are cyclic at " + atom_name(rules[i].first));

    Poly p = to_poly(e);
    const int bound = 2 * opts.max_order + 2;
    for (int pass = 0; pass <= bound; ++pass) {
        std::map<Atom, Poly> repl;
        for (const Atom& a : poly_atoms(p)) {
            const int k = matching_rule(a);
            if (k < 0) continue;
            const auto rest = a.index.minus(rules[static_cast<std::size_t>(k)].first.index);
            Poly r = rhs[static_cast<std::size_t>(k)];
            for (VarIndex v : rest.vars()) r = total_poly(r, v, opts);
            repl.emplace(a, std::move(r));
        }
        if (repl.empty()) return from_poly(std::move(p));
        p = replace_poly(p, repl);
    }
    throw SubstitutionError("substitution did not reach a fixpoint within " +
                            std::to_string(bound) + " passes");
}

std::set<Atom> atoms(const Expr& e) { return poly_atoms(to_poly(e)); }

bool depends_on(const Expr& e, const Atom& a) { return atoms(e).count(a) > 0; }

int max_jet_order(const Expr& e) {
    int m = 0;
    for (const Atom& a : atoms(e))
        if (a.is_jet()) m = std::max(m, a.index.order());
    return m;
}

// --- evaluation -----------------------------------------------------------

double eval_numeric(const Expr& e, const Binding& b, double alpha_value) {
    const Poly p = to_poly(e);
    std::vector<double> point;
    for (const auto& [a, v] : b.values)
        if (a.is_var()) {
            if (point.size() <= a.var) point.resize(a.var + 1u, std::nan(""));
            point[a.var] = v;
        }
    auto lookup = [&](const Atom& a) -> double {
        if (a.is_alpha()) return alpha_value;
        if (auto it = b.values.find(a); it != b.values.end()) return it->second;
        if (a.is_jet())
            if (auto f = b.functions.find(a.field); f != b.functions.end())
                return f->second(a.index, point);
        throw EvalError("unbound symbol " + atom_name(a));
    };
    double sum = 0.0;
    for (const auto& [mono, coef] : p.terms()) {
        double term = coef.to_double();
        for (const auto& [a, ex] : mono) term *= std::pow(lookup(a), ex);
        sum += term;
    }
    if (!std::isfinite(sum)) throw EvalError("non-finite result");
    return sum;
}

}  // namespace liesym
