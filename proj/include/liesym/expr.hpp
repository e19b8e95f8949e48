#pragma once

// Minimal computer-algebra kernel on the jet space of u(t, x_1..x_n).
//
// Expressions are immutable trees. Arithmetic operators build trees without
// simplifying; every named operation below returns the canonical form: a
// fully expanded sum of monomials with exact rational coefficients, factors
// ordered t < x_1 < ... < x_n < jet coordinates < alpha.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

inline constexpr int kDefaultMaxJetOrder = 4;

/// Independent variable: 0 is t, 1..n are the spatial x_i.
using VarIndex = std::uint8_t;
inline constexpr VarIndex kTime = 0;

/// Multiset of independent variables naming a derivative, e.g. {t}, {x,x}.
class DerivIndex {
public:
    DerivIndex() = default;
    DerivIndex(std::initializer_list<VarIndex> vars);
    explicit DerivIndex(std::vector<VarIndex> vars);

    int order() const { return static_cast<int>(vars_.size()); }
    bool empty() const { return vars_.empty(); }
    const std::vector<VarIndex>& vars() const { return vars_; }
    int count(VarIndex v) const;

    DerivIndex with(VarIndex v) const;
    /// Multiset inclusion.
    bool contains(const DerivIndex& sub) const;
    /// Multiset difference; `sub` must be contained.
    DerivIndex minus(const DerivIndex& sub) const;

    friend bool operator==(const DerivIndex&, const DerivIndex&) = default;
    friend std::strong_ordering operator<=>(const DerivIndex& a, const DerivIndex& b);

private:
    std::vector<VarIndex> vars_;  // sorted
};

/// Families of dependent symbols. `U` carries jet coordinates; `Phi` and `F`
/// are opaque functions of (t, x) whose derivatives become fresh atoms.
/// `DalphaU` / `D1alphaU` stand for the nonlocal D_t^alpha u and
/// D_t^{1-alpha} u and cannot be differentiated in t.
enum class Field : std::uint8_t { U, Phi, F, DalphaU, D1alphaU };

enum class AtomKind : std::uint8_t { Var, Jet, Alpha };

struct Atom {
    AtomKind kind = AtomKind::Var;
    VarIndex var = 0;
    Field field = Field::U;
    DerivIndex index;

    static Atom variable(VarIndex v) { return {AtomKind::Var, v, Field::U, {}}; }
    static Atom jet(Field f, DerivIndex idx = {}) { return {AtomKind::Jet, 0, f, std::move(idx)}; }
    static Atom alpha() { return {AtomKind::Alpha, 0, Field::U, {}}; }

    bool is_var() const { return kind == AtomKind::Var; }
    bool is_jet() const { return kind == AtomKind::Jet; }
    bool is_alpha() const { return kind == AtomKind::Alpha; }
    /// phi and F (and their derivatives) depend explicitly on t and x.
    bool is_function_symbol() const { return is_jet() && (field == Field::Phi || field == Field::F); }
    bool is_nonlocal() const {
        return is_jet() && (field == Field::DalphaU || field == Field::D1alphaU);
    }

    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

using Monomial = std::vector<std::pair<Atom, int>>;  // sorted by atom, exponents > 0

/// Canonical polynomial: monomial -> nonzero rational coefficient.
class Poly {
public:
    using Terms = std::map<Monomial, Rational>;

    Poly() = default;
    explicit Poly(Rational c);
    static Poly atom(const Atom& a);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;
    Poly pow(int e) const;

    void add_term(const Monomial& m, const Rational& c);

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    Terms terms_;
};

Monomial multiply(const Monomial& a, const Monomial& b);

class Expr;

namespace detail {
struct Node;
}

/// Immutable expression tree.
class Expr {
public:
    enum class Kind { Number, Symbol, Sum, Product, Power };

    Expr();  // zero
    Expr(Rational c);      // NOLINT implicit
    Expr(std::int64_t c);  // NOLINT implicit
    Expr(int c) : Expr(static_cast<std::int64_t>(c)) {}  // NOLINT implicit

    static Expr symbol(const Atom& a);
    static Expr t() { return symbol(Atom::variable(kTime)); }
    static Expr x(VarIndex i) { return symbol(Atom::variable(i)); }
    static Expr u(DerivIndex idx = {}) { return symbol(Atom::jet(Field::U, std::move(idx))); }
    static Expr phi(DerivIndex idx = {}) { return symbol(Atom::jet(Field::Phi, std::move(idx))); }
    static Expr F(DerivIndex idx = {}) { return symbol(Atom::jet(Field::F, std::move(idx))); }
    static Expr alpha() { return symbol(Atom::alpha()); }
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, int exponent);

    Kind kind() const;
    const Rational& number() const;
    const Atom& atom() const;
    const std::vector<Expr>& children() const;
    int exponent() const;

    /// True when this tree was produced by normalize().
    bool is_canonical() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    /// Division by an expression that normalizes to a nonzero rational.
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    /// Structural equality of trees (not mathematical equality; see equals_zero).
    friend bool operator==(const Expr& a, const Expr& b);

private:
    friend struct detail::Node;
    friend const Poly& canonical_poly(const Expr&);
    friend Expr from_poly(Poly p);
    explicit Expr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
};

// --- errors ---------------------------------------------------------------

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : ExprError {
    enum class Kind { Syntax, UnknownSymbol };
    ParseError(Kind k, std::size_t pos, const std::string& msg);
    Kind kind;
    std::size_t position;
};

struct JetOrderError : ExprError {
    using ExprError::ExprError;
};

struct SubstitutionError : ExprError {
    using ExprError::ExprError;
};

struct EvalError : ExprError {
    using ExprError::ExprError;
};

// --- canonical form -------------------------------------------------------

Poly to_poly(const Expr& e);
/// Poly of a canonical tree without re-expanding.
const Poly& canonical_poly(const Expr& e);
Expr from_poly(Poly p);

Expr normalize(const Expr& e);
bool equals_zero(const Expr& e);
inline bool equal(const Expr& a, const Expr& b) { return equals_zero(a - b); }

// --- printing / parsing ---------------------------------------------------

struct PrintOptions {
    /// Spatial dimension used to pick variable names: <= 4 prints x, y, z, w;
    /// larger prints x1..xN. Zero chooses from the expression itself.
    int dimension = 0;
};

std::string to_string(const Expr& e, const PrintOptions& opts = {});
std::string to_latex(const Expr& e, const PrintOptions& opts = {});
std::string atom_name(const Atom& a, const PrintOptions& opts = {});
std::string var_name(VarIndex v, int dimension);

Expr parse(std::string_view text);

// --- calculus on the jet space -------------------------------------------

struct JetOptions {
    int max_order = kDefaultMaxJetOrder;
};

/// Jet-space partial derivative. For an independent variable this includes
/// the explicit dependence of phi and F; jet coordinates of u are
/// independent of everything else.
Expr partial_derivative(const Expr& e, const Atom& v);

/// Total derivative D_v. Throws JetOrderError when a jet coordinate would
/// exceed `opts.max_order`.
Expr total_derivative(const Expr& e, VarIndex v, const JetOptions& opts = {});
Expr total_derivative(const Expr& e, const DerivIndex& vars, const JetOptions& opts = {});

/// Rule "jet atom -> expression". A rule for u_K also rewrites every u_J with
/// J containing K, as D_{J-K} of the right-hand side.
using SubstitutionRules = std::vector<std::pair<Atom, Expr>>;

Expr substitute(const Expr& e, const SubstitutionRules& rules, const JetOptions& opts = {});

/// Plain replacement of atoms by expressions, with no derivative propagation.
Expr replace_atoms(const Expr& e, const std::map<Atom, Expr>& repl);

std::set<Atom> atoms(const Expr& e);
bool depends_on(const Expr& e, const Atom& a);
/// Highest derivative order among jet atoms (0 if none).
int max_jet_order(const Expr& e);

// --- numeric evaluation ---------------------------------------------------

/// Values for the free symbols of an expression. Jet atoms of phi / F may
/// instead be served by a callable receiving the derivative index and the
/// point (t, x_1, .., x_n) assembled from the bound variables.
struct Binding {
    using FieldFn = std::function<double(const DerivIndex&, std::span<const double> point)>;

    std::map<Atom, double> values;
    std::map<Field, FieldFn> functions;

    Binding& set(const Atom& a, double v) {
        values[a] = v;
        return *this;
    }
    Binding& set_var(VarIndex v, double value) { return set(Atom::variable(v), value); }
};

double eval_numeric(const Expr& e, const Binding& b, double alpha_value = 1.0);

}  // namespace liesym
