#pragma once

// Point vector fields xi0 d_t + sum xi^i d_{x_i} + eta d_u and the Lie
// algebra machinery built on them.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "liesym/expr.hpp"
#include "liesym/ratfunc.hpp"

namespace liesym {

struct VectorField {
    std::string name;
    Expr xi0;
    std::vector<Expr> xi;  // xi[i-1] multiplies d_{x_i}
    Expr eta;

    static VectorField zero(int n, std::string name = {});

    int dimension() const { return static_cast<int>(xi.size()); }
    /// Component k: 0 is xi0, 1..n are xi, n+1 is eta.
    const Expr& component(int k) const;
    Expr& component(int k);
    int num_components() const { return dimension() + 2; }

    /// The field acting as a derivation on a function of (t, x, u).
    Expr apply(const Expr& g) const;
    bool is_zero() const;
    /// Coefficients free of u-derivatives; phi and F symbols are allowed.
    bool is_point_field() const;
    bool involves_F() const;

    /// "2*t*d_t + x*d_x".
    std::string str() const;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& c, const VectorField& f);
/// Componentwise equals_zero of the difference.
bool equivalent(const VectorField& a, const VectorField& b);
VectorField normalized(VectorField f);

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// [A, B]^k = A(B^k) - B(A^k).
VectorField lie_bracket(const VectorField& a, const VectorField& b);

struct Decomposition {
    bool in_span = false;
    /// Outside the span and involving the arbitrary solution F.
    bool infinite = false;
    std::vector<RatFunc> coeffs;  // valid when in_span

    bool is_zero() const;
    /// "2*G3 - G6"-style rendering with the basis names.
    std::string str(const std::vector<std::string>& names) const;
};

Decomposition decompose_in_basis(const VectorField& f, const std::vector<VectorField>& basis);

struct BracketEntry {
    VectorField value;
    Decomposition dec;
};

struct CommutatorTable {
    std::vector<VectorField> basis;
    std::vector<std::vector<BracketEntry>> entries;  // entries[i][j] = [basis_i, basis_j]

    std::size_t size() const { return basis.size(); }
    std::vector<std::string> names() const;
    const BracketEntry& at(std::size_t i, std::size_t j) const { return entries[i][j]; }
    bool closed() const;
};

CommutatorTable commutator_table(const std::vector<VectorField>& basis);

/// {basis: [...], entries: [{i, j, coeffs: {name: "..."}} | {i, j, outside: true}]}
/// listing every nonzero entry with i < j.
nlohmann::json to_json(const CommutatorTable& t);
/// Three-column tabular of the nonzero brackets.
std::string to_latex(const CommutatorTable& t);

struct ClosureReport {
    bool closed = true;
    std::vector<std::pair<std::size_t, std::size_t>> offending;
};

ClosureReport closure_report(const std::vector<VectorField>& basis);

struct NotClosed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
struct StructureConstants {
    std::size_t dim = 0;
    std::vector<std::vector<std::vector<RatFunc>>> c;

    const RatFunc& at(std::size_t i, std::size_t j, std::size_t k) const { return c[i][j][k]; }
    bool antisymmetric() const;
    bool jacobi() const;
};

/// Structure constants of `basis` modulo the span of `central`: brackets of
/// basis elements must decompose in basis + central, and the central
/// coefficients are dropped. Throws NotClosed otherwise.
StructureConstants structure_constants(const std::vector<VectorField>& basis,
                                       const std::vector<VectorField>& central = {});

/// Dimensions of g, [g,g], [[g,g],[g,g]], ... ending at 0 or at the first
/// repeated dimension. Throws NotClosed.
std::vector<int> derived_series(const std::vector<VectorField>& basis);
std::vector<int> derived_series(const StructureConstants& sc);

struct CanonicalPattern {
    enum class Kind { SL2, SO };
    Kind kind = Kind::SL2;
    int n = 0;  // for so(n)

    static CanonicalPattern sl2() { return {Kind::SL2, 0}; }
    static CanonicalPattern so(int n) { return {Kind::SO, n}; }
    std::size_t dimension() const;
    std::string name() const;
    /// sl2 in the order (e, h, f): [e,h] = 2e, [f,h] = -2f, [e,f] = h.
    /// so(n) in the order J12, J13, .., J1n, J23, ..:
    /// [J_ab, J_cd] = d_bc J_ad - d_ac J_bd - d_bd J_ac + d_ad J_bc.
    Rational constant(std::size_t i, std::size_t j, std::size_t k) const;
};

struct CanonicalMatch {
    bool matched = false;
    std::vector<Rational> scale;  // e'_k = scale[k] * e_k
    std::string reason;
};

CanonicalMatch match_canonical(const std::vector<VectorField>& basis, const CanonicalPattern& p,
                               const std::vector<VectorField>& central = {});
CanonicalMatch match_canonical(const StructureConstants& sc, const CanonicalPattern& p);

}  // namespace liesym
