#pragma once

// Conserved vectors from the formal Lagrangian L = phi (D_t^alpha u - Laplacian u)
// and their verification: symbolic on both shells for the integer regime,
// cell flux balance on grids for the one-dimensional fractional regime.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "liesym/frac_numerics.hpp"
#include "liesym/prolong.hpp"
#include "liesym/reference_tables.hpp"

namespace liesym {

struct FormalLagrangian {
    HeatEquation eq;
    Expr L;
};

FormalLagrangian formal_lagrangian(const HeatEquation& eq);

/// coefficient * I^(1-alpha)[arg] or coefficient * J(arg, second).
struct NonlocalNode {
    enum class Kind { FracInt, J };
    Kind kind = Kind::FracInt;
    Expr coefficient;
    Expr arg;
    Expr second;  // J only

    std::string str(const PrintOptions& opts = {}) const;
};

/// One component comparison against the printed table.
struct ComponentDiff {
    std::string component;  // "W", "Ct", "Ct.fracint", "Ct.J", "Cx[1]", ...
    std::string status;     // match | match-on-shell | differs | missing
    std::string printed;
    std::string computed;
    std::string difference;  // printed - computed, when they differ
};

struct PaperDiff {
    std::string printed_entry;  // empty when no printed entry applies
    std::string matched_by;     // "name" | "W" | ""
    std::vector<ComponentDiff> components;
    std::vector<std::string> notes;

    bool all_match() const;
};

struct ConservedVector {
    std::string symmetry;
    int n = 1;
    Regime regime = Regime::Integer;
    Expr W;
    Expr Ct;  // local part
    std::vector<NonlocalNode> nonlocal;
    std::vector<Expr> Cx;
    bool trivial = false;
    std::optional<PaperDiff> paper_diff;

    bool has_nonlocal() const { return !nonlocal.empty(); }
    /// Full time component including the nonlocal nodes.
    std::string Ct_str(const PrintOptions& opts = {}) const;
};

struct RegimeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operator-derived components: C^t = xi0 L + W phi (integer) or
/// xi0 L + phi I^(1-alpha) W + J(W, phi_t) (fractional);
/// C^{x_i} = xi^i L + W phi_{x_i} - phi D_{x_i} W. Throws DimensionMismatch or
/// RegimeMismatch when f is not a symmetry of eq's regime (integer: symbolic
/// determining equations; fractional: span of the fractional catalog).
ConservedVector conserved_vector(const VectorField& f, const HeatEquation& eq,
                                 const JetOptions& opts = {});

/// On-shell rules for u, F and the adjoint shell phi_t -> -Laplacian(phi);
/// fractional: D_t^alpha u -> Laplacian(u).
SubstitutionRules both_shell_rules(const HeatEquation& eq);

/// A conserved vector whose components all vanish on both shells.
bool is_trivial(const ConservedVector& cv, const HeatEquation& eq, const JetOptions& opts = {});

struct AdjointEquation {
    HeatEquation eq;
    /// Integer: phi_t + Laplacian(phi). Fractional: the local part
    /// -Laplacian(phi); the right RL derivative is carried by the flag.
    Expr local;
    bool right_derivative = false;
    /// Integer: machine-verified polynomial solutions. Fractional: empty.
    std::vector<std::pair<std::string, Expr>> families;
    std::string numeric_test_function;

    std::string str() const;
};

AdjointEquation adjoint_residual(const HeatEquation& eq);
/// phi_t + Laplacian(phi) for a phi given as an expression in (t, x).
Expr apply_adjoint(const HeatEquation& eq, const Expr& phi);

struct NonlocalError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// D_t C^t + sum D_i C^{x_i} reduced on both shells. Throws NonlocalError
/// for nonlocal components.
Expr divergence_onshell_symbolic(const ConservedVector& cv, const HeatEquation& eq,
                                 const JetOptions& opts = {});

/// Compares with the printed table entry for the symmetry (by name, falling
/// back to an entry whose printed W equals the computed one).
PaperDiff paper_diff(const ConservedVector& cv, const PrintedConservationTable& table,
                     const JetOptions& opts = {});

/// Conserved vectors of every catalog generator with the printed-table diff
/// attached whenever a printed table exists for (n, regime).
std::vector<ConservedVector> conserved_vectors(const HeatEquation& eq,
                                               const Fixtures& fixtures = default_fixtures(),
                                               const JetOptions& opts = {});

/// {symmetry, W, Ct, Cx, nonlocal_nodes, trivial, paper_diff}
nlohmann::json to_json(const ConservedVector& cv);
/// eqnarray block with C^t, C^{x_i} and W.
std::string to_latex(const ConservedVector& cv);

/// Rational combination sum c_k cv_k, componentwise (local parts; nonlocal
/// nodes are concatenated with scaled coefficients).
ConservedVector combine(const std::vector<std::pair<Rational, ConservedVector>>& terms);

// --- numeric flux balance (n = 1, fractional) ---------------------------------

struct Cell {
    double t1 = 0.5, t2 = 1.0;
    double x1 = 0.0, x2 = 1.0;
};

struct FluxConfig {
    double alpha = 0.5;
    std::size_t quad_nodes = 256;  // k for the J quadrature
    Scheme scheme = Scheme::GL;
};

struct FluxReport {
    double imbalance = 0.0;            // |sum| / sum of |boundary terms|
    double absolute = 0.0;             // |sum|
    double time_faces = 0.0;           // int (C^t(t2) - C^t(t1)) dx
    double space_faces = 0.0;          // int (C^x(x2) - C^x(x1)) dt
    double boundary_magnitude = 0.0;
    Cell cell;                         // snapped to grid nodes
};

/// Integral form of D_t C^t + D_x C^x = 0 over the cell. Jets come from finite
/// differences, I^(1-alpha) from a negative-order GL sum with a starting
/// correction, J from j_quadrature on power-law-aware interpolants.
/// Throws GridError for cells touching t = 0 or leaving the grid.
FluxReport divergence_numeric_fractional(const ConservedVector& cv, const GridFunction& u,
                                         const GridFunction& phi, const Cell& cell,
                                         const FluxConfig& cfg = {});

}  // namespace liesym
