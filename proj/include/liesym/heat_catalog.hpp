#pragma once

// Lie point symmetry catalogs of D_t^alpha u = sum_i u_{x_i x_i}.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "liesym/vector_field.hpp"

namespace liesym {

enum class Regime { Integer, Fractional };

std::string regime_name(Regime r);
Regime parse_regime(const std::string& s);

struct HeatEquation {
    int n = 1;
    Regime regime = Regime::Integer;

    HeatEquation(int n_, Regime r);
    bool fractional() const { return regime == Regime::Fractional; }
    /// u_t for the integer regime, Dalpha_u for the fractional one.
    Expr lhs() const;
    Expr rhs() const;  // the Laplacian
    std::string str() const;
};

enum class GenClass {
    SpaceTranslation,
    TimeTranslation,
    Solution,
    Rotation,
    Dilation,
    Projective,
    Homogeneity,
    Infinite,
};

std::string class_name(GenClass c);

struct NamedGenerator {
    VectorField field;
    GenClass cls;
    std::string note;  // empty unless the entry deviates from the printed form
};

/// Generators in the printed order and naming for n <= 4, generated
/// families for n > 4. Names are ASCII: "G3", "G01", "G310", "G5:7".
std::vector<NamedGenerator> generators(const HeatEquation& eq);
std::vector<VectorField> fields(const std::vector<NamedGenerator>& gens);
/// Catalog entries whose class is one of `classes`, in catalog order.
std::vector<NamedGenerator> select(const std::vector<NamedGenerator>& gens,
                                   std::initializer_list<GenClass> classes);
const NamedGenerator& by_name(const std::vector<NamedGenerator>& gens, const std::string& name);

/// (n^2+3n+10)/2 for the integer regime, (n^2+n+6)/2 for the fractional one.
int count_formula(int n, Regime r);

/// Catalog-level remarks (normalizations, corrections, open points).
std::vector<std::string> catalog_notes(const HeatEquation& eq);

/// {dimension, regime, generators: [{name, class, xi0, xi, eta}], notes}
nlohmann::json catalog_json(const HeatEquation& eq);
std::string catalog_latex(const HeatEquation& eq);

struct ExactSolution {
    std::string name;
    std::optional<Expr> expr;  // closed form when polynomial
    /// u(t, x); x has n entries.
    std::function<double(double t, std::span<const double> x)> value;
    std::string note;
};

/// Integer regime: 1, x1, x1^2+2t, exp(t+x1), heat kernel. Fractional:
/// t^(alpha-1), x1 t^(alpha-1), t^(alpha-1) E_{alpha,alpha}(-k^2 t^alpha) cos(k x1).
std::vector<ExactSolution> exact_solutions(const HeatEquation& eq, double alpha = 0.5,
                                           double k = 1.0);

}  // namespace liesym
