#pragma once

// Printed reference data: commutator and conserved-vector tables transcribed
// verbatim (typos included) as regression fixtures, plus the bracket
// allow-list.

#include <string>
#include <vector>

#include "json.hpp"
#include "liesym/heat_catalog.hpp"

namespace liesym {

/// One printed bracket [a, b] = value. `value` is a linear combination of
/// generator names with alpha-rational coefficients ("2*alpha*G01",
/// "-2*G6 + 4*G4"), or "~F" for an unnamed member of the infinite family.
struct PrintedBracket {
    std::string a, b, value;
    std::string note;
};

struct PrintedBracketTable {
    std::string id;  // "integer-1", "fractional-3", ...
    int n = 1;
    Regime regime = Regime::Integer;
    std::vector<PrintedBracket> entries;
};

/// A printed entry known to disagree with direct computation.
struct AllowedDiscrepancy {
    std::string table, a, b, value;
    std::string reason;
};

/// Printed conserved vector. Expressions use the parser grammar; the token W
/// stands for the printed characteristic (or the computed one when none is
/// printed). For the fractional regime `Ct` is the local part and the
/// nonlocal part is phi * D^(1-alpha)[fracint_arg] + J(j_arg, phi_t).
struct PrintedConservedVector {
    std::string symmetry;
    std::string W;
    std::string Ct;
    std::string fracint_arg;
    std::string j_arg;
    std::vector<std::string> Cx;
    std::string note;
};

struct PrintedConservationTable {
    std::string id;
    int n = 1;
    Regime regime = Regime::Integer;
    std::vector<PrintedConservedVector> entries;
};

struct Fixtures {
    std::vector<PrintedBracketTable> brackets;
    std::vector<AllowedDiscrepancy> allow_list;
    std::vector<PrintedConservationTable> conservation;

    const PrintedBracketTable* bracket_table(int n, Regime r) const;
    const PrintedConservationTable* conservation_table(int n, Regime r) const;
};

/// The transcribed tables for n = 1..4 in both regimes.
const Fixtures& default_fixtures();

nlohmann::json to_json(const Fixtures& f);
/// Throws std::invalid_argument on a malformed document.
Fixtures fixtures_from_json(const nlohmann::json& j);

// --- bracket regression ----------------------------------------------------

/// Parsed printed right-hand side.
struct PrintedValue {
    bool infinite = false;  // "~F"
    std::vector<std::pair<std::string, RatFunc>> terms;
};

/// Throws std::invalid_argument on unreadable text.
PrintedValue parse_printed_value(const std::string& text);

struct BracketCheck {
    std::string a, b, printed, computed;
    bool match = false;
    bool allowed = false;
    std::string note;
};

struct BracketRegression {
    std::string table;
    std::vector<BracketCheck> checks;
    /// Allow-list entries of this table that are not printed or that match.
    std::vector<std::string> stale_allowances;
    /// Nonzero computed brackets (i < j in catalog order) printed in neither order.
    std::vector<std::pair<std::string, std::string>> unprinted;

    std::size_t mismatches() const;
    bool pass() const;
};

BracketRegression bracket_regression(const PrintedBracketTable& table,
                                     const std::vector<AllowedDiscrepancy>& allow);
nlohmann::json to_json(const BracketRegression& r);

}  // namespace liesym
