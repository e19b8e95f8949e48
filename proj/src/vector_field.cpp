#include "liesym/vector_field.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace liesym {

VectorField VectorField::zero(int n, std::string name) {
    VectorField f;
    f.name = std::move(name);
    f.xi.assign(static_cast<std::size_t>(n), Expr());
    return f;
}

const Expr& VectorField::component(int k) const {
    if (k == 0) return xi0;
    if (k == dimension() + 1) return eta;
    return xi.at(static_cast<std::size_t>(k - 1));
}

Expr& VectorField::component(int k) {
    if (k == 0) return xi0;
    if (k == dimension() + 1) return eta;
    return xi.at(static_cast<std::size_t>(k - 1));
}

Expr VectorField::apply(const Expr& g) const {
    std::vector<Expr> terms;
    terms.push_back(xi0 * partial_derivative(g, Atom::variable(kTime)));
    for (int i = 1; i <= dimension(); ++i)
        terms.push_back(xi[static_cast<std::size_t>(i - 1)] *
                        partial_derivative(g, Atom::variable(static_cast<VarIndex>(i))));
    terms.push_back(eta * partial_derivative(g, Atom::jet(Field::U)));
    return normalize(Expr::sum(std::move(terms)));
}

bool VectorField::is_zero() const {
    for (int k = 0; k < num_components(); ++k)
        if (!equals_zero(component(k))) return false;
    return true;
}

bool VectorField::is_point_field() const {
    for (int k = 0; k < num_components(); ++k)
        for (const Atom& a : atoms(component(k))) {
            if (a.is_jet() && a.field == Field::U && !a.index.empty()) return false;
            if (a.is_nonlocal()) return false;
        }
    return true;
}

bool VectorField::involves_F() const {
    for (int k = 0; k < num_components(); ++k)
        for (const Atom& a : atoms(component(k)))
            if (a.is_jet() && a.field == Field::F) return true;
    return false;
}

std::string VectorField::str() const {
    const PrintOptions opts{std::max(dimension(), 1)};
    std::string out;
    for (int k = 0; k < num_components(); ++k) {
        const Expr c = normalize(component(k));
        if (equals_zero(c)) continue;
        const std::string d = k == 0                 ? "d_t"
                              : k == dimension() + 1 ? "d_u"
                                                     : "d_" + var_name(static_cast<VarIndex>(k),
                                                                       opts.dimension);
        std::string coef = to_string(c, opts);
        const bool neg = !coef.empty() && coef[0] == '-' && c.kind() != Expr::Kind::Sum;
        if (neg) coef.erase(0, 1);
        if (c.kind() == Expr::Kind::Sum) coef = "(" + coef + ")";
        std::string term = coef == "1" ? d : coef + "*" + d;
        if (out.empty()) out = neg ? "-" + term : term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

namespace {

void check_dims(const VectorField& a, const VectorField& b) {
    if (a.dimension() != b.dimension())
        throw DimensionMismatch("vector fields of dimension " + std::to_string(a.dimension()) +
                                " and " + std::to_string(b.dimension()));
}

}  // namespace

VectorField operator+(const VectorField& a, const VectorField& b) {
    check_dims(a, b);
    VectorField r = VectorField::zero(a.dimension());
    for (int k = 0; k < a.num_components(); ++k)
        r.component(k) = normalize(a.component(k) + b.component(k));
    return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    check_dims(a, b);
    VectorField r = VectorField::zero(a.dimension());
    for (int k = 0; k < a.num_components(); ++k)
        r.component(k) = normalize(a.component(k) - b.component(k));
    return r;
}

VectorField operator*(const Expr& c, const VectorField& f) {
    VectorField r = VectorField::zero(f.dimension());
    for (int k = 0; k < f.num_components(); ++k) r.component(k) = normalize(c * f.component(k));
    return r;
}

bool equivalent(const VectorField& a, const VectorField& b) {
    if (a.dimension() != b.dimension()) return false;
    for (int k = 0; k < a.num_components(); ++k)
        if (!equal(a.component(k), b.component(k))) return false;
    return true;
}

VectorField normalized(VectorField f) {
    for (int k = 0; k < f.num_components(); ++k) f.component(k) = normalize(f.component(k));
    return f;
}

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
    check_dims(a, b);
    VectorField r = VectorField::zero(a.dimension(), "[" + a.name + "," + b.name + "]");
    for (int k = 0; k < a.num_components(); ++k)
        r.component(k) = normalize(a.apply(b.component(k)) - b.apply(a.component(k)));
    return r;
}

// --- decomposition --------------------------------------------------------

bool Decomposition::is_zero() const {
    if (!in_span) return false;
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

std::string Decomposition::str(const std::vector<std::string>& names) const {
    if (!in_span) return infinite ? "outside span (infinite family)" : "outside span";
    std::string out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const RatFunc& c = coeffs[k];
        if (c.is_zero()) continue;
        std::string s = c.str();
        const bool neg = s[0] == '-' && s.find(' ') == std::string::npos;
        if (neg) s.erase(0, 1);
        else if (s.find(' ') != std::string::npos && s[0] != '(') s = "(" + s + ")";
        std::string term = s == "1" ? names[k] : s + "*" + names[k];
        if (out.empty()) out = neg ? "-" + term : term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

Decomposition decompose_in_basis(const VectorField& f, const std::vector<VectorField>& basis) {
    for (const auto& b : basis) check_dims(f, b);
    Decomposition d;
    const std::size_t m = basis.size();
    // one equation per (component, alpha-free monomial)
    std::map<std::pair<int, Monomial>, std::size_t> row_of;
    RatMatrix a;
    std::vector<RatFunc> rhs;
    auto row = [&](int comp, const Monomial& mono) -> std::size_t {
        auto [it, inserted] = row_of.emplace(std::make_pair(comp, mono), a.size());
        if (inserted) {
            a.emplace_back(m);
            rhs.emplace_back();
        }
        return it->second;
    };
    for (int k = 0; k < f.num_components(); ++k) {
        for (std::size_t j = 0; j < m; ++j)
            for (const auto& [mono, c] : split_alpha(to_poly(basis[j].component(k))))
                a[row(k, mono)][j] = c;
        for (const auto& [mono, c] : split_alpha(to_poly(f.component(k)))) rhs[row(k, mono)] = c;
    }
    auto sol = solve(a, rhs, m);
    if (!sol) {
        d.infinite = f.involves_F();
        return d;
    }
    // independent symbolic check after clearing denominators
    AlphaPoly lcm(1);
    for (const auto& c : *sol) {
        const AlphaPoly g = AlphaPoly::gcd(lcm, c.den());
        AlphaPoly q, r;
        AlphaPoly::divmod(lcm * c.den(), g, q, r);
        lcm = q;
    }
    for (int k = 0; k < f.num_components(); ++k) {
        std::vector<Expr> terms{lcm.to_expr() * f.component(k)};
        for (std::size_t j = 0; j < m; ++j) {
            if ((*sol)[j].is_zero()) continue;
            AlphaPoly q, r;
            AlphaPoly::divmod(lcm, (*sol)[j].den(), q, r);
            terms.push_back(-((q * (*sol)[j].num()).to_expr() * basis[j].component(k)));
        }
        if (!equals_zero(Expr::sum(terms)))
            throw std::logic_error("basis decomposition failed its symbolic check");
    }
    d.in_span = true;
    d.coeffs = std::move(*sol);
    return d;
}

// --- tables ---------------------------------------------------------------

std::vector<std::string> CommutatorTable::names() const {
    std::vector<std::string> r;
    for (const auto& b : basis) r.push_back(b.name);
    return r;
}

bool CommutatorTable::closed() const {
    for (const auto& row : entries)
        for (const auto& e : row)
            if (!e.dec.in_span) return false;
    return true;
}

CommutatorTable commutator_table(const std::vector<VectorField>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (basis[i].name == basis[j].name && !basis[i].name.empty())
                throw std::invalid_argument("duplicate basis name " + basis[i].name);
    CommutatorTable t;
    t.basis = basis;
    const std::size_t m = basis.size();
    t.entries.assign(m, std::vector<BracketEntry>(m));
    for (std::size_t i = 0; i < m; ++i) {
        t.entries[i][i].value = VectorField::zero(basis[i].dimension());
        t.entries[i][i].dec = {true, false, std::vector<RatFunc>(m)};
        for (std::size_t j = i + 1; j < m; ++j) {
            BracketEntry e;
            e.value = lie_bracket(basis[i], basis[j]);
            e.dec = decompose_in_basis(e.value, basis);
            BracketEntry mirror;
            mirror.value = Expr(-1) * e.value;
            mirror.dec = e.dec;
            for (auto& c : mirror.dec.coeffs) c = -c;
            t.entries[i][j] = std::move(e);
            t.entries[j][i] = std::move(mirror);
        }
    }
    return t;
}

nlohmann::json to_json(const CommutatorTable& t) {
    nlohmann::json j;
    const auto names = t.names();
    j["basis"] = names;
    j["entries"] = nlohmann::json::array();
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b) {
            const auto& e = t.at(a, b);
            if (e.dec.is_zero()) continue;
            nlohmann::json row{{"i", a}, {"j", b}};
            if (!e.dec.in_span) {
                row["outside"] = true;
                row["infinite"] = e.dec.infinite;
                row["value"] = e.value.str();
            } else {
                nlohmann::json coeffs = nlohmann::json::object();
                for (std::size_t k = 0; k < t.size(); ++k)
                    if (!e.dec.coeffs[k].is_zero()) coeffs[names[k]] = e.dec.coeffs[k].str();
                row["coeffs"] = coeffs;
            }
            j["entries"].push_back(row);
        }
    return j;
}

namespace {

std::string latex_name(const std::string& name) {
    if (name.size() > 1 && name[0] == 'G') return "\\Gamma_{" + name.substr(1) + "}";
    return name;
}

std::string latex_coeff(const RatFunc& c) {
    if (!c.is_polynomial())
        return "\\frac{" + to_latex(c.num().to_expr()) + "}{" + to_latex(c.den().to_expr()) + "}";
    return to_latex(c.num().to_expr());
}

}  // namespace

std::string to_latex(const CommutatorTable& t) {
    std::vector<std::string> cells;
    const auto names = t.names();
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b) {
            const auto& e = t.at(a, b);
            if (e.dec.is_zero()) continue;
            std::string rhs;
            if (!e.dec.in_span) {
                rhs = "\\text{outside span}";
            } else {
                for (std::size_t k = 0; k < t.size(); ++k) {
                    const RatFunc& c = e.dec.coeffs[k];
                    if (c.is_zero()) continue;
                    std::string s = latex_coeff(c);
                    if (!rhs.empty() && s[0] != '-') rhs += "+";
                    if (s == "1") s.clear();
                    else if (s == "-1") s = "-";
                    else if (s.find('+') != std::string::npos ||
                             s.find(" - ") != std::string::npos)
                        s = "\\left(" + s + "\\right)";
                    if (!s.empty() && s != "-") s += " ";
                    rhs += s + latex_name(names[k]);
                }
            }
            cells.push_back("$[" + latex_name(names[a]) + "," + latex_name(names[b]) +
                            "]_{LB}=" + rhs + "$");
        }
    std::ostringstream out;
    out << "\\begin{tabular}{lll}\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out << cells[i];
        out << ((i % 3 == 2 || i + 1 == cells.size()) ? " \\\\\n" : " & ");
    }
    out << "\\end{tabular}\n";
    return out.str();
}

ClosureReport closure_report(const std::vector<VectorField>& basis) {
    ClosureReport r;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!decompose_in_basis(lie_bracket(basis[i], basis[j]), basis).in_span) {
                r.closed = false;
                r.offending.emplace_back(i, j);
            }
    return r;
}

// --- structure constants --------------------------------------------------

bool StructureConstants::antisymmetric() const {
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                if (!(c[i][j][k] + c[j][i][k]).is_zero()) return false;
    return true;
}

bool StructureConstants::jacobi() const {
    // sum_cyc [e_i, [e_j, e_l]] = 0, expanded in structure constants
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t l = 0; l < dim; ++l)
                for (std::size_t k = 0; k < dim; ++k) {
                    RatFunc s;
                    for (std::size_t p = 0; p < dim; ++p) {
                        s += c[j][l][p] * c[i][p][k];
                        s += c[l][i][p] * c[j][p][k];
                        s += c[i][j][p] * c[l][p][k];
                    }
                    if (!s.is_zero()) return false;
                }
    return true;
}

StructureConstants structure_constants(const std::vector<VectorField>& basis,
                                       const std::vector<VectorField>& central) {
    std::vector<VectorField> full = basis;
    full.insert(full.end(), central.begin(), central.end());
    StructureConstants sc;
    sc.dim = basis.size();
    sc.c.assign(sc.dim, std::vector<std::vector<RatFunc>>(sc.dim, std::vector<RatFunc>(sc.dim)));
    for (std::size_t i = 0; i < sc.dim; ++i)
        for (std::size_t j = i + 1; j < sc.dim; ++j) {
            const Decomposition d = decompose_in_basis(lie_bracket(basis[i], basis[j]), full);
            if (!d.in_span)
                throw NotClosed("[" + basis[i].name + "," + basis[j].name +
                                "] is outside the span of the basis");
            for (std::size_t k = 0; k < sc.dim; ++k) {
                sc.c[i][j][k] = d.coeffs[k];
                sc.c[j][i][k] = -d.coeffs[k];
            }
        }
    return sc;
}

std::vector<int> derived_series(const StructureConstants& sc) {
    const std::size_t m = sc.dim;
    RatMatrix current;
    for (std::size_t i = 0; i < m; ++i) {
        current.emplace_back(m);
        current.back()[i] = RatFunc(1);
    }
    std::vector<int> dims{static_cast<int>(m)};
    while (!current.empty()) {
        RatMatrix next;
        for (std::size_t a = 0; a < current.size(); ++a)
            for (std::size_t b = a + 1; b < current.size(); ++b) {
                std::vector<RatFunc> v(m);
                for (std::size_t i = 0; i < m; ++i) {
                    if (current[a][i].is_zero()) continue;
                    for (std::size_t j = 0; j < m; ++j) {
                        if (current[b][j].is_zero()) continue;
                        const RatFunc w = current[a][i] * current[b][j];
                        for (std::size_t k = 0; k < m; ++k)
                            if (!sc.c[i][j][k].is_zero()) v[k] += w * sc.c[i][j][k];
                    }
                }
                next.push_back(std::move(v));
            }
        next = row_basis(std::move(next));
        const int d = static_cast<int>(next.size());
        dims.push_back(d);
        if (d == static_cast<int>(current.size())) break;
        current = std::move(next);
    }
    return dims;
}

std::vector<int> derived_series(const std::vector<VectorField>& basis) {
    return derived_series(structure_constants(basis));
}

// --- canonical patterns ---------------------------------------------------

std::size_t CanonicalPattern::dimension() const {
    if (kind == Kind::SL2) return 3;
    return static_cast<std::size_t>(n * (n - 1) / 2);
}

std::string CanonicalPattern::name() const {
    return kind == Kind::SL2 ? "sl(2,R)" : "so(" + std::to_string(n) + ")";
}

namespace {

std::vector<std::pair<int, int>> so_pairs(int n) {
    std::vector<std::pair<int, int>> r;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) r.emplace_back(a, b);
    return r;
}

}  // namespace

Rational CanonicalPattern::constant(std::size_t i, std::size_t j, std::size_t k) const {
    if (kind == Kind::SL2) {
        // e = 0, h = 1, f = 2
        auto c = [](std::size_t a, std::size_t b, std::size_t k) -> Rational {
            if (a == 0 && b == 1) return k == 0 ? 2 : 0;
            if (a == 2 && b == 1) return k == 2 ? -2 : 0;
            if (a == 0 && b == 2) return k == 1 ? 1 : 0;
            return 0;
        };
        if (i == j) return 0;
        const Rational direct = c(i, j, k);
        return direct.is_zero() ? -c(j, i, k) : direct;
    }
    const auto pairs = so_pairs(n);
    // J_ab for arbitrary ordered (a, b) as (sign, index)
    auto index_of = [&](int a, int b) -> std::pair<int, std::size_t> {
        if (a == b) return {0, 0};
        const int s = a < b ? 1 : -1;
        const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        const auto it = std::find(pairs.begin(), pairs.end(), key);
        return {s, static_cast<std::size_t>(it - pairs.begin())};
    };
    const auto [a, b] = pairs[i];
    const auto [cc, d] = pairs[j];
    Rational r = 0;
    auto add = [&](int coeff, int p, int q) {
        if (coeff == 0) return;
        const auto [s, idx] = index_of(p, q);
        if (s != 0 && idx == k) r += Rational(coeff * s);
    };
    add(b == cc, a, d);
    add(-(a == cc), b, d);
    add(-(b == d), a, cc);
    add(a == d, b, cc);
    return r;
}

namespace {

std::optional<Rational> rationalize(double v) {
    // continued fractions with a bounded denominator, then an exactness test
    double x = v;
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 40; ++it) {
        const double a = std::floor(x);
        if (std::abs(a) > 1e9) break;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > 1000000) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - v) <=
            1e-10 * std::max(1.0, std::abs(v)))
            return Rational(h1, k1);
        const double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace

CanonicalMatch match_canonical(const StructureConstants& sc, const CanonicalPattern& p) {
    CanonicalMatch m;
    const std::size_t d = sc.dim;
    if (d != p.dimension())
        throw std::invalid_argument("basis has " + std::to_string(d) + " elements, " + p.name() +
                                    " has " + std::to_string(p.dimension()));
    struct Eq {
        std::size_t i, j, k;
        Rational ratio;  // pattern / computed
    };
    std::vector<Eq> eqs;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const RatFunc& c = sc.at(i, j, k);
                if (!c.is_rational()) {
                    m.reason = "structure constants depend on alpha";
                    return m;
                }
                const Rational pc = p.constant(i, j, k);
                const Rational cc = c.constant();
                if (pc.is_zero() != cc.is_zero()) {
                    m.reason = "zero pattern differs at bracket (" + std::to_string(i) + "," +
                               std::to_string(j) + ") component " + std::to_string(k);
                    return m;
                }
                if (!pc.is_zero()) eqs.push_back({i, j, k, pc / cc});
            }
    std::vector<double> logs(d, 0.0);
    if (!eqs.empty()) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(eqs.size()),
                                                  static_cast<Eigen::Index>(d));
        Eigen::VectorXd b(static_cast<Eigen::Index>(eqs.size()));
        for (std::size_t r = 0; r < eqs.size(); ++r) {
            const auto ri = static_cast<Eigen::Index>(r);
            a(ri, static_cast<Eigen::Index>(eqs[r].i)) += 1;
            a(ri, static_cast<Eigen::Index>(eqs[r].j)) += 1;
            a(ri, static_cast<Eigen::Index>(eqs[r].k)) -= 1;
            b(ri) = std::log(std::abs(eqs[r].ratio.to_double()));
        }
        const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
        if ((a * x - b).norm() > 1e-9 * std::max(1.0, b.norm())) {
            m.reason = "no rescaling matches the magnitudes";
            return m;
        }
        for (std::size_t k = 0; k < d; ++k) logs[k] = x(static_cast<Eigen::Index>(k));
    }
    std::vector<Rational> scale(d);
    for (std::size_t k = 0; k < d; ++k) {
        const auto r = rationalize(std::exp(logs[k]));
        if (!r) {
            m.reason = "rescaling is not rational";
            return m;
        }
        scale[k] = *r;
    }
    // signs: parity equations over GF(2)
    std::vector<std::vector<int>> g;
    for (const auto& e : eqs) {
        std::vector<int> row(d + 1, 0);
        row[e.i] ^= 1;
        row[e.j] ^= 1;
        row[e.k] ^= 1;
        row[d] = e.ratio.sign() < 0;
        g.push_back(row);
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < d && r < g.size(); ++c) {
        std::size_t p2 = r;
        while (p2 < g.size() && !g[p2][c]) ++p2;
        if (p2 == g.size()) continue;
        std::swap(g[r], g[p2]);
        for (std::size_t q = 0; q < g.size(); ++q)
            if (q != r && g[q][c])
                for (std::size_t x = 0; x <= d; ++x) g[q][x] ^= g[r][x];
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t q = r; q < g.size(); ++q)
        if (g[q][d]) {
            m.reason = "no sign assignment matches";
            return m;
        }
    for (std::size_t q = 0; q < pivots.size(); ++q)
        if (g[q][d]) scale[pivots[q]] = -scale[pivots[q]];
    // exact verification of every constant
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const Rational got = scale[i] * scale[j] / scale[k] * sc.at(i, j, k).constant();
                if (got != p.constant(i, j, k)) {
                    m.reason = "rescaled constants differ from " + p.name();
                    return m;
                }
            }
    m.matched = true;
    m.scale = std::move(scale);
    return m;
}

CanonicalMatch match_canonical(const std::vector<VectorField>& basis, const CanonicalPattern& p,
                               const std::vector<VectorField>& central) {
    if (basis.size() != p.dimension())
        throw std::invalid_argument("basis has " + std::to_string(basis.size()) + " elements, " +
                                    p.name() + " has " + std::to_string(p.dimension()));
    StructureConstants sc;
    try {
        sc = structure_constants(basis, central);
    } catch (const NotClosed& e) {
        CanonicalMatch m;
        m.reason = e.what();
        return m;
    }
    return match_canonical(sc, p);
}

}  // namespace liesym
