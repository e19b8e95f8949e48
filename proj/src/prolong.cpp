#include "liesym/prolong.hpp"

#include <cmath>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

namespace liesym {

Expr characteristic(const VectorField& f) {
    Expr w = f.eta - f.xi0 * Expr::u({kTime});
    for (int i = 1; i <= f.dimension(); ++i) {
        const auto v = static_cast<VarIndex>(i);
        w = w - f.xi[static_cast<std::size_t>(i - 1)] * Expr::u({v});
    }
    return normalize(w);
}

namespace {

Expr zeta(const VectorField& f, const Expr& w, const DerivIndex& j, const JetOptions& opts) {
    Expr z = total_derivative(w, j, opts);
    for (int k = 0; k <= f.dimension(); ++k)
        z = z + f.component(k) * Expr::u(j.with(static_cast<VarIndex>(k)));
    return normalize(z);
}

void multisets(int vars, int order, std::size_t start, std::vector<VarIndex>& cur,
               std::vector<DerivIndex>& out) {
    if (order == 0) {
        out.emplace_back(cur);
        return;
    }
    for (auto v = start; v <= static_cast<std::size_t>(vars); ++v) {
        cur.push_back(static_cast<VarIndex>(v));
        multisets(vars, order - 1, v, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::map<DerivIndex, Expr> prolong(const VectorField& f, int order, const JetOptions& opts) {
    if (order < 1) throw std::invalid_argument("prolongation order must be positive");
    const Expr w = characteristic(f);
    std::map<DerivIndex, Expr> out;
    for (int o = 1; o <= order; ++o) {
        std::vector<DerivIndex> idx;
        std::vector<VarIndex> cur;
        multisets(f.dimension(), o, 0, cur, idx);
        for (const auto& j : idx) out.emplace(j, zeta(f, w, j, opts));
    }
    return out;
}

SubstitutionRules heat_onshell_rules(int n) {
    Expr lap_u, lap_f;
    for (int i = 1; i <= n; ++i) {
        const auto v = static_cast<VarIndex>(i);
        lap_u = lap_u + Expr::u({v, v});
        lap_f = lap_f + Expr::F({v, v});
    }
    return {{Atom::jet(Field::U, {kTime}), normalize(lap_u)},
            {Atom::jet(Field::F, {kTime}), normalize(lap_f)}};
}

Expr determining_residual(const HeatEquation& eq, const VectorField& f, const JetOptions& opts) {
    if (eq.fractional())
        throw std::invalid_argument(
            "symbolic invariance is available for the integer regime only; fractional generators "
            "are checked numerically");
    if (f.dimension() != eq.n) throw DimensionMismatch("field and equation dimensions differ");
    if (!f.is_point_field()) throw std::invalid_argument("not a point vector field");
    const Expr w = characteristic(f);
    Expr r = zeta(f, w, {kTime}, opts);
    for (int i = 1; i <= eq.n; ++i) {
        const auto v = static_cast<VarIndex>(i);
        r = r - zeta(f, w, {v, v}, opts);
    }
    return normalize(substitute(r, heat_onshell_rules(eq.n), opts));
}

bool is_symmetry(const HeatEquation& eq, const VectorField& f) {
    return equals_zero(determining_residual(eq, f));
}

std::vector<Perturbation> negative_controls(const VectorField& f, unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(1, 4);
    std::uniform_int_distribution<int> kind(0, 2);
    std::vector<Perturbation> out;
    const Expr x1 = Expr::x(1);
    const Expr t = Expr::t();
    for (int i = 0; i < count; ++i) {
        const Rational c(num(rng), num(rng));
        const Expr ce(c);
        Perturbation p{f, {}};
        switch (kind(rng)) {
            case 0:
                p.field.eta = normalize(f.eta + ce * x1 * x1 * Expr::u());
                p.description = "eta += " + c.str() + "*x^2*u";
                break;
            case 1:
                p.field.xi[0] = normalize(f.xi[0] + ce * t);
                p.description = "xi1 += " + c.str() + "*t";
                break;
            default:
                p.field.xi0 = normalize(f.xi0 + ce * t);
                p.description = "xi0 += " + c.str() + "*t";
                break;
        }
        p.field.name = f.name + "~" + std::to_string(i + 1);
        out.push_back(std::move(p));
    }
    return out;
}

// --- flows ------------------------------------------------------------------

namespace {

double numeric(const Expr& e, double alpha_value, const std::string& what) {
    try {
        return eval_numeric(e, Binding{}, alpha_value);
    } catch (const EvalError&) {
        throw UnsupportedFlow(what + " coefficient is not constant");
    }
}

Expr d(const Expr& e, const Atom& a) { return partial_derivative(e, a); }
Atom xa(int i) { return Atom::variable(static_cast<VarIndex>(i)); }
const Atom kT = Atom::variable(kTime);
const Atom kU = Atom::jet(Field::U);

}  // namespace

PointTransformation dilation_flow(int n, double a, double b, double c) {
    PointTransformation tr;
    tr.name = "dilation";
    tr.n = n;
    tr.apply = [a, b, c](double eps, double& t, std::span<double> x, double& u) {
        t *= std::exp(a * eps);
        for (double& v : x) v *= std::exp(b * eps);
        u *= std::exp(c * eps);
    };
    return tr;
}

PointTransformation exponentiate(const NamedGenerator& g, double alpha_value) {
    const VectorField& f = g.field;
    const int n = f.dimension();
    const auto N = static_cast<std::size_t>(n);
    PointTransformation tr;
    tr.name = f.name;
    tr.n = n;
    auto expect = [&](const VectorField& model) {
        if (!equivalent(f, model))
            throw UnsupportedFlow(f.name + " does not have the " + class_name(g.cls) + " form");
    };

    switch (g.cls) {
        case GenClass::SpaceTranslation: {
            std::vector<double> v(N);
            for (std::size_t i = 0; i < N; ++i) v[i] = numeric(f.xi[i], alpha_value, "translation");
            expect([&] {
                auto m = VectorField::zero(n);
                m.xi = f.xi;
                return m;
            }());
            tr.apply = [v](double eps, double&, std::span<double> x, double&) {
                for (std::size_t i = 0; i < v.size(); ++i) x[i] += eps * v[i];
            };
            return tr;
        }
        case GenClass::TimeTranslation: {
            const double tau = numeric(f.xi0, alpha_value, "time translation");
            auto m = VectorField::zero(n);
            m.xi0 = f.xi0;
            expect(m);
            tr.apply = [tau](double eps, double& t, std::span<double>, double&) { t += eps * tau; };
            return tr;
        }
        case GenClass::Rotation: {
            Eigen::MatrixXd a(n, n);
            auto m = VectorField::zero(n);
            for (int i = 0; i < n; ++i) {
                Expr s;
                for (int j = 0; j < n; ++j) {
                    const Expr c = d(f.xi[static_cast<std::size_t>(i)], xa(j + 1));
                    a(i, j) = numeric(c, alpha_value, "rotation");
                    s = s + c * Expr::x(static_cast<VarIndex>(j + 1));
                }
                m.xi[static_cast<std::size_t>(i)] = s;
            }
            expect(m);
            if ((a + a.transpose()).norm() > 1e-12) throw UnsupportedFlow("not antisymmetric");
            tr.apply = [a](double eps, double&, std::span<double> x, double&) {
                const Eigen::MatrixXd r = (eps * a).exp();
                const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), a.rows());
                const Eigen::VectorXd out = r * v;
                for (Eigen::Index i = 0; i < out.size(); ++i) x[static_cast<std::size_t>(i)] = out(i);
            };
            return tr;
        }
        case GenClass::Dilation:
        case GenClass::Homogeneity: {
            const Expr ae = d(f.xi0, kT);
            const Expr be = n > 0 ? d(f.xi[0], xa(1)) : Expr();
            const Expr ce = d(f.eta, kU);
            auto m = VectorField::zero(n);
            m.xi0 = ae * Expr::t();
            for (int i = 1; i <= n; ++i) m.xi[static_cast<std::size_t>(i - 1)] = be * Expr::x(static_cast<VarIndex>(i));
            m.eta = ce * Expr::u();
            expect(m);
            auto tr2 = dilation_flow(n, numeric(ae, alpha_value, "dilation"),
                                     numeric(be, alpha_value, "dilation"),
                                     numeric(ce, alpha_value, "dilation"));
            tr2.name = f.name;
            return tr2;
        }
        case GenClass::Solution: {
            int k = -1;
            for (int i = 0; i < n; ++i)
                if (!equals_zero(f.xi[static_cast<std::size_t>(i)])) k = i;
            if (k < 0) throw UnsupportedFlow(f.name + " has no spatial direction");
            const Expr se = d(f.xi[static_cast<std::size_t>(k)], kT) * Expr(Rational(1, 2));
            auto m = VectorField::zero(n);
            m.xi[static_cast<std::size_t>(k)] = Expr(2) * se * Expr::t();
            m.eta = -(se * Expr::x(static_cast<VarIndex>(k + 1)) * Expr::u());
            expect(m);
            const double s = numeric(se, alpha_value, "Galilean");
            const auto K = static_cast<std::size_t>(k);
            tr.apply = [s, K](double eps, double& t, std::span<double> x, double& u) {
                u *= std::exp(-s * eps * x[K] - s * s * eps * eps * t);
                x[K] += 2 * s * eps * t;
            };
            return tr;
        }
        case GenClass::Projective: {
            auto m = VectorField::zero(n);
            m.xi0 = Expr(4) * Expr::t() * Expr::t();
            Expr r2;
            for (int i = 1; i <= n; ++i) {
                const Expr xi = Expr::x(static_cast<VarIndex>(i));
                m.xi[static_cast<std::size_t>(i - 1)] = Expr(4) * Expr::t() * xi;
                r2 = r2 + xi * xi;
            }
            m.eta = -(Expr::u() * (Expr(2 * n) * Expr::t() + r2));
            expect(m);
            tr.apply = [n](double eps, double& t, std::span<double> x, double& u) {
                const double den = 1 - 4 * eps * t;
                if (!(den > 0)) {
                    u = std::nan("");
                    return;
                }
                double s2 = 0;
                for (double v : x) s2 += v * v;
                u *= std::pow(den, 0.5 * n) * std::exp(-eps * s2 / den);
                t /= den;
                for (double& v : x) v /= den;
            };
            return tr;
        }
        case GenClass::Infinite: break;
    }
    throw UnsupportedFlow(f.name + ": the infinite family has no single flow");
}

SolutionFn transformed_solution(const PointTransformation& tr, const SolutionFn& u, double eps) {
    return [tr, u, eps](double tt, std::span<const double> xx) {
        double t = tt, dummy = 0.0;
        std::vector<double> x(xx.begin(), xx.end());
        tr.apply(-eps, t, x, dummy);
        double v = u(t, x);
        tr.apply(eps, t, x, v);
        return v;
    };
}

double heat_fd_residual(const SolutionFn& u, int n, double t, std::span<const double> x,
                        double h) {
    std::vector<double> p(x.begin(), x.end());
    auto at_t = [&](double s) { return u(s, p); };
    const double ut =
        (-at_t(t + 2 * h) + 8 * at_t(t + h) - 8 * at_t(t - h) + at_t(t - 2 * h)) / (12 * h);
    const double u0 = u(t, p);
    double lap = 0;
    for (int i = 0; i < n; ++i) {
        const auto I = static_cast<std::size_t>(i);
        auto at_x = [&](double dx) {
            std::vector<double> q = p;
            q[I] += dx;
            return u(t, q);
        };
        lap += (-at_x(2 * h) + 16 * at_x(h) - 30 * u0 + 16 * at_x(-h) - at_x(-2 * h)) / (12 * h * h);
    }
    return std::abs(ut - lap) / std::max(1.0, std::abs(ut) + std::abs(lap));
}

double transport_residual(const HeatEquation& eq, const PointTransformation& tr,
                          const SolutionFn& u, double eps, const TransportWindow& w) {
    if (eq.fractional()) throw std::invalid_argument("transport check is for the integer regime");
    const SolutionFn v = transformed_solution(tr, u, eps);
    std::vector<double> x(static_cast<std::size_t>(eq.n), 0.3);
    double worst = 0;
    const double m = static_cast<double>(w.points - 1);
    for (std::size_t i = 0; i < w.points; ++i)
        for (std::size_t j = 0; j < w.points; ++j) {
            const double t = w.t0 + (w.t1 - w.t0) * static_cast<double>(i) / m;
            x[0] = w.x0 + (w.x1 - w.x0) * static_cast<double>(j) / m;
            const double r = heat_fd_residual(v, eq.n, t, x, w.h);
            if (!std::isfinite(r)) return r;
            worst = std::max(worst, r);
        }
    return worst;
}

}  // namespace liesym
