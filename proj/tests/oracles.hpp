#pragma once

// Independent numeric oracles shared by the unit and acceptance tests. They
// only evaluate expressions at points and never use the symbolic calculus
// under test.

#include <cmath>
#include <random>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/vector_field.hpp"

namespace oracle {

using namespace liesym;

/// Coordinates (t, x_1..x_n, u).
using Point = std::vector<double>;

/// F(t, x) = exp(0.3 t + sum_i 0.1 (i+1) x_i), phi(t, x) = exp(-0.2 t + sum_i 0.15 i x_i);
/// derivatives are products of the exponent coefficients.
inline double exp_coeff_F(VarIndex v) { return v == 0 ? 0.3 : 0.1 * (v + 1); }
inline double exp_coeff_phi(VarIndex v) { return v == 0 ? -0.2 : 0.15 * v; }

inline Binding bind(const Point& p) {
    Binding b;
    const auto n = p.size() - 2;
    for (std::size_t i = 0; i <= n; ++i) b.set_var(static_cast<VarIndex>(i), p[i]);
    b.set(Atom::jet(Field::U), p[n + 1]);
    auto make = [](double (*coef)(VarIndex)) {
        return [coef](const DerivIndex& idx, std::span<const double> pt) {
            double s = 0;
            for (std::size_t i = 0; i < pt.size(); ++i)
                s += coef(static_cast<VarIndex>(i)) * pt[i];
            double v = std::exp(s);
            for (VarIndex w : idx.vars()) v *= coef(w);
            return v;
        };
    };
    b.functions[Field::F] = make(&exp_coeff_F);
    b.functions[Field::Phi] = make(&exp_coeff_phi);
    return b;
}

inline double component(const VectorField& f, int k, const Point& p, double alpha) {
    return eval_numeric(f.component(k), bind(p), alpha);
}

/// [A, B]^k = sum_m A^m d_m B^k - B^m d_m A^k with central differences.
inline std::vector<double> numeric_bracket(const VectorField& a, const VectorField& b,
                                           const Point& p, double alpha, double h = 1e-5) {
    const int nc = a.num_components();
    std::vector<double> av(static_cast<std::size_t>(nc)), bv(static_cast<std::size_t>(nc));
    for (int m = 0; m < nc; ++m) {
        av[static_cast<std::size_t>(m)] = component(a, m, p, alpha);
        bv[static_cast<std::size_t>(m)] = component(b, m, p, alpha);
    }
    std::vector<double> out(static_cast<std::size_t>(nc), 0.0);
    for (int m = 0; m < nc; ++m) {
        Point pp = p, pm = p;
        pp[static_cast<std::size_t>(m)] += h;
        pm[static_cast<std::size_t>(m)] -= h;
        for (int k = 0; k < nc; ++k) {
            const double dB = (component(b, k, pp, alpha) - component(b, k, pm, alpha)) / (2 * h);
            const double dA = (component(a, k, pp, alpha) - component(a, k, pm, alpha)) / (2 * h);
            out[static_cast<std::size_t>(k)] +=
                av[static_cast<std::size_t>(m)] * dB - bv[static_cast<std::size_t>(m)] * dA;
        }
    }
    return out;
}

/// Largest deviation between the numeric bracket [a, b] and
/// sum_k coeffs[k] basis[k] over a few random points (relative to scale 1).
inline double bracket_mismatch(const VectorField& a, const VectorField& b,
                               const std::vector<double>& coeffs,
                               const std::vector<VectorField>& basis, double alpha,
                               unsigned seed = 7, int points = 4) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-0.9, 0.9);
    double worst = 0;
    for (int q = 0; q < points; ++q) {
        Point p(static_cast<std::size_t>(a.num_components()));
        for (auto& v : p) v = d(rng);
        p[0] = 0.2 + std::abs(p[0]);
        const auto lhs = numeric_bracket(a, b, p, alpha);
        for (int k = 0; k < a.num_components(); ++k) {
            double rhs = 0;
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (coeffs[j] != 0) rhs += coeffs[j] * component(basis[j], k, p, alpha);
            const double scale = std::max(1.0, std::abs(rhs));
            worst = std::max(worst, std::abs(lhs[static_cast<std::size_t>(k)] - rhs) / scale);
        }
    }
    return worst;
}

/// Exact exponentials: u = F = exp(sum k_i x_i + |k|^2 t) solve u_t = Laplacian(u),
/// phi = exp(sum m_i x_i - |m|^2 t) solves phi_t = -Laplacian(phi).
inline Binding bind_solutions(int n, const Point& tx) {
    auto k = [](VarIndex v) { return 0.3 + 0.2 * v; };
    auto m = [](VarIndex v) { return 0.25 - 0.1 * v; };
    auto make = [n](auto coef, double sign) {
        return [n, coef, sign](const DerivIndex& idx, std::span<const double> pt) {
            double norm2 = 0, s = 0;
            for (int i = 1; i <= n; ++i) {
                const auto v = static_cast<VarIndex>(i);
                norm2 += coef(v) * coef(v);
                s += coef(v) * pt[static_cast<std::size_t>(i)];
            }
            s += sign * norm2 * pt[0];
            double val = std::exp(s);
            for (VarIndex w : idx.vars()) val *= w == 0 ? sign * norm2 : coef(w);
            return val;
        };
    };
    Binding b;
    for (std::size_t i = 0; i < tx.size(); ++i) b.set_var(static_cast<VarIndex>(i), tx[i]);
    b.functions[Field::U] = make(k, 1.0);
    b.functions[Field::F] = make(k, 1.0);
    b.functions[Field::Phi] = make(m, -1.0);
    return b;
}

/// D_t C^t + sum_i D_i C^i by central differences along the exact solutions,
/// relative to the size of the differenced components.
inline double numeric_divergence(const Expr& Ct, const std::vector<Expr>& Cx, int n, const Point& tx,
                                 double h = 1e-4) {
    auto at = [&](const Expr& e, const Point& p) { return eval_numeric(e, bind_solutions(n, p)); };
    double div = 0, scale = 1e-300;
    for (int i = 0; i <= n; ++i) {
        const Expr& c = i == 0 ? Ct : Cx[static_cast<std::size_t>(i - 1)];
        Point pp = tx, pm = tx;
        pp[static_cast<std::size_t>(i)] += h;
        pm[static_cast<std::size_t>(i)] -= h;
        const double a = at(c, pp), b = at(c, pm);
        div += (a - b) / (2 * h);
        scale = std::max(scale, std::max(std::abs(a), std::abs(b)));
    }
    return std::abs(div) / std::max(scale, 1.0);
}

}  // namespace oracle
