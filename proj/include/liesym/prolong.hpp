#pragma once

// Prolongation, symbolic invariance and the finite flows of catalog
// generators.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "liesym/heat_catalog.hpp"

namespace liesym {

/// Characteristic W = eta - xi0 u_t - sum_i xi^i u_{x_i}.
Expr characteristic(const VectorField& f);

/// Coefficients zeta^J of the prolongation for every derivative index J of
/// order 1..order: zeta^J = D_J W + sum_k xi^k u_{J,k}.
std::map<DerivIndex, Expr> prolong(const VectorField& f, int order = 2,
                                   const JetOptions& opts = {});

/// On-shell rules u_t -> Laplacian(u) and F_t -> Laplacian(F).
SubstitutionRules heat_onshell_rules(int n);

/// pr^(2) f applied to u_t - Laplacian(u), reduced on solutions. Zero iff f is
/// a point symmetry. Integer regime only: fractional generators involve the
/// nonlocal derivative and are checked numerically.
Expr determining_residual(const HeatEquation& eq, const VectorField& f,
                          const JetOptions& opts = {});
bool is_symmetry(const HeatEquation& eq, const VectorField& f);

struct Perturbation {
    VectorField field;
    std::string description;
};

/// Deterministic (seeded) perturbations of a generator that break the
/// symmetry: an added x^2 d_u term, a t-dependent d_x term, or a rescaled
/// projective time coefficient.
std::vector<Perturbation> negative_controls(const VectorField& f, unsigned seed, int count = 3);

/// One-parameter flow of a point field. The (t, x) part never depends on u.
struct PointTransformation {
    std::string name;
    int n = 1;
    std::function<void(double eps, double& t, std::span<double> x, double& u)> apply;
};

struct UnsupportedFlow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Closed-form flow for a catalog generator; alpha-dependent coefficients
/// are evaluated at `alpha_value`. Throws UnsupportedFlow for the infinite
/// family and for fields outside the known families.
PointTransformation exponentiate(const NamedGenerator& g, double alpha_value = 0.5);

/// t -> e^(a eps) t, x -> e^(b eps) x, u -> e^(c eps) u.
PointTransformation dilation_flow(int n, double a, double b, double c);

using SolutionFn = std::function<double(double t, std::span<const double> x)>;

/// u~(t~, x~) where (t~, x~, u~) is the image of (t, x, u(t, x)).
SolutionFn transformed_solution(const PointTransformation& tr, const SolutionFn& u, double eps);

/// u_t - Laplacian(u) with fourth-order central differences of step h,
/// divided by max(1, |u_t| + |Laplacian(u)|).
double heat_fd_residual(const SolutionFn& u, int n, double t, std::span<const double> x,
                        double h = 1e-2);

struct TransportWindow {
    double t0 = 0.5, t1 = 1.5;
    double x0 = -1.0, x1 = 1.0;
    std::size_t points = 200;  // per direction
    double h = 1e-2;
};

/// Largest relative finite-difference residual of the transported solution
/// over a points x points grid in (t, x_1); other coordinates are fixed at 0.3.
double transport_residual(const HeatEquation& eq, const PointTransformation& tr,
                          const SolutionFn& u, double eps, const TransportWindow& w = {});

}  // namespace liesym
