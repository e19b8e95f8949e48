#pragma once

// Numerical Riemann-Liouville calculus on uniform grids.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "liesym/heat_catalog.hpp"
#include "liesym/special.hpp"

namespace liesym {

struct PointTransformation;

/// w_0 = 1, w_j = w_{j-1} (1 - (alpha+1)/j), j = 0..count. alpha in (0, 1].
std::vector<double> gl_weights(double alpha, std::size_t count);

enum class Scheme { GL, L1 };
enum class Direction { Left, Right };

Scheme parse_scheme(const std::string& s);

struct FracDerivSpec {
    double alpha = 0.5;
    Scheme scheme = Scheme::GL;
    Direction direction = Direction::Left;

    int m() const { return 1; }  // smallest integer >= alpha for alpha in (0, 1)
};

struct Axis {
    std::size_t count = 0;
    double origin = 0.0;
    double step = 0.0;

    double at(std::size_t i) const { return origin + step * static_cast<double>(i); }
    double back() const { return at(count - 1); }
    static Axis span(double a, double b, std::size_t count);
};

/// Samples on a tensor grid: row = time index, column = flattened spatial
/// index (last axis fastest).
struct GridFunction {
    Axis t;
    std::vector<Axis> space;
    Eigen::MatrixXd values;
    /// The sample at t = 0 (resp. t = T) stands in for a t^(alpha-1)-type
    /// singularity and is stored as 0.
    bool singular_start = false;
    bool singular_end = false;

    std::size_t spatial_points() const;
    std::vector<double> spatial_point(std::size_t col) const;

    using Fn = std::function<double(double t, std::span<const double> x)>;
    /// Non-finite values on the first or last time row become 0 and set the
    /// corresponding singular flag; non-finite values elsewhere throw.
    static GridFunction sample(const Axis& t, const std::vector<Axis>& space, const Fn& f);
    static GridFunction sample_t(const Axis& t, const std::function<double(double)>& f);

    /// Linear interpolation in t for a function of t only.
    double interpolate_t(double t) const;
};

struct GridError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Left RL derivative from t = 0 (GL or L1), with one starting weight on
/// u(t_1) when `singular_start` is set so that t^(alpha-1) is reproduced
/// exactly.
GridFunction rl_derivative_grid(const GridFunction& u, const FracDerivSpec& spec);
/// Right RL derivative towards t = T, the mirror image of the left one.
GridFunction right_rl_derivative_grid(const GridFunction& u, const FracDerivSpec& spec);

struct ResidualReport {
    double max_residual = 0.0;       // over t > 0 and interior spatial points
    double interior_max = 0.0;       // additionally t >= t_cut
    double t_cut = 0.0;
};

/// D_t^alpha u - Laplacian(u) with a second-order central Laplacian.
/// `tcut_fraction` is relative to T.
ResidualReport residual_on_grid(const HeatEquation& eq, const GridFunction& u, double alpha,
                                Scheme scheme = Scheme::GL, double tcut_fraction = 0.1);

struct InvarianceConfig {
    std::size_t time_points = 1001;  // including t = 0
    double T = 1.0;
    std::size_t space_points = 64;   // per axis
    double x_min = -3.141592653589793;
    double x_max = 3.141592653589793;
    Scheme scheme = Scheme::GL;
    double tcut_fraction = 0.1;
};

struct InvarianceReport {
    double base_residual = 0.0;         // interior max, untransformed
    double transformed_residual = 0.0;  // interior max, transformed
    bool pass = false;
    /// Grid points whose preimage lies outside the sampled window.
    std::size_t outside_window = 0;
    std::string message;
};

/// Transforms `source` by the flow at parameter eps, resamples on the same
/// grid through the inverse base map and compares interior residuals: pass
/// iff the transformed residual is at most 3 times the original one.
InvarianceReport invariance_check(const HeatEquation& eq, const GridFunction::Fn& source,
                                  const PointTransformation& transform, double eps, double alpha,
                                  const InvarianceConfig& cfg = {});

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre01(std::size_t k, std::vector<double>& nodes, std::vector<double>& weights);

/// Quadrature rule on [a, b] graded towards both ends: the half next to a
/// uses s -> s^pa, the half next to b uses s -> s^pb.
void graded_rule(double a, double b, double pa, double pb, std::size_t k,
                 std::vector<double>& nodes, std::vector<double>& weights);

using ScalarFn = std::function<double(double)>;

/// J(f, g)(t) = 1/Gamma(1-alpha) int_0^t int_t^T f(tau) g(mu) (mu - tau)^(-alpha) dmu dtau,
/// tensor Gauss-Legendre with 2k nodes per direction on graded substitutions
/// (relative error about 1e-5 or better at k = 64 for smooth data).
double j_quadrature(const ScalarFn& f, const ScalarFn& g, double alpha, double t, double T,
                    std::size_t k = 64);
double j_quadrature(const GridFunction& f, const GridFunction& g, double alpha, double t,
                    double T, std::size_t k = 64);

/// _0 I_t^beta f and _t I_T^beta g, beta in (0, 1].
double left_fractional_integral(const ScalarFn& f, double beta, double t, std::size_t k = 64);
double right_fractional_integral(const ScalarFn& g, double beta, double t, double T,
                                 std::size_t k = 64);

/// RL power rule: D^alpha t^gamma = Gamma(gamma+1)/Gamma(gamma+1-alpha) t^(gamma-alpha).
double rl_power_rule(double gamma_exp, double alpha, double t);

// --- grid I/O -------------------------------------------------------------

/// CSV "t,x,value" for a function of (t, x); spatial columns x1..xn.
void write_csv(std::ostream& os, const GridFunction& g);
GridFunction read_csv(std::istream& is);

/// "FHGRID1\0", uint32 ndims, per axis (uint64 count, double origin,
/// double step) with t first, then row-major little-endian doubles.
void write_binary(std::ostream& os, const GridFunction& g);
GridFunction read_binary(std::istream& is);

struct GridIOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace liesym
