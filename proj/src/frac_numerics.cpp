#include "liesym/frac_numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "liesym/prolong.hpp"

namespace liesym {

std::vector<double> gl_weights(double alpha, std::size_t count) {
    if (!(alpha > 0 && alpha <= 1)) throw std::invalid_argument("alpha must lie in (0, 1]");
    std::vector<double> w(count + 1);
    w[0] = 1.0;
    for (std::size_t j = 1; j <= count; ++j)
        w[j] = w[j - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(j));
    return w;
}

Scheme parse_scheme(const std::string& s) {
    if (s == "gl") return Scheme::GL;
    if (s == "l1") return Scheme::L1;
    throw std::invalid_argument("unknown scheme '" + s + "' (expected gl or l1)");
}

Axis Axis::span(double a, double b, std::size_t count) {
    if (count < 2) throw GridError("an axis needs at least two points");
    if (!(b > a)) throw GridError("axis end must exceed its start");
    return {count, a, (b - a) / static_cast<double>(count - 1)};
}

std::size_t GridFunction::spatial_points() const {
    std::size_t p = 1;
    for (const auto& a : space) p *= a.count;
    return p;
}

std::vector<double> GridFunction::spatial_point(std::size_t col) const {
    std::vector<double> x(space.size());
    for (std::size_t d = space.size(); d-- > 0;) {
        x[d] = space[d].at(col % space[d].count);
        col /= space[d].count;
    }
    return x;
}

namespace {

// Non-finite values on the boundary rows become a singular flag.
void absorb_singular_rows(GridFunction& g) {
    const auto rows = g.values.rows();
    for (Eigen::Index r = 0; r < rows; ++r) {
        bool bad = false;
        for (Eigen::Index c = 0; c < g.values.cols(); ++c)
            if (!std::isfinite(g.values(r, c))) {
                bad = true;
                g.values(r, c) = 0.0;
            }
        if (!bad) continue;
        if (r == 0) g.singular_start = true;
        else if (r == rows - 1) g.singular_end = true;
        else
            throw GridError("non-finite sample at interior time t = " +
                            std::to_string(g.t.at(static_cast<std::size_t>(r))));
    }
}

}  // namespace

GridFunction GridFunction::sample(const Axis& t, const std::vector<Axis>& space, const Fn& f) {
    GridFunction g;
    g.t = t;
    g.space = space;
    const auto cols = g.spatial_points();
    g.values.resize(static_cast<Eigen::Index>(t.count), static_cast<Eigen::Index>(cols));
    std::vector<std::vector<double>> points(cols);
    for (std::size_t c = 0; c < cols; ++c) points[c] = g.spatial_point(c);
    for (std::size_t i = 0; i < t.count; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                f(t.at(i), points[c]);
    absorb_singular_rows(g);
    return g;
}

GridFunction GridFunction::sample_t(const Axis& t, const std::function<double(double)>& f) {
    return sample(t, {}, [&](double s, std::span<const double>) { return f(s); });
}

double GridFunction::interpolate_t(double s) const {
    if (values.cols() != 1) throw GridError("interpolate_t needs a function of t only");
    const double lo = t.origin, hi = t.back();
    if (s < lo - 1e-12 * std::abs(hi - lo) || s > hi + 1e-12 * std::abs(hi - lo))
        throw GridError("interpolation point outside the time axis");
    const double pos = std::clamp((s - lo) / t.step, 0.0, static_cast<double>(t.count - 1));
    const auto i = std::min(static_cast<std::size_t>(pos), t.count - 2);
    const double w = pos - static_cast<double>(i);
    return (1 - w) * values(static_cast<Eigen::Index>(i), 0) +
           w * values(static_cast<Eigen::Index>(i + 1), 0);
}

namespace {

// Left RL derivative of every column; rows are time levels.
Eigen::MatrixXd left_scheme(const Eigen::MatrixXd& v, double alpha, double h, Scheme scheme) {
    const auto n = v.rows();
    Eigen::MatrixXd toeplitz = Eigen::MatrixXd::Zero(n, n);
    if (scheme == Scheme::GL) {
        const auto w = gl_weights(alpha, static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j <= i; ++j) toeplitz(i, j) = w[static_cast<std::size_t>(i - j)];
        Eigen::MatrixXd out = toeplitz.triangularView<Eigen::Lower>() * v;
        return out * std::pow(h, -alpha);
    }
    // L1 for the Caputo part: sum_k b_k (u_{i-k} - u_{i-k-1}), then the RL
    // boundary term u_0 t^(-alpha) / Gamma(1 - alpha).
    std::vector<double> b(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < b.size(); ++k)
        b[k] = std::pow(static_cast<double>(k + 1), 1 - alpha) -
               std::pow(static_cast<double>(k), 1 - alpha);
    // coefficient of u_j in row i: b_{i-j} - b_{i-j-1} (with b_{-1} = 0), u_0 gets -b_{i-1}
    for (Eigen::Index i = 1; i < n; ++i) {
        for (Eigen::Index j = 1; j <= i; ++j) {
            const auto k = static_cast<std::size_t>(i - j);
            toeplitz(i, j) = b[k] - (k > 0 ? b[k - 1] : 0.0);
        }
        toeplitz(i, 0) = -b[static_cast<std::size_t>(i - 1)];
    }
    const double scale = std::pow(h, -alpha) * rgamma(2 - alpha);
    Eigen::MatrixXd out = (toeplitz.triangularView<Eigen::Lower>() * v) * scale;
    const double g1 = rgamma(1 - alpha);
    for (Eigen::Index i = 1; i < n; ++i)
        out.row(i) += v.row(0) * (std::pow(static_cast<double>(i) * h, -alpha) * g1);
    out.row(0).setZero();
    return out;
}

Eigen::MatrixXd left_derivative(const Eigen::MatrixXd& v, double alpha, double h, Scheme scheme,
                                bool singular) {
    Eigen::MatrixXd out = left_scheme(v, alpha, h, scheme);
    if (singular && v.rows() > 1) {
        // starting weight: the scheme applied to t^(alpha-1) (stored 0 at t = 0)
        // should give 0; subtract its error times the t^(alpha-1) content of u(t_1)
        Eigen::MatrixXd model(v.rows(), 1);
        model(0, 0) = 0.0;
        for (Eigen::Index m = 1; m < v.rows(); ++m)
            model(m, 0) = std::pow(static_cast<double>(m) * h, alpha - 1);
        const Eigen::MatrixXd err = left_scheme(model, alpha, h, scheme);
        const Eigen::RowVectorXd content = v.row(1) / model(1, 0);
        out -= err * content;
    }
    return out;
}

void check_spec(const GridFunction& u, const FracDerivSpec& spec) {
    if (!(spec.alpha > 0 && spec.alpha <= 1)) throw std::invalid_argument("alpha must lie in (0, 1]");
    if (u.t.count < 2 || static_cast<std::size_t>(u.values.rows()) != u.t.count)
        throw GridError("time axis and values disagree");
}

}  // namespace

GridFunction rl_derivative_grid(const GridFunction& u, const FracDerivSpec& spec) {
    if (spec.direction == Direction::Right) {
        FracDerivSpec left = spec;
        left.direction = Direction::Left;
        return right_rl_derivative_grid(u, left);
    }
    check_spec(u, spec);
    GridFunction out = u;
    out.singular_start = out.singular_end = false;
    out.values = left_derivative(u.values, spec.alpha, u.t.step, spec.scheme, u.singular_start);
    return out;
}

GridFunction right_rl_derivative_grid(const GridFunction& u, const FracDerivSpec& spec) {
    check_spec(u, spec);
    // mirror t -> T - t; the right derivative is the left one of the mirror
    const Eigen::MatrixXd rev = u.values.colwise().reverse();
    GridFunction out = u;
    out.singular_start = out.singular_end = false;
    out.values =
        left_derivative(rev, spec.alpha, u.t.step, spec.scheme, u.singular_end).colwise().reverse();
    return out;
}

ResidualReport residual_on_grid(const HeatEquation& eq, const GridFunction& u, double alpha,
                                Scheme scheme, double tcut_fraction) {
    if (static_cast<int>(u.space.size()) != eq.n)
        throw GridError("grid has " + std::to_string(u.space.size()) + " spatial axes, equation has " +
                        std::to_string(eq.n));
    for (const auto& a : u.space)
        if (a.count < 16) throw GridError("at least 16 points per spatial axis are required");
    const double a = eq.fractional() ? alpha : 1.0;
    const GridFunction d = rl_derivative_grid(u, {a, scheme, Direction::Left});

    const std::size_t nd = u.space.size();
    std::vector<std::size_t> stride(nd, 1);
    for (std::size_t k = nd; k-- > 1;) stride[k - 1] = stride[k] * u.space[k].count;
    const std::size_t cols = u.spatial_points();
    std::vector<std::size_t> interior;
    for (std::size_t c = 0; c < cols; ++c) {
        bool inner = true;
        for (std::size_t k = 0; k < nd && inner; ++k) {
            const std::size_t idx = (c / stride[k]) % u.space[k].count;
            inner = idx > 0 && idx + 1 < u.space[k].count;
        }
        if (inner) interior.push_back(c);
    }

    ResidualReport rep;
    rep.t_cut = u.t.origin + tcut_fraction * (u.t.back() - u.t.origin);
    for (std::size_t i = 1; i < u.t.count; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        const bool late = u.t.at(i) >= rep.t_cut - 1e-12;
        for (std::size_t c : interior) {
            double lap = 0;
            const auto ci = static_cast<Eigen::Index>(c);
            for (std::size_t k = 0; k < nd; ++k) {
                const auto s = static_cast<Eigen::Index>(stride[k]);
                const double dx = u.space[k].step;
                lap += (u.values(r, ci + s) - 2 * u.values(r, ci) + u.values(r, ci - s)) / (dx * dx);
            }
            const double res = std::abs(d.values(r, ci) - lap);
            rep.max_residual = std::max(rep.max_residual, res);
            if (late) rep.interior_max = std::max(rep.interior_max, res);
        }
    }
    return rep;
}

InvarianceReport invariance_check(const HeatEquation& eq, const GridFunction::Fn& source,
                                  const PointTransformation& transform, double eps, double alpha,
                                  const InvarianceConfig& cfg) {
    if (transform.n != eq.n) throw std::invalid_argument("transformation dimension mismatch");
    const Axis t = Axis::span(0.0, cfg.T, cfg.time_points);
    const std::vector<Axis> space(static_cast<std::size_t>(eq.n),
                                  Axis::span(cfg.x_min, cfg.x_max, cfg.space_points));
    InvarianceReport rep;
    const GridFunction base = GridFunction::sample(t, space, source);
    rep.base_residual = residual_on_grid(eq, base, alpha, cfg.scheme, cfg.tcut_fraction).interior_max;

    // preimages through the inverse flow
    bool below_zero = false, origin_moves = false;
    const auto inside = [&](double tt, std::span<const double> x) {
        if (tt < -1e-12 || tt > cfg.T * (1 + 1e-12)) return false;
        for (double v : x)
            if (v < cfg.x_min - 1e-12 || v > cfg.x_max + 1e-12) return false;
        return true;
    };
    const GridFunction::Fn transformed = [&](double tt, std::span<const double> xx) {
        double t0 = tt, u0 = 0.0;
        std::vector<double> x0(xx.begin(), xx.end());
        transform.apply(-eps, t0, x0, u0);
        if (!inside(t0, x0)) ++rep.outside_window;
        if (t0 < -1e-12) {
            below_zero = true;
            return 0.0;
        }
        if (tt == 0.0 && std::abs(t0) > 1e-12) origin_moves = true;
        double t1 = t0, u1 = source(t0, x0);
        std::vector<double> x1 = x0;
        transform.apply(eps, t1, x1, u1);
        return u1;
    };
    GridFunction image;
    try {
        image = GridFunction::sample(t, space, transformed);
    } catch (const GridError& e) {
        rep.message = std::string("transformed samples are not usable: ") + e.what();
        return rep;
    }
    if (below_zero) {
        rep.message = "the flow maps grid points to t < 0";
        return rep;
    }
    if (origin_moves) {
        rep.message = "the flow moves t = 0 off the initial line";
        return rep;
    }
    rep.transformed_residual =
        residual_on_grid(eq, image, alpha, cfg.scheme, cfg.tcut_fraction).interior_max;
    rep.pass = rep.transformed_residual <= 3.0 * rep.base_residual;
    std::ostringstream msg;
    msg << std::setprecision(4) << "residual " << rep.transformed_residual << " vs base "
        << rep.base_residual << (rep.pass ? " (within 3x)" : " (exceeds 3x)");
    rep.message = msg.str();
    return rep;
}

// --- quadrature -----------------------------------------------------------

void gauss_legendre01(std::size_t k, std::vector<double>& nodes, std::vector<double>& weights) {
    if (k == 0) throw std::invalid_argument("quadrature needs at least one node");
    // Newton on P_k with the standard asymptotic initial guess
    nodes.assign(k, 0.0);
    weights.assign(k, 0.0);
    const double pi = 3.141592653589793238462643383279502884;
    for (std::size_t i = 0; i < (k + 1) / 2; ++i) {
        double z = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(k) + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (std::size_t j = 2; j <= k; ++j) {
                const double p2 =
                    ((2.0 * static_cast<double>(j) - 1) * z * p1 - (static_cast<double>(j) - 1) * p0) /
                    static_cast<double>(j);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(k) * (z * p1 - p0) / (z * z - 1);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1 - z * z) * dp * dp);
        nodes[i] = 0.5 * (1 - z);
        nodes[k - 1 - i] = 0.5 * (1 + z);
        weights[i] = weights[k - 1 - i] = 0.5 * w;
    }
}

namespace {

struct Graded {
    std::vector<double> nodes, weights;
    std::vector<double> from_a, from_b;  // accurate node - a and b - node
};

Graded graded(double a, double b, double pa, double pb, std::size_t k) {
    std::vector<double> s, w;
    gauss_legendre01(k, s, w);
    Graded g;
    const double m = 0.5 * (a + b);
    for (std::size_t i = 0; i < k; ++i) {
        const double off = (m - a) * std::pow(s[i], pa);
        g.nodes.push_back(a + off);
        g.from_a.push_back(off);
        g.from_b.push_back((b - m) + ((m - a) - off));
        g.weights.push_back(w[i] * (m - a) * pa * std::pow(s[i], pa - 1));
    }
    for (std::size_t i = 0; i < k; ++i) {
        const double off = (b - m) * std::pow(s[i], pb);
        g.nodes.push_back(b - off);
        g.from_b.push_back(off);
        g.from_a.push_back((m - a) + ((b - m) - off));
        g.weights.push_back(w[i] * (b - m) * pb * std::pow(s[i], pb - 1));
    }
    return g;
}

}  // namespace

void graded_rule(double a, double b, double pa, double pb, std::size_t k,
                 std::vector<double>& nodes, std::vector<double>& weights) {
    Graded g = graded(a, b, pa, pb, k);
    nodes = std::move(g.nodes);
    weights = std::move(g.weights);
}

double j_quadrature(const ScalarFn& f, const ScalarFn& g, double alpha, double t, double T,
                    std::size_t k) {
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("J needs alpha in (0, 1)");
    if (!(t > 0 && t < T)) throw std::invalid_argument("J needs 0 < t < T");
    // grading 1/alpha at the outer ends absorbs t^(alpha-1)-type data; the
    // corner exponent keeps (mu - tau)^(-alpha) smooth enough after substitution
    const double pc = 4 / (2 - alpha);
    const Graded tq = graded(0.0, t, 1 / alpha, pc, k);
    const Graded mq = graded(t, T, pc, 1 / alpha, k);
    std::vector<double> gv(mq.nodes.size());
    for (std::size_t j = 0; j < gv.size(); ++j) gv[j] = g(mq.nodes[j]) * mq.weights[j];
    double sum = 0;
    for (std::size_t i = 0; i < tq.nodes.size(); ++i) {
        double inner = 0;
        for (std::size_t j = 0; j < gv.size(); ++j)
            inner += gv[j] * std::pow(tq.from_b[i] + mq.from_a[j], -alpha);
        sum += tq.weights[i] * f(tq.nodes[i]) * inner;
    }
    return sum * rgamma(1 - alpha);
}

double j_quadrature(const GridFunction& f, const GridFunction& g, double alpha, double t, double T,
                    std::size_t k) {
    return j_quadrature([&](double s) { return f.interpolate_t(s); },
                        [&](double s) { return g.interpolate_t(s); }, alpha, t, T, k);
}

double left_fractional_integral(const ScalarFn& f, double beta, double t, std::size_t k) {
    if (!(beta > 0 && beta <= 1)) throw std::invalid_argument("order must lie in (0, 1]");
    if (t <= 0) return 0.0;
    std::vector<double> n, w;
    graded_rule(0.0, t, 1 / beta, 1 / beta, k, n, w);
    double s = 0;
    for (std::size_t i = 0; i < n.size(); ++i) s += w[i] * f(n[i]) * std::pow(t - n[i], beta - 1);
    return s * rgamma(beta);
}

double right_fractional_integral(const ScalarFn& g, double beta, double t, double T, std::size_t k) {
    if (!(beta > 0 && beta <= 1)) throw std::invalid_argument("order must lie in (0, 1]");
    if (t >= T) return 0.0;
    std::vector<double> n, w;
    graded_rule(t, T, 1 / beta, 1 / beta, k, n, w);
    double s = 0;
    for (std::size_t i = 0; i < n.size(); ++i) s += w[i] * g(n[i]) * std::pow(n[i] - t, beta - 1);
    return s * rgamma(beta);
}

double rl_power_rule(double gamma_exp, double alpha, double t) {
    return std::tgamma(gamma_exp + 1) * rgamma(gamma_exp + 1 - alpha) *
           std::pow(t, gamma_exp - alpha);
}

// --- I/O ------------------------------------------------------------------

namespace {

std::string axis_label(std::size_t d, std::size_t nd) {
    return var_name(static_cast<VarIndex>(d + 1), static_cast<int>(nd));
}

double stored(const GridFunction& g, std::size_t r, std::size_t c) {
    const bool flagged = (r == 0 && g.singular_start) || (r + 1 == g.t.count && g.singular_end);
    return flagged ? std::numeric_limits<double>::infinity()
                   : g.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

Axis axis_from_values(std::vector<double> v, const std::string& label) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() < 2) throw GridIOError("axis " + label + " has fewer than two values");
    const double step = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i] - (v.front() + step * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(v[i])))
            throw GridIOError("axis " + label + " is not uniformly spaced");
    return {v.size(), v.front(), step};
}

std::size_t index_on(const Axis& a, double v) {
    const double pos = (v - a.origin) / a.step;
    return static_cast<std::size_t>(std::llround(pos));
}

}  // namespace

void write_csv(std::ostream& os, const GridFunction& g) {
    const std::size_t nd = g.space.size();
    os << "t";
    for (std::size_t d = 0; d < nd; ++d) os << "," << axis_label(d, nd);
    os << ",value\n";
    os << std::setprecision(17);
    for (std::size_t r = 0; r < g.t.count; ++r)
        for (std::size_t c = 0; c < g.spatial_points(); ++c) {
            os << g.t.at(r);
            for (double x : g.spatial_point(c)) os << "," << x;
            const double v = stored(g, r, c);
            os << ",";
            if (std::isinf(v)) os << "inf";
            else os << v;
            os << "\n";
        }
}

GridFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw GridIOError("empty CSV input");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 2 || header.front() != "t" || header.back() != "value")
        throw GridIOError("CSV header must be t,<space columns>,value");
    const std::size_t nd = header.size() - 2;
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw GridIOError("line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (row.size() != header.size())
            throw GridIOError("line " + std::to_string(lineno) + ": expected " +
                              std::to_string(header.size()) + " columns");
        rows.push_back(std::move(row));
    }
    std::vector<std::vector<double>> axis_vals(nd + 1);
    for (const auto& r : rows)
        for (std::size_t d = 0; d <= nd; ++d) axis_vals[d].push_back(r[d]);
    GridFunction g;
    g.t = axis_from_values(axis_vals[0], "t");
    for (std::size_t d = 0; d < nd; ++d) g.space.push_back(axis_from_values(axis_vals[d + 1], header[d + 1]));
    const std::size_t cols = g.spatial_points();
    if (rows.size() != g.t.count * cols) throw GridIOError("CSV does not cover a full tensor grid");
    g.values = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(g.t.count),
                                         static_cast<Eigen::Index>(cols), std::nan(""));
    for (const auto& r : rows) {
        std::size_t c = 0;
        for (std::size_t d = 0; d < nd; ++d) c = c * g.space[d].count + index_on(g.space[d], r[d + 1]);
        g.values(static_cast<Eigen::Index>(index_on(g.t, r[0])), static_cast<Eigen::Index>(c)) = r.back();
    }
    try {
        absorb_singular_rows(g);
    } catch (const GridError& e) {
        throw GridIOError(e.what());
    }
    return g;
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary grids assume a little-endian host");
constexpr char kMagic[8] = {'F', 'H', 'G', 'R', 'I', 'D', '1', '\0'};

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw GridIOError("truncated binary grid");
    return v;
}

}  // namespace

void write_binary(std::ostream& os, const GridFunction& g) {
    os.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.space.size() + 1));
    auto axis = [&](const Axis& a) {
        put<std::uint64_t>(os, a.count);
        put<double>(os, a.origin);
        put<double>(os, a.step);
    };
    axis(g.t);
    for (const auto& a : g.space) axis(a);
    for (std::size_t r = 0; r < g.t.count; ++r)
        for (std::size_t c = 0; c < g.spatial_points(); ++c) put<double>(os, stored(g, r, c));
}

GridFunction read_binary(std::istream& is) {
    char magic[8];
    if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw GridIOError("not a FHGRID1 file");
    const auto ndims = get<std::uint32_t>(is);
    if (ndims < 1 || ndims > 16) throw GridIOError("unsupported number of axes");
    auto axis = [&] {
        Axis a;
        a.count = get<std::uint64_t>(is);
        a.origin = get<double>(is);
        a.step = get<double>(is);
        if (a.count < 2 || a.count > (1u << 26) || !(a.step > 0))
            throw GridIOError("invalid axis in binary grid");
        return a;
    };
    GridFunction g;
    g.t = axis();
    for (std::uint32_t d = 1; d < ndims; ++d) g.space.push_back(axis());
    const std::size_t cols = g.spatial_points();
    if (cols * g.t.count > (std::size_t{1} << 28)) throw GridIOError("binary grid too large");
    g.values.resize(static_cast<Eigen::Index>(g.t.count), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < g.t.count; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            g.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = get<double>(is);
    try {
        absorb_singular_rows(g);
    } catch (const GridError& e) {
        throw GridIOError(e.what());
    }
    return g;
}

}  // namespace liesym
