#include "liesym/ratfunc.hpp"

#include <cmath>

namespace liesym {

AlphaPoly::AlphaPoly(Rational c) {
    if (!c.is_zero()) c_.push_back(c);
}

AlphaPoly AlphaPoly::alpha() { return from_coeffs({Rational(0), Rational(1)}); }

AlphaPoly AlphaPoly::from_coeffs(std::vector<Rational> c) {
    AlphaPoly p;
    p.c_ = std::move(c);
    p.trim();
    return p;
}

void AlphaPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational AlphaPoly::coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0);
}

AlphaPoly AlphaPoly::operator-() const {
    AlphaPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

AlphaPoly operator+(const AlphaPoly& a, const AlphaPoly& b) {
    AlphaPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    r.trim();
    return r;
}

AlphaPoly operator-(const AlphaPoly& a, const AlphaPoly& b) { return a + (-b); }

AlphaPoly operator*(const AlphaPoly& a, const AlphaPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    AlphaPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
}

void AlphaPoly::divmod(const AlphaPoly& a, const AlphaPoly& b, AlphaPoly& q, AlphaPoly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    q = AlphaPoly();
    r = a;
    const int db = b.degree();
    if (r.degree() < db) return;
    q.c_.assign(static_cast<std::size_t>(r.degree() - db + 1), Rational(0));
    while (!r.is_zero() && r.degree() >= db) {
        const int shift = r.degree() - db;
        const Rational f = r.leading() / b.leading();
        q.c_[static_cast<std::size_t>(shift)] = f;
        for (int k = 0; k <= db; ++k)
            r.c_[static_cast<std::size_t>(k + shift)] -= f * b.c_[static_cast<std::size_t>(k)];
        r.trim();
    }
    q.trim();
}

AlphaPoly AlphaPoly::gcd(AlphaPoly a, AlphaPoly b) {
    while (!b.is_zero()) {
        AlphaPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    const Rational lead = a.leading();
    for (auto& c : a.c_) c /= lead;
    return a;
}

double AlphaPoly::eval(double alpha) const {
    double v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * alpha + it->to_double();
    return v;
}

Expr AlphaPoly::to_expr() const {
    Poly p;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        Monomial m;
        if (k > 0) m.emplace_back(Atom::alpha(), static_cast<int>(k));
        p.add_term(m, c_[k]);
    }
    return from_poly(std::move(p));
}

std::string AlphaPoly::str() const {
    if (c_.empty()) return "0";
    // descending powers of alpha
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        Rational c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        const bool neg = c.sign() < 0;
        if (neg) c = -c;
        std::string term;
        if (k == 0) term = c.str();
        else {
            term = k == 1 ? "alpha" : "alpha^" + std::to_string(k);
            if (!c.is_one()) term = c.str() + "*" + term;
        }
        if (out.empty()) out = neg ? "-" + term : term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out;
}

RatFunc::RatFunc(AlphaPoly num, AlphaPoly den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = AlphaPoly();
        den_ = AlphaPoly(1);
        return;
    }
    const AlphaPoly g = AlphaPoly::gcd(num, den);
    AlphaPoly r;
    AlphaPoly::divmod(num, g, num_, r);
    AlphaPoly::divmod(den, g, den_, r);
    const Rational lead = den_.leading();
    const AlphaPoly inv(Rational(1) / lead);
    num_ = num_ * inv;
    den_ = den_ * inv;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q(alpha)");
    return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RatFunc::str() const {
    if (is_polynomial()) {
        // den_ is the monic constant 1
        return num_.str();
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

// Row-reduces in place; returns pivot columns. Column `limit` and beyond are
// not used as pivots.
std::vector<std::size_t> row_reduce(RatMatrix& m, std::size_t limit) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < limit && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        const RatFunc inv = RatFunc(1) / m[row][col];
        for (auto& v : m[row]) v = v * inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            const RatFunc f = m[r][col];
            for (std::size_t c = col; c < m[r].size(); ++c)
                if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(RatMatrix m) {
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    return static_cast<int>(row_reduce(m, cols).size());
}

RatMatrix row_basis(RatMatrix m) {
    if (m.empty()) return m;
    const std::size_t cols = m.front().size();
    m.resize(row_reduce(m, cols).size());
    return m;
}

std::optional<std::vector<RatFunc>> solve(RatMatrix a, std::vector<RatFunc> b, std::size_t cols) {
    for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
    const auto pivots = row_reduce(a, cols);
    for (std::size_t r = pivots.size(); r < a.size(); ++r)
        if (!a[r][cols].is_zero()) return std::nullopt;
    std::vector<RatFunc> x(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
    return x;
}

std::map<Monomial, AlphaPoly> split_alpha(const Poly& p) {
    std::map<Monomial, AlphaPoly> out;
    for (const auto& [mono, coef] : p.terms()) {
        Monomial m = mono;
        int k = 0;
        if (!m.empty() && m.back().first.is_alpha()) {
            k = m.back().second;
            m.pop_back();
        }
        std::vector<Rational> c(static_cast<std::size_t>(k + 1), Rational(0));
        c.back() = coef;
        out[m] = out[m] + AlphaPoly::from_coeffs(std::move(c));
    }
    return out;
}

}  // namespace liesym
