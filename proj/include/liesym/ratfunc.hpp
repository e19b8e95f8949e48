#pragma once

// Exact arithmetic in Q[alpha] and Q(alpha), plus Gaussian elimination over
// Q(alpha). Used to decompose brackets in a basis whose coefficients may
// depend on alpha.

#include <optional>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/rational.hpp"

namespace liesym {

/// Polynomial in alpha with rational coefficients; c_[k] multiplies alpha^k.
class AlphaPoly {
public:
    AlphaPoly() = default;
    AlphaPoly(Rational c);  // NOLINT implicit
    AlphaPoly(int c) : AlphaPoly(Rational(c)) {}  // NOLINT implicit
    static AlphaPoly alpha();
    static AlphaPoly from_coeffs(std::vector<Rational> c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational coeff(int k) const;
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    AlphaPoly operator-() const;
    friend AlphaPoly operator+(const AlphaPoly& a, const AlphaPoly& b);
    friend AlphaPoly operator-(const AlphaPoly& a, const AlphaPoly& b);
    friend AlphaPoly operator*(const AlphaPoly& a, const AlphaPoly& b);
    friend bool operator==(const AlphaPoly&, const AlphaPoly&) = default;

    /// Polynomial long division; b nonzero.
    static void divmod(const AlphaPoly& a, const AlphaPoly& b, AlphaPoly& q, AlphaPoly& r);
    /// Monic greatest common divisor (zero if both are zero).
    static AlphaPoly gcd(AlphaPoly a, AlphaPoly b);

    double eval(double alpha) const;
    Expr to_expr() const;
    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Element of Q(alpha), kept reduced with a monic denominator.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(AlphaPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT implicit
    RatFunc(Rational c) : num_(c), den_(1) {}               // NOLINT implicit
    RatFunc(int c) : num_(c), den_(1) {}                    // NOLINT implicit
    RatFunc(AlphaPoly num, AlphaPoly den);

    const AlphaPoly& num() const { return num_; }
    const AlphaPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    /// Valid only when is_rational().
    Rational constant() const { return num_.coeff(0) / den_.coeff(0); }

    RatFunc operator-() const { return {-num_, den_}; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    friend bool operator==(const RatFunc&, const RatFunc&) = default;

    double eval(double alpha) const { return num_.eval(alpha) / den_.eval(alpha); }
    /// "2*alpha", "alpha - 1", "(alpha)/(alpha + 1)".
    std::string str() const;

private:
    AlphaPoly num_;
    AlphaPoly den_ = AlphaPoly(1);
};

using RatMatrix = std::vector<std::vector<RatFunc>>;

/// Rank of a matrix over Q(alpha).
int rank(RatMatrix m);

/// Nonzero rows of the reduced row echelon form: a basis of the row space.
RatMatrix row_basis(RatMatrix m);

/// Some solution x of A x = b over Q(alpha) (free unknowns set to zero), or
/// nullopt when inconsistent. A has `cols` columns even when it has no rows.
std::optional<std::vector<RatFunc>> solve(RatMatrix a, std::vector<RatFunc> b, std::size_t cols);

/// Splits a canonical polynomial into alpha-free monomials with AlphaPoly
/// coefficients.
std::map<Monomial, AlphaPoly> split_alpha(const Poly& p);

}  // namespace liesym
