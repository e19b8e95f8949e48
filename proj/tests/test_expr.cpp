#include <random>

#include "doctest.h"
#include "liesym/expr.hpp"

using namespace liesym;

namespace {

const VarIndex X = 1, Y = 2;

Expr P(const char* s) { return parse(s); }

bool same(const Expr& a, const Expr& b) { return equal(a, b); }

// Random polynomial over t, x, y, u and jets up to order 2.
Expr random_expr(std::mt19937& rng, int max_terms = 4) {
    static const std::vector<Expr> pool = {
        Expr::t(),  Expr::x(X),       Expr::x(Y),       Expr::u(),           Expr::u({X}),
        Expr::u({kTime}), Expr::u({X, X}), Expr::u({X, Y}), Expr::alpha(), Expr::phi(),
    };
    std::uniform_int_distribution<int> nterms(1, max_terms), nfac(0, 3), pick(0, int(pool.size()) - 1),
        coef(-5, 5);
    std::vector<Expr> terms;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> f{Expr(coef(rng))};
        const int k = nfac(rng);
        for (int j = 0; j < k; ++j) f.push_back(pool[std::size_t(pick(rng))]);
        terms.push_back(Expr::product(f));
    }
    return Expr::sum(terms);
}

}  // namespace

TEST_CASE("parse builds canonical trees") {
    const Expr e = P("2*t*u_t + x*u_x");
    CHECK(e.is_canonical());
    CHECK(e.kind() == Expr::Kind::Sum);
    CHECK(e.children().size() == 2);
    CHECK(same(e, Expr(2) * Expr::t() * Expr::u({kTime}) + Expr::x(X) * Expr::u({X})));
    CHECK(equals_zero(P("u_{xy} - u_{yx}")));
    const Expr a = P("alpha*x*u_x");
    CHECK(a.kind() == Expr::Kind::Product);
    CHECK(a == normalize(Expr::alpha() * Expr::x(X) * Expr::u({X})));
    CHECK(to_string(a) == "alpha*x*u_x");
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(P("2*"), ParseError);
    CHECK_THROWS_AS(P("u_xx"), ParseError);
    CHECK_THROWS_AS(P("(x"), ParseError);
    CHECK_THROWS_AS(P("x/y"), ParseError);
    try {
        P("x + q");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::UnknownSymbol);
        CHECK(e.position == 4);
    }
    try {
        P("x + * y");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::Syntax);
        CHECK(e.position == 4);
    }
    CHECK(same(P("x/2 + 0.5*x"), Expr::x(X)));
    CHECK(same(P("x1*u_{x1x2}"), Expr::x(1) * Expr::u({1, 2})));
    CHECK(same(P("Dalpha_u - D1alpha_u"),
               Expr::symbol(Atom::jet(Field::DalphaU)) - Expr::symbol(Atom::jet(Field::D1alphaU))));
}

TEST_CASE("partial derivatives") {
    const Expr e = P("x^2*u_x");
    CHECK(same(partial_derivative(e, Atom::variable(X)), P("2*x*u_x")));
    CHECK(same(partial_derivative(e, Atom::jet(Field::U, {X})), P("x^2")));
    CHECK(same(partial_derivative(P("u*(2*t + x^2)"), Atom::jet(Field::U)), P("2*t + x^2")));
    CHECK(equals_zero(partial_derivative(e, Atom::variable(Y))));
    CHECK(same(partial_derivative(P("x*phi"), Atom::variable(X)), P("phi + x*phi_x")));
}

TEST_CASE("total derivatives") {
    CHECK(same(total_derivative(P("u"), X), P("u_x")));
    CHECK(same(total_derivative(P("u*phi"), kTime), P("u_t*phi + u*phi_t")));
    CHECK(same(total_derivative(P("u*phi_x - phi*u_x"), X), P("u*phi_{xx} - phi*u_{xx}")));
    CHECK(same(total_derivative(P("t*x^2*u_y"), X), P("2*t*x*u_y + t*x^2*u_{xy}")));
    CHECK_THROWS_AS(total_derivative(P("u_{xxxx}"), X), JetOrderError);
    CHECK_NOTHROW(total_derivative(P("u_{xxxx}"), X, JetOptions{5}));
    CHECK_THROWS_AS(total_derivative(P("Dalpha_u"), kTime), ExprError);
}

TEST_CASE("substitution") {
    const SubstitutionRules heat = {{Atom::jet(Field::U, {kTime}), P("u_{xx}")}};
    CHECK(equals_zero(substitute(P("u_t - u_{xx}"), heat)));
    CHECK(same(substitute(P("u_{tt}"), heat), P("u_{xxxx}")));
    CHECK(same(substitute(P("u_{tx}"), heat), P("u_{xxx}")));
    const SubstitutionRules adj = {{Atom::jet(Field::Phi, {kTime}), P("-phi_{xx}")}};
    CHECK(equals_zero(substitute(P("phi_t + phi_{xx}"), adj)));
    const SubstitutionRules cyc = {{Atom::jet(Field::U, {X}), P("u_y")},
                                   {Atom::jet(Field::U, {Y}), P("u_x")}};
    CHECK_THROWS_AS(substitute(P("u_x"), cyc), SubstitutionError);
    const SubstitutionRules self = {{Atom::jet(Field::U, {X}), P("u_{xx}")}};
    CHECK_THROWS_AS(substitute(P("u_x"), self), SubstitutionError);
}

TEST_CASE("normalize") {
    CHECK(equals_zero(P("(u+x)^2 - u^2 - 2*u*x - x^2")));
    CHECK(normalize(P("alpha*x + x*alpha")) == P("2*alpha*x"));
    CHECK(to_string(P("alpha*x + x*alpha")) == "2*alpha*x");
    CHECK(equals_zero(P("u*(3*alpha-2) - 3*alpha*u + 2*u")));
    CHECK_FALSE(equals_zero(P("alpha - 1")));
    CHECK(to_string(P("0")) == "0");
    CHECK(to_string(P("1 - x")) == "1 - x");
    CHECK(to_string(P("-x^2*u/2")) == "-1/2*x^2*u");
    CHECK(to_latex(P("alpha*phi_x*x - u_{xy}/2")) == "\\alpha x \\phi_{x} - \\frac{1}{2} u_{xy}");
}

TEST_CASE("printing in high dimension") {
    const Expr e = Expr::x(6) * Expr::u({6}) + Expr::x(1);
    CHECK(to_string(normalize(e)) == "x1 + x6*u_{x6}");
    CHECK(same(parse(to_string(e)), e));
    CHECK(to_string(Expr::x(2), PrintOptions{6}) == "x2");
    CHECK(to_string(Expr::x(2), PrintOptions{3}) == "y");
}

TEST_CASE("numeric evaluation") {
    Binding b;
    b.set_var(kTime, 1).set_var(X, 2);
    CHECK(eval_numeric(P("2*t + x^2"), b) == doctest::Approx(6.0));
    Binding c;
    c.set_var(X, 3);
    CHECK(eval_numeric(P("alpha*x"), c, 0.5) == doctest::Approx(1.5));
    CHECK_THROWS_AS(eval_numeric(P("alpha*y"), c, 0.5), EvalError);
    // callable field: phi = t*x^2, queried at (t, x)
    Binding d;
    d.set_var(kTime, 2).set_var(X, 3);
    d.functions[Field::Phi] = [](const DerivIndex& J, std::span<const double> p) {
        const double t = p[0], x = p[1];
        if (J.empty()) return t * x * x;
        if (J == DerivIndex{X}) return 2 * t * x;
        if (J == DerivIndex{kTime}) return x * x;
        return 0.0;
    };
    CHECK(eval_numeric(P("phi + phi_x + phi_t"), d) == doctest::Approx(18 + 12 + 9));
    // W for a dilation-type generator at a point of the solution u = x^2 + 2t
    Binding w;
    w.set_var(kTime, 0.5).set_var(X, 1.5);
    w.set(Atom::jet(Field::U, {kTime}), 2.0).set(Atom::jet(Field::U, {X}), 3.0);
    CHECK(eval_numeric(P("2*t*u_t - alpha*x*u_x"), w, 0.5) == doctest::Approx(2 - 2.25));
}

TEST_CASE("property: idempotence, linearity, commuting derivatives, round trip") {
    std::mt19937 rng(20260101);
    for (int trial = 0; trial < 200; ++trial) {
        const Expr e1 = random_expr(rng);
        const Expr e2 = random_expr(rng);
        const Expr n1 = normalize(e1);
        CHECK(normalize(n1) == n1);
        CHECK(normalize(Expr::sum({n1})) == n1);

        const Rational a(trial % 7 - 3, 2), b(trial % 5 + 1);
        const Expr lhs = total_derivative(Expr(a) * e1 + Expr(b) * e2, X);
        const Expr rhs = Expr(a) * total_derivative(e1, X) + Expr(b) * total_derivative(e2, X);
        CHECK(equals_zero(lhs - rhs));

        const Expr dxdt = total_derivative(total_derivative(e1, kTime), X);
        const Expr dtdx = total_derivative(total_derivative(e1, X), kTime);
        CHECK(equals_zero(dxdt - dtdx));

        CHECK(parse(to_string(e1)) == n1);
        CHECK(parse(to_string(n1)) == n1);
    }
}
