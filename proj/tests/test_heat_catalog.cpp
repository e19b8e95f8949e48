#include <doctest.h>

#include <cmath>
#include <set>

#include "liesym/heat_catalog.hpp"
#include "liesym/special.hpp"

using namespace liesym;

TEST_CASE("generator counts match the closed forms") {
    for (int n = 1; n <= 8; ++n) {
        CHECK(static_cast<int>(generators({n, Regime::Integer}).size()) ==
              (n * n + 3 * n + 10) / 2);
        CHECK(static_cast<int>(generators({n, Regime::Fractional}).size()) ==
              (n * n + n + 6) / 2);
        CHECK(count_formula(n, Regime::Integer) == (n * n + 3 * n + 10) / 2);
    }
    CHECK(count_formula(1, Regime::Integer) == 7);
    CHECK(count_formula(2, Regime::Integer) == 10);
    CHECK(count_formula(3, Regime::Fractional) == 9);
    CHECK(count_formula(4, Regime::Fractional) == 13);
    CHECK_THROWS(count_formula(0, Regime::Integer));
    CHECK_THROWS(HeatEquation(0, Regime::Integer));
}

TEST_CASE("class census") {
    for (int n = 1; n <= 7; ++n)
        for (Regime r : {Regime::Integer, Regime::Fractional}) {
            const auto g = generators({n, r});
            std::map<GenClass, int> census;
            for (const auto& x : g) ++census[x.cls];
            const bool integer = r == Regime::Integer;
            CHECK(census[GenClass::SpaceTranslation] == n);
            CHECK(census[GenClass::Solution] == (integer ? n : 0));
            CHECK(census[GenClass::Rotation] == n * (n - 1) / 2);
            CHECK(census[GenClass::TimeTranslation] == (integer ? 1 : 0));
            CHECK(census[GenClass::Dilation] == 1);
            CHECK(census[GenClass::Projective] == (integer ? 1 : 0));
            CHECK(census[GenClass::Homogeneity] == 1);
            CHECK(census[GenClass::Infinite] == 1);
            std::set<std::string> names;
            for (const auto& x : g) names.insert(x.field.name);
            CHECK(names.size() == g.size());
            for (const auto& x : g) CHECK(x.field.dimension() == n);
        }
}

TEST_CASE("printed names") {
    CHECK(generators({3, Regime::Integer})[9].field.name == "G310");
    CHECK(generators({4, Regime::Integer})[12].field.name == "G513");
    CHECK(generators({2, Regime::Fractional})[3].field.name == "G14");
    CHECK(generators({5, Regime::Integer})[0].field.name == "G5:1");
    CHECK(by_name(generators({1, Regime::Fractional}), "G02").cls == GenClass::Dilation);
    CHECK_THROWS_AS(by_name(generators({1, Regime::Integer}), "G99"), std::out_of_range);
}

TEST_CASE("rotations in every dimension are genuine rotations") {
    for (int n = 2; n <= 6; ++n)
        for (const auto& g : select(generators({n, Regime::Integer}), {GenClass::Rotation})) {
            // x_a d_b - x_b d_a: antisymmetric linear coefficient matrix with two entries
            int nonzero = 0;
            for (const auto& c : g.field.xi) nonzero += !equals_zero(c);
            CHECK(nonzero == 2);
            const Expr div = [&] {
                Expr s;
                for (int i = 1; i <= n; ++i)
                    s += partial_derivative(g.field.xi[static_cast<std::size_t>(i - 1)],
                                            Atom::variable(static_cast<VarIndex>(i)));
                return s;
            }();
            CHECK(equals_zero(div));
        }
}

TEST_CASE("fractional dilations differ by multiples of homogeneity") {
    const Expr u = Expr::u();
    for (int n = 1; n <= 6; ++n) {
        const auto g = generators({n, Regime::Fractional});
        const auto d = select(g, {GenClass::Dilation}).front().field;
        // normalize the time coefficient to 2t
        const Expr ratio = equals_zero(d.xi0 - Expr(4) * Expr::t()) ? Expr(Rational(1, 2)) : Expr(1);
        CHECK(equal(ratio * d.xi0, Expr(2) * Expr::t()));
        for (int i = 1; i <= n; ++i)
            CHECK(equal(ratio * d.xi[static_cast<std::size_t>(i - 1)],
                        Expr::alpha() * Expr::x(static_cast<VarIndex>(i))));
        // eta is c(alpha) * u
        const Expr eta = normalize(ratio * d.eta);
        CHECK(equals_zero(partial_derivative(partial_derivative(eta, Atom::jet(Field::U)),
                                             Atom::jet(Field::U))));
        CHECK(equals_zero(eta - u * partial_derivative(eta, Atom::jet(Field::U))));
    }
}

TEST_CASE("json and latex") {
    const HeatEquation eq{2, Regime::Fractional};
    const auto j = catalog_json(eq);
    CHECK(j["dimension"] == 2);
    CHECK(j["regime"] == "fractional");
    CHECK(j["generators"].size() == 6);
    CHECK(j["generators"][3]["name"] == "G14");
    CHECK(j["generators"][3].contains("note"));
    CHECK(j["generators"][0]["class"] == "space-translation");
    CHECK(j["generators"][2]["xi"][0] == "y");
    CHECK_FALSE(j["notes"].empty());
    const auto tex = catalog_latex({1, Regime::Integer});
    CHECK(tex.find("\\Gamma_{5}&=&4 t^{2} \\partial_{t}") != std::string::npos);
    CHECK(tex.find("\\Gamma_{2}&=&2 t \\partial_{x} - x u \\partial_{u}") != std::string::npos);
    CHECK(HeatEquation(2, Regime::Integer).str() == "u_t = u_{xx} + u_{yy}");
    CHECK(HeatEquation(1, Regime::Fractional).str() == "Dalpha_u = u_{xx}");
}

TEST_CASE("integer exact solutions satisfy the heat equation (finite differences)") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& s : exact_solutions({n, Regime::Integer})) {
            const double t = 0.7, h = 1e-3;
            std::vector<double> x(static_cast<std::size_t>(n), 0.3);
            x[0] = -0.4;
            const double ut = (s.value(t + h, x) - s.value(t - h, x)) / (2 * h);
            double lap = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                auto xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                lap += (s.value(t, xp) - 2 * s.value(t, x) + s.value(t, xm)) / (h * h);
            }
            CHECK(ut == doctest::Approx(lap).epsilon(1e-4));
        }
}

TEST_CASE("fractional exact solutions") {
    const double alpha = 0.6;
    const auto sols = exact_solutions({1, Regime::Fractional}, alpha, 1.0);
    REQUIRE(sols.size() == 3);
    const std::vector<double> x{0.5};
    CHECK(sols[0].value(2.0, x) == doctest::Approx(std::pow(2.0, alpha - 1)));
    CHECK_FALSE(std::isfinite(sols[2].value(0.0, x)));
    // E_{alpha,alpha}(0) = 1/Gamma(alpha): leading behaviour as t -> 0
    const double tiny = 1e-8;
    CHECK(sols[2].value(tiny, x) / std::pow(tiny, alpha - 1) ==
          doctest::Approx(rgamma(alpha) * std::cos(0.5)).epsilon(1e-3));
}
