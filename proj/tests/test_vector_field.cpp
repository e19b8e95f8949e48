#include <doctest.h>

#include <random>

#include "liesym/heat_catalog.hpp"
#include "liesym/vector_field.hpp"
#include "oracles.hpp"

using namespace liesym;

namespace {

VectorField vf(std::string name, const char* xi0, std::vector<const char*> xi, const char* eta) {
    VectorField f;
    f.name = std::move(name);
    f.xi0 = parse(xi0);
    for (const char* s : xi) f.xi.push_back(parse(s));
    f.eta = parse(eta);
    return f;
}

std::vector<double> coeffs_at(const Decomposition& d, double alpha) {
    std::vector<double> r;
    for (const auto& c : d.coeffs) r.push_back(c.eval(alpha));
    return r;
}

}  // namespace

TEST_CASE("AlphaPoly and RatFunc arithmetic") {
    const AlphaPoly a = AlphaPoly::alpha();
    const AlphaPoly p = a * a - AlphaPoly(1);  // (a-1)(a+1)
    const AlphaPoly q = a - AlphaPoly(1);
    AlphaPoly quo, rem;
    AlphaPoly::divmod(p, q, quo, rem);
    CHECK(rem.is_zero());
    CHECK(quo == a + AlphaPoly(1));
    CHECK(AlphaPoly::gcd(p, q) == q);
    CHECK(AlphaPoly::gcd(AlphaPoly(3) * q, AlphaPoly(2) * p) == q);

    const RatFunc r(p, q);
    CHECK(r.is_polynomial());
    CHECK(r == RatFunc(a + AlphaPoly(1)));
    const RatFunc s = RatFunc(a) / RatFunc(a + AlphaPoly(1));
    CHECK_FALSE(s.is_polynomial());
    CHECK(s.str() == "(alpha)/(alpha + 1)");
    CHECK((s * RatFunc(a + AlphaPoly(1))) == RatFunc(a));
    CHECK((s - s).is_zero());
    CHECK(s.eval(0.5) == doctest::Approx(1.0 / 3.0));
    CHECK(RatFunc(Rational(-1, 2)).str() == "-1/2");
    CHECK(RatFunc(a - AlphaPoly(1)).str() == "alpha - 1");
}

TEST_CASE("RatFunc field axioms on random elements") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    auto rand_poly = [&] {
        return AlphaPoly::from_coeffs({Rational(d(rng)), Rational(d(rng)), Rational(d(rng))});
    };
    for (int it = 0; it < 100; ++it) {
        const RatFunc x(rand_poly(), AlphaPoly(1) + AlphaPoly::alpha() * AlphaPoly::alpha());
        const RatFunc y(rand_poly());
        const RatFunc z(rand_poly(), AlphaPoly(2) + AlphaPoly::alpha());
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
        const double al = 0.37;
        CHECK((x * z).eval(al) == doctest::Approx(x.eval(al) * z.eval(al)));
    }
}

TEST_CASE("linear solve over Q(alpha)") {
    const RatFunc a = AlphaPoly::alpha();
    // [[1, a], [a, 1]] x = [1, 0]
    RatMatrix m{{RatFunc(1), a}, {a, RatFunc(1)}};
    auto x = solve(m, {RatFunc(1), RatFunc(0)}, 2);
    REQUIRE(x);
    const double al = 0.3;
    CHECK((*x)[0].eval(al) == doctest::Approx(1 / (1 - al * al)));
    CHECK((*x)[1].eval(al) == doctest::Approx(-al / (1 - al * al)));
    CHECK(rank(m) == 2);
    CHECK(rank({{RatFunc(1), a}, {a, a * a}}) == 1);
    CHECK_FALSE(solve({{RatFunc(1)}, {RatFunc(2)}}, {RatFunc(1), RatFunc(1)}, 1));
    CHECK(solve({}, {}, 3)->size() == 3);
}

TEST_CASE("vector field basics") {
    const auto d = vf("D", "2*t", {"x"}, "0");
    CHECK(d.str() == "2*t*d_t + x*d_x");
    CHECK(to_string(d.apply(parse("t*x^2"))) == "4*t*x^2");
    CHECK(VectorField::zero(2).is_zero());
    CHECK(d.is_point_field());
    CHECK(vf("Fd", "0", {"0"}, "F").is_point_field());
    CHECK(vf("Fd", "0", {"0"}, "F").involves_F());
    CHECK_FALSE(vf("bad", "0", {"u_x"}, "0").is_point_field());
    CHECK(equivalent(d + d, Expr(2) * d));
    CHECK((d - d).is_zero());
    CHECK_THROWS_AS(lie_bracket(d, VectorField::zero(2)), DimensionMismatch);
}

TEST_CASE("spec bracket examples") {
    const auto g1 = generators({1, Regime::Integer});
    const auto& G3 = by_name(g1, "G3").field;
    const auto& G4 = by_name(g1, "G4").field;
    CHECK(equivalent(lie_bracket(G3, G4), Expr(2) * G3));
    const auto dec = decompose_in_basis(lie_bracket(G3, G4), fields(g1));
    REQUIRE(dec.in_span);
    CHECK(dec.str({"G1", "G2", "G3", "G4", "G5", "G6", "G7"}) == "2*G3");

    const auto f1 = generators({1, Regime::Fractional});
    const auto& G01 = by_name(f1, "G01").field;
    const auto& G02 = by_name(f1, "G02").field;
    CHECK(equivalent(lie_bracket(G01, G02), Expr::alpha() * G01));
    const auto d2 = decompose_in_basis(lie_bracket(G01, G02), fields(f1));
    REQUIRE(d2.in_span);
    CHECK(d2.coeffs[0] == RatFunc(AlphaPoly::alpha()));
}

TEST_CASE("1D integer commutator table") {
    const auto g = fields(generators({1, Regime::Integer}));
    const auto table = commutator_table(g);
    auto str = [&](std::size_t i, std::size_t j) { return table.at(i, j).dec.str(table.names()); };
    CHECK(str(0, 1) == "-G6");      // [d_x, 2t d_x - xu d_u] = -u d_u
    CHECK(str(0, 3) == "G1");
    CHECK(str(0, 4) == "2*G2");
    CHECK(str(1, 2) == "-2*G1");
    CHECK(str(1, 3) == "-G2");
    CHECK(str(2, 3) == "2*G3");
    CHECK(str(2, 4) == "4*G4 - 2*G6");
    CHECK(str(3, 4) == "2*G5");
    CHECK(str(1, 4) == "0");
    CHECK_FALSE(table.at(0, 6).dec.in_span);
    CHECK(table.at(0, 6).dec.infinite);
    CHECK(str(5, 6) == "-G7");  // [u d_u, F d_u] = -F d_u
    CHECK_FALSE(table.closed());
    // the independent numeric oracle agrees with every in-span entry
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            const auto& e = table.at(i, j);
            if (!e.dec.in_span) continue;
            CHECK(oracle::bracket_mismatch(g[i], g[j], coeffs_at(e.dec, 0.5), g, 0.5) < 1e-6);
        }
}

TEST_CASE("brackets with the infinite family stay in the F family") {
    const auto g = fields(generators({1, Regime::Integer}));
    const auto b = lie_bracket(g[2], g[6]);  // [d_t, F d_u] = F_t d_u
    CHECK(to_string(b.eta) == "F_t");
    const auto c = lie_bracket(g[5], g[6]);  // [u d_u, F d_u] = -F d_u
    CHECK(to_string(c.eta) == "-F");
}

TEST_CASE("bracket properties on all catalogs") {
    for (int n = 1; n <= 3; ++n)
        for (Regime r : {Regime::Integer, Regime::Fractional}) {
            const auto g = fields(generators({n, r}));
            std::mt19937 rng(static_cast<unsigned>(n * 10 + (r == Regime::Fractional)));
            std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
            for (int it = 0; it < 25; ++it) {
                const auto& a = g[pick(rng)];
                const auto& b = g[pick(rng)];
                const auto& c = g[pick(rng)];
                CHECK(equivalent(lie_bracket(a, b), Expr(-1) * lie_bracket(b, a)));
                const auto jac = lie_bracket(a, lie_bracket(b, c)) +
                                 lie_bracket(b, lie_bracket(c, a)) +
                                 lie_bracket(c, lie_bracket(a, b));
                CHECK(normalized(jac).is_zero());
                CHECK(lie_bracket(a, a).is_zero());
            }
        }
}

TEST_CASE("finite parts close and satisfy Jacobi") {
    for (int n = 1; n <= 4; ++n)
        for (Regime r : {Regime::Integer, Regime::Fractional}) {
            auto gens = generators({n, r});
            gens.pop_back();  // drop the infinite family
            const auto sc = structure_constants(fields(gens));
            CHECK(sc.antisymmetric());
            CHECK(sc.jacobi());
        }
}

TEST_CASE("decomposition with rational functions of alpha") {
    const auto a = vf("A", "0", {"alpha + 1"}, "0");
    const auto target = vf("T", "0", {"alpha"}, "0");
    const auto d = decompose_in_basis(target, {a});
    REQUIRE(d.in_span);
    CHECK(d.coeffs[0].str() == "(alpha)/(alpha + 1)");
    CHECK(d.str({"A"}) == "(alpha)/(alpha + 1)*A");
    CHECK(decompose_in_basis(VectorField::zero(1), {a}).is_zero());
    CHECK_FALSE(decompose_in_basis(vf("X", "0", {"x"}, "0"), {a}).in_span);
}

TEST_CASE("canonical matches") {
    const auto g3 = generators({3, Regime::Integer});
    const auto rot = fields(select(g3, {GenClass::Rotation}));
    const auto so3 = match_canonical(rot, CanonicalPattern::so(3));
    CHECK(so3.matched);
    CHECK(derived_series(rot) == std::vector<int>{3, 3});

    const auto g4 = generators({4, Regime::Fractional});
    const auto rot4 = fields(select(g4, {GenClass::Rotation}));
    // printed order is not J12..J34; reorder by the index pair each rotation mixes
    std::vector<VectorField> ordered;
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})
        for (const auto& f : rot4)
            if (!equals_zero(f.xi[a - 1]) && !equals_zero(f.xi[b - 1])) ordered.push_back(f);
    REQUIRE(ordered.size() == 6);
    CHECK(match_canonical(ordered, CanonicalPattern::so(4)).matched);
    CHECK(derived_series(ordered) == std::vector<int>{6, 6});

    const auto g1 = generators({1, Regime::Integer});
    const std::vector<VectorField> sl2{by_name(g1, "G3").field, by_name(g1, "G4").field,
                                       by_name(g1, "G5").field};
    const std::vector<VectorField> central{by_name(g1, "G6").field};
    const auto m = match_canonical(sl2, CanonicalPattern::sl2(), central);
    CHECK(m.matched);
    CHECK_FALSE(match_canonical(sl2, CanonicalPattern::sl2()).matched);  // needs u d_u
    CHECK(derived_series(structure_constants(sl2, central)) == std::vector<int>{3, 3});

    // abelian translations cannot be so(3)
    const auto tr = fields(select(g3, {GenClass::SpaceTranslation}));
    const auto bad = match_canonical(tr, CanonicalPattern::so(3));
    CHECK_FALSE(bad.matched);
    CHECK_FALSE(bad.reason.empty());
    CHECK_THROWS(match_canonical(rot, CanonicalPattern::so(4)));
}

TEST_CASE("so(n) pattern matches the rotation fields for n up to 6") {
    for (int n = 3; n <= 6; ++n) {
        std::vector<VectorField> j;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                auto f = VectorField::zero(n);
                f.xi[static_cast<std::size_t>(b - 1)] = Expr::x(static_cast<VarIndex>(a));
                f.xi[static_cast<std::size_t>(a - 1)] = -Expr::x(static_cast<VarIndex>(b));
                j.push_back(f);
            }
        const auto sc = structure_constants(j);
        const auto p = CanonicalPattern::so(n);
        for (std::size_t a = 0; a < j.size(); ++a)
            for (std::size_t b = 0; b < j.size(); ++b)
                for (std::size_t k = 0; k < j.size(); ++k)
                    CHECK(sc.at(a, b, k).constant() == p.constant(a, b, k));
    }
}

TEST_CASE("derived series") {
    const auto g1 = generators({1, Regime::Integer});
    const std::vector<VectorField> heis{by_name(g1, "G1").field, by_name(g1, "G2").field,
                                        by_name(g1, "G6").field};
    CHECK(derived_series(heis) == std::vector<int>{3, 1, 0});
    const std::vector<VectorField> ab{by_name(g1, "G1").field, by_name(g1, "G3").field};
    CHECK(derived_series(ab) == std::vector<int>{2, 0});
    const auto f1 = generators({1, Regime::Fractional});
    const std::vector<VectorField> aff{by_name(f1, "G01").field, by_name(f1, "G02").field};
    CHECK(derived_series(aff) == std::vector<int>{2, 1, 0});
    const std::vector<VectorField> open{vf("A", "0", {"1"}, "0"), vf("B", "0", {"0"}, "x^2")};
    CHECK_THROWS_AS(derived_series(open), NotClosed);
    CHECK_FALSE(closure_report(open).closed);
    CHECK(closure_report(open).offending.size() == 1);
}

TEST_CASE("table rendering") {
    const auto g = fields(generators({1, Regime::Fractional}));
    const auto t = commutator_table(g);
    const auto j = to_json(t);
    CHECK(j["basis"][1] == "G02");
    bool found = false;
    for (const auto& e : j["entries"])
        if (e["i"] == 0 && e["j"] == 1) {
            CHECK(e["coeffs"]["G01"] == "alpha");
            found = true;
        }
    CHECK(found);
    const auto tex = to_latex(t);
    CHECK(tex.find("$[\\Gamma_{01},\\Gamma_{02}]_{LB}=\\alpha \\Gamma_{01}$") != std::string::npos);
    CHECK(tex.rfind("\\begin{tabular}{lll}", 0) == 0);

    std::vector<VectorField> dup{g[0], g[0]};
    CHECK_THROWS(commutator_table(dup));
}
