#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odyn/io.hpp"

using namespace odyn;

TEST_CASE("problem spec parsing and validation") {
    auto spec = parse_problem_spec_text(
        R"({"additive": [["2","1/2"],["0","3"]], "torus": [[2,1],[1,1]],)"
        R"( "options": {"bound": 8, "degree": 3, "steps": 25, "seed": 7}})");
    CHECK(spec.endo.k() == 2);
    CHECK(spec.endo.l() == 2);
    CHECK(spec.endo.additive.at(0, 1) == make_rational(1, 2));
    CHECK(spec.endo.torus.at(0, 0) == 2);
    CHECK(spec.options.bound == 8);
    CHECK(spec.options.degree == 3);
    CHECK(spec.options.steps == 25);
    CHECK(spec.options.seed == 7);

    CHECK_THROWS_AS(parse_problem_spec_text("{}"), parse_error);
    CHECK_THROWS_AS(parse_problem_spec_text(R"({"additive": [["1","2"]]})"), parse_error);
    CHECK_THROWS_AS(parse_problem_spec_text(R"({"additive": [["1","x"],["0","1"]]})"), parse_error);
    // dominance is validated on load
    CHECK_THROWS_AS(parse_problem_spec_text(R"({"torus": [[1,1],[1,1]]})"), dominance_error);
}

TEST_CASE("rational function term lists round trip") {
    // (x1^2 - 3/2 x2) / x2 over Q
    MultiPoly num(2), den(2);
    num.add_term(Monomial{{2, 0}}, FieldElem(Rational(1)));
    num.add_term(Monomial{{0, 1}}, FieldElem(make_rational(-3, 2)));
    den.add_term(Monomial{{0, 1}}, FieldElem(Rational(1)));
    MultiRationalFunction f(num, den);
    json j = rational_function_json(f);
    MultiRationalFunction back = parse_rational_function(j, 2, nullptr);
    CHECK(rational_functions_equal(f, back));
    CHECK(back.num() == f.num());
    CHECK(back.den() == f.den());
}

TEST_CASE("field coefficients round trip through term lists") {
    auto field = std::make_shared<const NumberField>(
        UnivariatePoly(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)}));
    FieldElem a = FieldElem::generator(field);
    MultiPoly num(1), den(1);
    num.add_term(Monomial{{1}}, a);  // a * x1
    den.add_term(Monomial{{0}}, FieldElem(Rational(2)));
    MultiRationalFunction f(num, den);
    json j = rational_function_json(f);
    MultiRationalFunction back = parse_rational_function(j, 1, field);
    CHECK(rational_functions_equal(f, back));
    // an array coefficient without a field is rejected
    CHECK_THROWS_AS(parse_rational_function(j, 1, nullptr), parse_error);
}

TEST_CASE("verdict JSON round trips through the parser") {
    QMatrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 4;
    Verdict v = classify_additive(m, 20);
    json j = verdict_json(v);
    ParsedVerdict parsed = parse_verdict_json(j, 2, 0);
    CHECK(parsed.kind == Verdict::Kind::Fibration);
    CHECK(parsed.coordinates == CoordinateSystem::Original);
    REQUIRE(parsed.fibration.has_value());
    CHECK(rational_functions_equal(*parsed.fibration, *v.fibration));

    // dense witness dimension check
    json dense = {{"kind", "dense"},
                  {"coordinates", "original"},
                  {"witness", {{"additive", {"1"}}, {"torus", json::array()}}}};
    CHECK_THROWS_AS(parse_verdict_json(dense, 2, 0), parse_error);
    ParsedVerdict okdense = parse_verdict_json(dense, 1, 0);
    CHECK(okdense.witness->additive == std::vector<Rational>{Rational(1)});
}

TEST_CASE("algebraic number serialization carries minpoly and box") {
    auto roots = isolate_roots(UnivariatePoly(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)}));
    json j = algebraic_number_json(roots[1]);
    CHECK(j["minpoly"] == json::array({"-2", "0", "1"}));
    CHECK(j["box"].size() == 4);
    // the box encloses sqrt(2)
    Rational lo = parse_rational(j["box"][0].get<std::string>());
    Rational hi = parse_rational(j["box"][1].get<std::string>());
    CHECK(lo * lo < 2);
    CHECK(hi * hi > 2);
}

TEST_CASE("growth and density reports serialize their verdicts") {
    ZMatrix rot(2, 2);
    rot.at(0, 1) = -1;
    rot.at(1, 0) = 1;
    GrowthReport g = growth_check(rot, {Int(1), Int(0)}, 20);
    json gj = growth_json(g);
    CHECK(gj["verdict"] == "LinearlyBounded");
    CHECK(gj["cyclotomic"]["order"] == 4);
    CHECK(gj["sup_norms"].size() == 21);

    QMatrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 4;
    GroupEndomorphism phi{m, ZMatrix()};
    DensityReport d = density_check(phi, make_orbit_point({Rational(1), Rational(1)}, {}), 2, 12);
    json dj = density_json(d, 5);
    CHECK(dj["outcome"] == "VanishingPolynomial");
    CHECK(dj["steps_adjusted_from"] == 5);
    CHECK(dj["vanishing_text"] == "x1^2 - x2");
}
