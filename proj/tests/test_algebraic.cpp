#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odyn/dependence.hpp"

using namespace odyn;

namespace {

UnivariatePoly poly_of(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return UnivariatePoly(std::move(c));
}

AlgebraicNumber sqrt_of(long n) {
    // positive root of x^2 - n
    auto roots = isolate_roots(poly_of({-n, 0, 1}));
    REQUIRE(roots.size() == 2);
    return roots[1];  // sorted by real part: the positive one is second
}

}  // namespace

TEST_CASE("count_roots_in_box counts complex roots exactly") {
    UnivariatePoly f = poly_of({1, 0, 1});  // x^2+1, roots +-i
    ComplexBox around_i{make_rational(-1, 3), make_rational(2, 5), make_rational(1, 2),
                        make_rational(3, 2)};
    CHECK(count_roots_in_box(f, around_i) == 1);
    ComplexBox both{Rational(-2), Rational(2), Rational(-2), Rational(2)};
    CHECK(count_roots_in_box(f, both) == 2);
    ComplexBox none{Rational(1), Rational(2), Rational(1), Rational(2)};
    CHECK(count_roots_in_box(f, none) == 0);
}

TEST_CASE("isolate_roots finds and orders all roots") {
    auto roots = isolate_roots(poly_of({-2, 0, 1}));  // x^2-2
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].box().re_hi < 0);
    CHECK(roots[1].box().re_lo > 0);
    auto cyclo = isolate_roots(poly_of({1, 1, 1}));  // x^2+x+1
    REQUIRE(cyclo.size() == 2);
    CHECK(cyclo[0].box().im_hi < 0);
    CHECK(cyclo[1].box().im_lo > 0);
}

TEST_CASE("product of sqrt(2) with itself is 2") {
    AlgebraicNumber r = sqrt_of(2);
    AlgebraicNumber p = alg_mul(r, r);
    CHECK(p.is_rational());
    CHECK(p.rational_value() == 2);
    CHECK(p.minpoly() == poly_of({-2, 1}));
}

TEST_CASE("product with the inverse is 1") {
    AlgebraicNumber r = sqrt_of(3);
    AlgebraicNumber inv = alg_inverse(r);
    AlgebraicNumber p = alg_mul(r, inv);
    CHECK(p.is_rational());
    CHECK(p.rational_value() == 1);
}

TEST_CASE("sqrt(2) * sqrt(3) has minimal polynomial x^2 - 6") {
    AlgebraicNumber p = alg_mul(sqrt_of(2), sqrt_of(3));
    CHECK(p.minpoly() == poly_of({-6, 0, 1}));
}

TEST_CASE("refinement never changes the selected root") {
    AlgebraicNumber a = sqrt_of(2);
    AlgebraicNumber before = alg_mul(a, sqrt_of(3));
    Rational tiny = make_rational(1, Int("1000000000000000000000000000000"));
    a.refine(tiny);
    CHECK(a.box().width() <= tiny);
    CHECK(a.box().re_lo > 0);
    AlgebraicNumber after = alg_mul(a, sqrt_of(3));
    CHECK(before.minpoly() == after.minpoly());
}

TEST_CASE("root of unity detection") {
    CHECK(is_root_of_unity(AlgebraicNumber::from_rational(Rational(1))) == 1);
    CHECK(is_root_of_unity(AlgebraicNumber::from_rational(Rational(-1))) == 2);
    CHECK_FALSE(is_root_of_unity(AlgebraicNumber::from_rational(Rational(2))).has_value());
    auto i_roots = isolate_roots(poly_of({1, 0, 1}));
    CHECK(is_root_of_unity(i_roots[0]) == 4);
    CHECK_THROWS_AS(is_root_of_unity(AlgebraicNumber::from_rational(Rational(0))), domain_error);
}

TEST_CASE("quotient-of-roots order detection") {
    AlgebraicNumber two = AlgebraicNumber::from_rational(Rational(2));
    AlgebraicNumber minus_two = AlgebraicNumber::from_rational(Rational(-2));
    AlgebraicNumber three = AlgebraicNumber::from_rational(Rational(3));
    CHECK(quotient_is_root_of_unity(two, two) == 1);
    CHECK(quotient_is_root_of_unity(two, minus_two) == 2);
    CHECK_FALSE(quotient_is_root_of_unity(two, three).has_value());
    CHECK_THROWS_AS(quotient_is_root_of_unity(two, AlgebraicNumber::from_rational(Rational(0))),
                    domain_error);
    // conjugate quotient: golden ratio over its conjugate is not a root of unity
    auto golden = isolate_roots(poly_of({-1, -1, 1}));
    CHECK_FALSE(quotient_is_root_of_unity(golden[0], golden[1]).has_value());
    // i over -i has order 2... (i / -i = -1)
    auto imag = isolate_roots(poly_of({1, 0, 1}));
    CHECK(quotient_is_root_of_unity(imag[0], imag[1]) == 2);
}

TEST_CASE("equals distinguishes conjugates") {
    auto roots = isolate_roots(poly_of({-2, 0, 1}));
    CHECK(roots[0].equals(roots[0]));
    CHECK_FALSE(roots[0].equals(roots[1]));
    CHECK_FALSE(roots[0].equals(AlgebraicNumber::from_rational(Rational(2))));
}

TEST_CASE("norm magnitude comes from the constant term") {
    CHECK(sqrt_of(2).norm_abs() == 2);
    CHECK(AlgebraicNumber::from_rational(make_rational(-3, 2)).norm_abs() == make_rational(3, 2));
}

TEST_CASE("root of unity orders are minimal and certified by powers") {
    // primitive 6th root: a^6 = 1 symbolically and a^m != 1 for m < 6
    auto zeta6 = isolate_roots(poly_of({1, -1, 1}));  // x^2 - x + 1
    REQUIRE(is_root_of_unity(zeta6[1]) == 6);
    for (long m = 1; m <= 6; ++m) {
        AlgebraicNumber p = alg_pow(zeta6[1], m);
        bool is_one = p.is_rational() && p.rational_value() == 1;
        CHECK(is_one == (m == 6));
    }
    // primitive 4th root
    auto i_roots = isolate_roots(poly_of({1, 0, 1}));
    for (long m = 1; m <= 4; ++m) {
        AlgebraicNumber p = alg_pow(i_roots[1], m);
        bool is_one = p.is_rational() && p.rational_value() == 1;
        CHECK(is_one == (m == 4));
    }
}

TEST_CASE("quartic fields: sqrt(2)+sqrt(3) and its conjugates") {
    // x^4 - 10x^2 + 1 has roots +-sqrt(2)+-sqrt(3)
    auto roots = isolate_roots(poly_of({1, 0, -10, 0, 1}));
    REQUIRE(roots.size() == 4);
    // product of the largest and smallest roots: (s2+s3)(-s2-s3) = -(5+2*sqrt(6))
    AlgebraicNumber p = alg_mul(roots[0], roots[3]);
    CHECK(p.degree() == 2);
    CHECK(p.minpoly() == poly_of({1, 10, 1}));  // x^2 + 10x + 1
    // product of conjugate pair (s2+s3)(s2-s3) = -1
    AlgebraicNumber q = alg_mul(roots[1], roots[3]);
    bool pm_one = q.is_rational() && (q.rational_value() == -1 || q.rational_value() == 1);
    CHECK(pm_one);
    // norm: product of all four roots equals the constant term
    AlgebraicNumber all = alg_mul(alg_mul(roots[0], roots[1]), alg_mul(roots[2], roots[3]));
    REQUIRE(all.is_rational());
    CHECK(all.rational_value() == 1);
}

TEST_CASE("twelfth root of unity arithmetic") {
    // Phi_12 = x^4 - x^2 + 1
    auto roots = isolate_roots(poly_of({1, 0, -1, 0, 1}));
    REQUIRE(roots.size() == 4);
    for (const auto& r : roots) CHECK(is_root_of_unity(r) == 12);
    // zeta^12 = 1 via powering
    AlgebraicNumber z12 = alg_pow(roots[0], 12);
    REQUIRE(z12.is_rational());
    CHECK(z12.rational_value() == 1);
    // zeta^6 = -1
    AlgebraicNumber z6 = alg_pow(roots[0], 6);
    REQUIRE(z6.is_rational());
    CHECK(z6.rational_value() == -1);
}

TEST_CASE("products across different quadratic fields stay exact") {
    auto s2 = isolate_roots(poly_of({-2, 0, 1}))[1];
    auto s5 = isolate_roots(poly_of({-5, 0, 1}))[1];
    auto s10 = alg_mul(s2, s5);
    CHECK(s10.minpoly() == poly_of({-10, 0, 1}));
    // (sqrt10)^2 / 10 = 1 certifies the selection
    AlgebraicNumber sq = alg_mul(s10, s10);
    REQUIRE(sq.is_rational());
    CHECK(sq.rational_value() == 10);
    // inverse round trip on an irrational of degree 4
    auto quart = isolate_roots(poly_of({1, 0, -10, 0, 1}))[2];
    AlgebraicNumber inv = alg_inverse(quart);
    AlgebraicNumber unit = alg_mul(quart, inv);
    REQUIRE(unit.is_rational());
    CHECK(unit.rational_value() == 1);
}

TEST_CASE("dependence between sqrt(2) and i*sqrt(2) across fields") {
    // (sqrt2 / (i sqrt2))^4 = (1/i)^4 = 1: a relation mixing a real and a
    // purely imaginary quadratic
    auto real_roots = isolate_roots(poly_of({-2, 0, 1}));   // x^2 - 2
    auto imag_roots = isolate_roots(poly_of({2, 0, 1}));    // x^2 + 2
    auto res = multiplicative_dependence({real_roots[1], imag_roots[1]}, 20);
    REQUIRE(res.kind == DependenceKind::Dependent);
    AlgebraicNumber prod = alg_mul(alg_pow(real_roots[1], res.witness.exponents[0].get_si()),
                                   alg_pow(imag_roots[1], res.witness.exponents[1].get_si()));
    REQUIRE(prod.is_rational());
    CHECK(prod.rational_value() == 1);
}
