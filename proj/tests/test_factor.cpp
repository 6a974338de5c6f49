#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "odyn/poly.hpp"

using namespace odyn;

namespace {

UnivariatePoly poly_of(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return UnivariatePoly(std::move(c));
}

UnivariatePoly reassemble(const Factorization& f) {
    UnivariatePoly p = UnivariatePoly::constant(f.content);
    for (const auto& [factor, mult] : f.factors) p = p * factor.pow(mult);
    return p;
}

// Independent generator: cyclotomic polynomials by recursive division of x^n - 1.
UnivariatePoly cyclotomic_by_division(unsigned long n) {
    static std::map<unsigned long, UnivariatePoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    UnivariatePoly p = UnivariatePoly::xn_minus_one(n);
    for (unsigned long d = 1; d < n; ++d)
        if (n % d == 0) p = p / cyclotomic_by_division(d);
    cache[n] = p;
    return p;
}

}  // namespace

TEST_CASE("factor_over_rationals examples") {
    auto f = factor_over_rationals(poly_of({-1, 0, 1}));  // x^2-1
    REQUIRE(f.factors.size() == 2);
    CHECK(f.content == Rational(1));
    CHECK(f.factors[0].factor == poly_of({-1, 1}));
    CHECK(f.factors[1].factor == poly_of({1, 1}));

    auto g = factor_over_rationals(poly_of({-2, 0, 1}));  // x^2-2 irreducible
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].factor == poly_of({-2, 0, 1}));
    CHECK(g.factors[0].multiplicity == 1);

    auto h = factor_over_rationals(poly_of({-1, 0, 0, 0, 1}));  // x^4-1
    REQUIRE(h.factors.size() == 3);
    CHECK(h.factors[0].factor == poly_of({-1, 1}));
    CHECK(h.factors[1].factor == poly_of({1, 1}));
    CHECK(h.factors[2].factor == poly_of({1, 0, 1}));

    CHECK_THROWS_AS(factor_over_rationals(UnivariatePoly()), domain_error);
}

TEST_CASE("factorization handles multiplicities and content") {
    // (x+1)^2 (x-2)^3
    UnivariatePoly p = poly_of({1, 1}).pow(2) * poly_of({-2, 1}).pow(3);
    auto f = factor_over_rationals(p);
    REQUIRE(f.factors.size() == 2);
    CHECK(reassemble(f) == p);
    std::map<int, unsigned> mults;
    for (const auto& [factor, mult] : f.factors) mults[factor.degree()] = mult;
    (void)mults;
    bool saw2 = false, saw3 = false;
    for (const auto& [factor, mult] : f.factors) {
        if (factor == poly_of({1, 1})) {
            CHECK(mult == 2);
            saw2 = true;
        }
        if (factor == poly_of({-2, 1})) {
            CHECK(mult == 3);
            saw3 = true;
        }
    }
    CHECK(saw2);
    CHECK(saw3);

    // 6x^2+5x+1 = 6 (x+1/2)(x+1/3)
    auto g = factor_over_rationals(poly_of({1, 5, 6}));
    CHECK(g.content == Rational(6));
    REQUIRE(g.factors.size() == 2);
    CHECK(reassemble(g) == poly_of({1, 5, 6}));
}

TEST_CASE("nonmonic with large leading coefficient") {
    // (100x+3)(100x-7)
    UnivariatePoly p = poly_of({3, 100}) * poly_of({-7, 100});
    auto f = factor_over_rationals(p);
    REQUIRE(f.factors.size() == 2);
    CHECK(reassemble(f) == p);
}

TEST_CASE("factorization round trip on random polynomials") {
    std::mt19937_64 rng(987654);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> deg(1, 8);
    int done = 0;
    while (done < 200) {
        std::vector<Rational> c(deg(rng) + 1);
        for (auto& v : c) v = Rational(coeff(rng));
        UnivariatePoly p{std::move(c)};
        if (p.is_zero()) continue;
        auto f = factor_over_rationals(p);
        CHECK(reassemble(f) == p);
        for (const auto& [factor, mult] : f.factors) {
            CHECK(factor.is_monic());
            CHECK(mult >= 1);
        }
        ++done;
    }
}

TEST_CASE("is_cyclotomic examples") {
    CHECK(is_cyclotomic(poly_of({-1, 1})) == 1);      // x-1
    CHECK(is_cyclotomic(poly_of({1, 1, 1})) == 3);    // x^2+x+1
    CHECK_FALSE(is_cyclotomic(poly_of({-1, -1, 1})).has_value());  // x^2-x-1
    CHECK_THROWS_AS(is_cyclotomic(poly_of({-1, 0, 1})), domain_error);  // reducible
}

TEST_CASE("is_cyclotomic recognizes every cyclotomic up to 30") {
    for (unsigned long n = 1; n <= 30; ++n) {
        UnivariatePoly phi = cyclotomic_by_division(n);
        auto got = is_cyclotomic(phi);
        REQUIRE(got.has_value());
        CHECK(*got == n);
    }
}

TEST_CASE("swinnerton-dyer quartic stays irreducible") {
    // x^4 - 10x^2 + 1, minimal polynomial of sqrt(2)+sqrt(3)
    auto f = factor_over_rationals(poly_of({1, 0, -10, 0, 1}));
    CHECK(f.factors.size() == 1);
    CHECK(f.factors[0].multiplicity == 1);
}

TEST_CASE("x^n - 1 factors into the cyclotomics of the divisors") {
    for (unsigned long n = 1; n <= 24; ++n) {
        auto fac = factor_over_rationals(UnivariatePoly::xn_minus_one(n));
        CHECK(fac.content == Rational(1));
        std::vector<UnivariatePoly> expected;
        for (unsigned long d = 1; d <= n; ++d)
            if (n % d == 0) expected.push_back(cyclotomic_by_division(d));
        REQUIRE(fac.factors.size() == expected.size());
        for (const auto& [factor, mult] : fac.factors) {
            CHECK(mult == 1);
            bool found = false;
            for (const auto& e : expected) found = found || e == factor;
            CHECK(found);
        }
    }
}

TEST_CASE("factorization handles higher degrees with repeated structure") {
    std::mt19937_64 rng(112233);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> deg(1, 4);
    for (int trial = 0; trial < 25; ++trial) {
        // product of three random polynomials, one squared
        UnivariatePoly parts[3];
        for (auto& p : parts) {
            std::vector<Rational> c(deg(rng) + 1);
            for (auto& v : c) v = Rational(coeff(rng));
            p = UnivariatePoly(std::move(c));
            if (p.is_zero()) p = UnivariatePoly::x();
        }
        UnivariatePoly prod = parts[0] * parts[1] * parts[2] * parts[2];
        if (prod.degree() < 1) continue;
        auto fac = factor_over_rationals(prod);
        CHECK(reassemble(fac) == prod);
    }
}
