#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "odyn/rational.hpp"

namespace odyn {

/// Dense univariate polynomial over Q. Coefficient i is the coefficient of
/// x^i; no trailing zero is stored, the zero polynomial has an empty list
/// and degree -1.
class UnivariatePoly {
public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UnivariatePoly zero() { return UnivariatePoly(); }
    static UnivariatePoly constant(const Rational& v);
    static UnivariatePoly x();
    static UnivariatePoly monomial(const Rational& coeff, std::size_t degree);
    /// x^n - 1
    static UnivariatePoly xn_minus_one(unsigned long n);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    UnivariatePoly monic() const;

    UnivariatePoly operator-() const;
    UnivariatePoly operator+(const UnivariatePoly& o) const;
    UnivariatePoly operator-(const UnivariatePoly& o) const;
    UnivariatePoly operator*(const UnivariatePoly& o) const;
    UnivariatePoly operator*(const Rational& s) const;
    bool operator==(const UnivariatePoly& o) const { return c_ == o.c_; }
    bool operator!=(const UnivariatePoly& o) const { return c_ != o.c_; }

    /// Euclidean division; divisor must be nonzero.
    std::pair<UnivariatePoly, UnivariatePoly> divmod(const UnivariatePoly& divisor) const;
    UnivariatePoly operator/(const UnivariatePoly& o) const { return divmod(o).first; }
    UnivariatePoly operator%(const UnivariatePoly& o) const { return divmod(o).second; }
    /// True iff o divides *this with zero remainder.
    bool divisible_by(const UnivariatePoly& o) const;

    UnivariatePoly derivative() const;
    UnivariatePoly pow(unsigned long e) const;
    Rational eval(const Rational& at) const;
    /// f(s*x) and f(x + s)
    UnivariatePoly scale_arg(const Rational& s) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Monic gcd; rejects the case where both inputs are zero.
UnivariatePoly poly_gcd(const UnivariatePoly& a, const UnivariatePoly& b);

/// Resultant of two nonzero polynomials.
Rational resultant(const UnivariatePoly& f, const UnivariatePoly& g);

/// Content/primitive split of the integer-scaled polynomial: returns integer
/// coefficients F with content 1 and positive leading coefficient, plus the
/// rational c such that input = c * F.
std::pair<std::vector<Int>, Rational> primitive_integer_parts(const UnivariatePoly& p);

UnivariatePoly poly_from_int_coeffs(const std::vector<Int>& coeffs);

struct PolyFactor {
    UnivariatePoly factor;  // monic irreducible
    unsigned multiplicity;
};

struct Factorization {
    Rational content;  // input = content * prod factor^multiplicity
    std::vector<PolyFactor> factors;
};

/// Complete factorization into monic irreducibles over Q.
/// Squarefree split, then factorization modulo a good prime, Hensel lifting
/// and subset recombination.
Factorization factor_over_rationals(const UnivariatePoly& p);

bool is_irreducible_over_rationals(const UnivariatePoly& p);

/// If p (monic irreducible) is the n-th cyclotomic polynomial, returns n.
/// Candidates are all n with phi(n) = deg p; each is tested by dividing x^n - 1.
std::optional<unsigned long> is_cyclotomic(const UnivariatePoly& p);

}  // namespace odyn
