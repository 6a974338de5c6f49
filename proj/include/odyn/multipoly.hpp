#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "odyn/poly.hpp"
#include "odyn/rational.hpp"

namespace odyn {

/// Simple extension Q(a) given by one monic irreducible minimal polynomial.
class NumberField {
public:
    explicit NumberField(UnivariatePoly minpoly);
    const UnivariatePoly& minpoly() const { return minpoly_; }
    unsigned degree() const { return static_cast<unsigned>(minpoly_.degree()); }

private:
    UnivariatePoly minpoly_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

/// Element of Q (null field) or of a designated simple extension, stored as
/// a reduced polynomial in the generator.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(const Rational& r);  // rational constant, field-free
    FieldElem(long v) : FieldElem(Rational(v)) {}

    static FieldElem generator(const NumberFieldPtr& field);
    static FieldElem from_poly(const NumberFieldPtr& field, const UnivariatePoly& rep);

    const NumberFieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;
    const UnivariatePoly& rep() const { return rep_; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem inverse() const;
    FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    std::string to_string(const std::string& gen_name = "a") const;

private:
    NumberFieldPtr field_;  // null for plain rationals
    UnivariatePoly rep_;    // reduced mod minpoly when field_ set

    static void unify(FieldElem& a, FieldElem& b);
};

/// Exponent vector; graded lexicographic order with x1 > x2 > ... .
struct Monomial {
    std::vector<unsigned> e;

    unsigned total_degree() const;
    bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Comparator: true when a is graded-lex greater than b.
bool monomial_greater(const Monomial& a, const Monomial& b);

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return monomial_greater(a, b); }
};

/// Multivariate polynomial; terms held leading-first under graded lex.
class MultiPoly {
public:
    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}
    static MultiPoly constant(std::size_t nvars, const FieldElem& v);
    static MultiPoly variable(std::size_t nvars, std::size_t index, unsigned power = 1);
    static MultiPoly monomial(std::size_t nvars, const Monomial& m, const FieldElem& coeff);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    FieldElem constant_value() const;
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, FieldElem, MonomialGreater>& terms() const { return terms_; }
    unsigned total_degree() const;

    void add_term(const Monomial& m, const FieldElem& coeff);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const FieldElem& s) const;
    MultiPoly pow(unsigned e) const;
    bool operator==(const MultiPoly& o) const;

    FieldElem eval(const std::vector<FieldElem>& point) const;

    std::string to_string(const std::vector<std::string>& var_names) const;

private:
    std::size_t nvars_;
    std::map<Monomial, FieldElem, MonomialGreater> terms_;
};

/// Rational function num/den in normalized form: shared monomial factors and
/// the leading coefficient of the denominator are cancelled.
class MultiRationalFunction {
public:
    explicit MultiRationalFunction(std::size_t nvars = 0);
    MultiRationalFunction(MultiPoly num, MultiPoly den);

    static MultiRationalFunction from_poly(MultiPoly p);
    /// Laurent monomial with integer exponents (negatives go to the denominator).
    static MultiRationalFunction laurent(std::size_t nvars, const std::vector<Int>& exponents,
                                         const FieldElem& coeff);
    static MultiRationalFunction variable(std::size_t nvars, std::size_t index);
    static MultiRationalFunction constant(std::size_t nvars, const FieldElem& v);

    std::size_t nvars() const { return num_.nvars(); }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const;

    MultiRationalFunction operator+(const MultiRationalFunction& o) const;
    MultiRationalFunction operator-(const MultiRationalFunction& o) const;
    MultiRationalFunction operator*(const MultiRationalFunction& o) const;
    MultiRationalFunction operator/(const MultiRationalFunction& o) const;
    MultiRationalFunction pow(long e) const;

    FieldElem eval(const std::vector<FieldElem>& point) const;

    std::string to_string(const std::vector<std::string>& var_names) const;

private:
    void normalize();
    MultiPoly num_, den_;
};

/// True iff num_f * den_g - num_g * den_f vanishes identically.
bool rational_functions_equal(const MultiRationalFunction& f, const MultiRationalFunction& g);

/// Substitutes images[i] for variable i throughout f.
MultiRationalFunction substitute_variables(const MultiRationalFunction& f,
                                           const std::vector<MultiRationalFunction>& images);

/// Standard variable names x1..xk, y1..yl.
std::vector<std::string> variable_names(std::size_t k, std::size_t l);

}  // namespace odyn
