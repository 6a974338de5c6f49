#pragma once

#include <optional>
#include <vector>

#include "odyn/poly.hpp"
#include "odyn/rational.hpp"

namespace odyn {

/// Axis-aligned rectangle in the complex plane with rational endpoints.
struct ComplexBox {
    Rational re_lo, re_hi, im_lo, im_hi;

    Rational width() const;
    Rational center_re() const { return (re_lo + re_hi) / 2; }
    Rational center_im() const { return (im_lo + im_hi) / 2; }
    bool contains_zero() const;
    bool contains(const ComplexBox& inner) const;
    bool disjoint(const ComplexBox& other) const;
};

/// Interval product of two boxes (sound enclosure of the set of products).
ComplexBox box_product(const ComplexBox& a, const ComplexBox& b);
/// Sound enclosure of 1/z over a box not containing zero.
ComplexBox box_reciprocal(const ComplexBox& b);

/// Number of roots of a squarefree polynomial strictly inside the box,
/// computed exactly via the winding number of f along the boundary.
/// Throws domain_error if a root lies on the boundary (callers perturb).
int count_roots_in_box(const UnivariatePoly& f, const ComplexBox& box);

/// Exact algebraic number: monic irreducible minimal polynomial plus a
/// refinable complex box isolating one root.
class AlgebraicNumber {
public:
    AlgebraicNumber(UnivariatePoly minpoly, ComplexBox isolating);
    static AlgebraicNumber from_rational(const Rational& r);

    const UnivariatePoly& minpoly() const { return minpoly_; }
    const ComplexBox& box() const { return box_; }
    int degree() const { return minpoly_.degree(); }
    bool is_rational() const { return minpoly_.degree() == 1; }
    Rational rational_value() const;
    bool is_zero() const;

    /// Shrinks the isolation box below the requested width; the selected root
    /// never changes.
    void refine(const Rational& target_width) const;

    /// Absolute value of the norm (product of all conjugates) as a rational.
    Rational norm_abs() const;

    bool equals(const AlgebraicNumber& other) const;

private:
    UnivariatePoly minpoly_;
    mutable ComplexBox box_;
};

/// All complex roots of a monic irreducible polynomial, each isolated in a
/// verified box; deterministic order (by real part, then imaginary part).
std::vector<AlgebraicNumber> isolate_roots(const UnivariatePoly& irreducible);

/// Product a*b: resultant of the minimal polynomials followed by factor
/// selection through the isolation boxes.
AlgebraicNumber alg_mul(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber alg_inverse(const AlgebraicNumber& a);
AlgebraicNumber alg_pow(const AlgebraicNumber& a, long e);

/// Order n if a is a primitive n-th root of unity (n minimal), detected via
/// the cyclotomic test on the minimal polynomial.
std::optional<unsigned long> is_root_of_unity(const AlgebraicNumber& a);
/// Order of a/b when the quotient is a root of unity.
std::optional<unsigned long> quotient_is_root_of_unity(const AlgebraicNumber& a,
                                                       const AlgebraicNumber& b);

}  // namespace odyn
