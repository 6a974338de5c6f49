#pragma once

#include <vector>

#include "odyn/algebraic.hpp"
#include "odyn/rational.hpp"

namespace odyn {

/// Integer exponents c (not all zero) with prod a_i^{c_i} = 1, verified
/// symbolically before being returned.
struct DependenceWitness {
    std::vector<Int> exponents;
};

enum class DependenceKind {
    Dependent,
    Independent,           // certified (all inputs rational: exponent lattice)
    IndependentUpToBound,  // no relation with |c_i| <= bound was found
};

struct DependenceResult {
    DependenceKind kind;
    DependenceWitness witness;  // meaningful only when kind == Dependent
};

/// Decides multiplicative dependence of nonzero algebraic numbers.
/// Rational inputs get an exact verdict through the prime-exponent lattice
/// (with a sign row modulo 2 for the torsion at -1). Otherwise candidate
/// relations with |c_i| <= bound come from lattice reduction on high-precision
/// logarithms and are only accepted after symbolic verification.
DependenceResult multiplicative_dependence(const std::vector<AlgebraicNumber>& nums,
                                           unsigned bound);

/// Exact LLL reduction (delta = 3/4) of an integer row basis.
void lll_reduce(std::vector<std::vector<Int>>& basis);

}  // namespace odyn
