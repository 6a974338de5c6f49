#pragma once

#include <optional>
#include <vector>

#include "odyn/algebraic.hpp"
#include "odyn/poly.hpp"
#include "odyn/rational.hpp"

namespace odyn {

/// Dense rational matrix, row-major.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const Rational& s) const;
    bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    QMatrix transpose() const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    Rational det() const;
    std::size_t rank() const;
    /// Inverse; throws on singular input.
    QMatrix inverse() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

/// Dense integer matrix, row-major; any shape (square for endomorphisms).
class ZMatrix {
public:
    ZMatrix() : rows_(0), cols_(0) {}
    ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static ZMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ZMatrix operator*(const ZMatrix& o) const;
    ZMatrix operator-(const ZMatrix& o) const;
    bool operator==(const ZMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    ZMatrix transpose() const;
    std::vector<Int> apply(const std::vector<Int>& v) const;
    QMatrix to_rational() const;
    Int det() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

/// Monic characteristic polynomial (exact).
UnivariatePoly char_poly(const QMatrix& a);
UnivariatePoly char_poly(const ZMatrix& a);

QMatrix mat_pow(const QMatrix& m, unsigned long n);
ZMatrix mat_pow(const ZMatrix& m, unsigned long n);

/// Basis of the integer kernel {v : M v = 0}, via Hermite-style column
/// reduction; empty for a trivial kernel. Basis vectors have positive first
/// nonzero entry.
std::vector<std::vector<Int>> integer_kernel(const ZMatrix& m);

/// Default search bound for fixed characters: lcm of all n with phi(n) <= dim
/// (every root-of-unity eigenvalue order divides it).
unsigned long fixed_character_default_period(std::size_t dim);

/// Smallest m <= max_period with a nonzero integer w fixed by (A^T)^m,
/// found through integer_kernel((A^T)^m - I). max_period = 0 uses the
/// default bound.
std::optional<std::pair<std::vector<Int>, unsigned long>> fixed_character(
    const ZMatrix& a, unsigned long max_period = 0);

struct JordanFactor {
    UnivariatePoly minpoly;             // monic irreducible factor of char_poly
    std::vector<unsigned> block_sizes;  // descending, counted per root
    std::vector<AlgebraicNumber> roots; // all conjugate roots, isolation order
};

struct JordanStructure {
    std::vector<JordanFactor> factors;  // sorted by degree, then coefficients
    std::size_t dimension = 0;

    std::size_t total_blocks_of_size(unsigned size) const;
    unsigned max_block_size() const;
    bool diagonalizable() const { return max_block_size() <= 1; }
};

/// Block data of the Jordan form recovered from rank sequences of m_i(A)^j;
/// the input must be nonsingular (dominance).
JordanStructure jordan_structure(const QMatrix& a);

/// Exact rational Jordan basis when the characteristic polynomial splits
/// over Q: returns P with P^{-1} A P in Jordan form, plus the Jordan form
/// itself. The block layout follows the JordanStructure ordering (factors
/// sorted, block sizes descending within a factor).
struct RationalJordan {
    QMatrix basis;   // P
    QMatrix jordan;  // J = P^{-1} A P
    std::vector<Rational> eigenvalue_per_block;
    std::vector<unsigned> size_per_block;
};
std::optional<RationalJordan> rational_jordan(const QMatrix& a);

}  // namespace odyn
