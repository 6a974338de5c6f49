#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odyn/classifier.hpp"
#include "odyn/endomorphism.hpp"

namespace odyn {

struct invalid_witness_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct insufficient_samples_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvarianceCertificate {
    bool ok;
    MultiPoly difference;  // normalized difference polynomial, zero on success
};

/// Checks f o phi = f by symbolic composition. Constant witnesses are
/// rejected with invalid_witness_error.
InvarianceCertificate verify_invariant(const GroupEndomorphism& phi,
                                       const MultiRationalFunction& f);

/// Verdict-aware verification: original-coordinate witnesses check against
/// phi itself, Jordan-coordinate witnesses against the stored model or (for
/// monomials) the eigenvalue-product certificate.
InvarianceCertificate verify_fibration(const GroupEndomorphism& phi, const Verdict& v);

struct DensityOptions {
    unsigned long bit_budget = 1000000;  // exact evaluation cap per entry, in bits
    unsigned long seed = 0;              // modular prime derivation
    bool parallel = true;                // OpenMP row assembly
    /// Entries at most this many bits go through plain fraction-free
    /// elimination; larger (but in-budget) problems use the modular-first
    /// hybrid with exact certification. Both produce exact reports.
    unsigned long exact_cutoff_bits = 512;
};

struct DensityReport {
    unsigned degree = 0;
    unsigned long steps = 0;
    std::size_t additive_vars = 0;  // k, for rendering the variables
    enum class Outcome { FullRank, VanishingPolynomial, RankDeficientModular } outcome;
    std::size_t matrix_rank = 0;
    std::size_t monomial_count = 0;
    bool modular_evaluation = false;
    std::optional<MultiPoly> vanishing;  // certified, exact path only

    /// "FullRank", "ProbablyFullRank" (full rank via modular agreement),
    /// "VanishingPolynomial" or "RankDeficientModular".
    std::string label() const;
};

/// Rank test of the (steps+1) x M evaluation matrix of all monomials of total
/// degree <= degree along the orbit of alpha. Requires steps >= M.
DensityReport density_check(const GroupEndomorphism& phi, const OrbitPoint& alpha,
                            unsigned degree, unsigned long steps,
                            const DensityOptions& options = {});

/// density_check restricted to orbit indices start, start+stride, ... <= steps.
std::vector<DensityReport> suffix_density_check(
    const GroupEndomorphism& phi, const OrbitPoint& alpha, unsigned degree,
    const std::vector<std::pair<unsigned long, unsigned long>>& progressions,
    unsigned long steps, const DensityOptions& options = {});

struct GrowthReport {
    unsigned long steps = 0;
    Rational max_ratio;  // max over n of ||A^n p||_inf / (n+1)
    enum class Verdict { LinearlyBounded, ExceedsLinear } verdict;
    std::optional<unsigned long> first_violation;
    std::vector<Int> sup_norms;  // ||A^n p||_inf for n = 0..steps
    std::optional<unsigned long> cyclotomic_order;
    std::optional<UnivariatePoly> cyclotomic_factor;
};

/// Trajectory growth test: fits the line through the observations at n =
/// steps/2 and n = steps and reports the first n >= 1 that exceeds it. The
/// characteristic polynomial's cyclotomic factor (if any) is reported
/// alongside as the structural cross-check.
GrowthReport growth_check(const ZMatrix& a, const std::vector<Int>& p, unsigned long steps);

namespace density_detail {

/// Preprocessed orbit point for row assembly.
struct PointData {
    std::vector<Rational> additive;
    bool exponent_form = false;
    const std::vector<Int>* primes = nullptr;
    std::vector<std::vector<Int>> expo;
    std::vector<Rational> torus_explicit;
};

PointData preprocess(const OrbitPoint& p);

/// Exact values of one monomial at every point; serial reference.
void monomial_column_serial(const std::vector<PointData>& points, const Monomial& m,
                            std::size_t k, std::vector<Rational>& out);
/// Same contract, OpenMP-parallel across points. Results are bit-identical
/// to the serial reference.
void monomial_column_parallel(const std::vector<PointData>& points, const Monomial& m,
                              std::size_t k, std::vector<Rational>& out);

/// Row-major assembly of the full evaluation matrix (row r = all monomial
/// values at orbit point r); serial reference and the OpenMP kernel that
/// parallelizes across orbit indices. Outputs are bit-identical.
void assemble_rows_serial(const std::vector<PointData>& points,
                          const std::vector<Monomial>& monomials, std::size_t k,
                          std::vector<std::vector<Rational>>& out);
void assemble_rows_parallel(const std::vector<PointData>& points,
                            const std::vector<Monomial>& monomials, std::size_t k,
                            std::vector<std::vector<Rational>>& out);

/// Monomials of total degree <= d in nvars variables, graded-lex ascending.
std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, unsigned d);

}  // namespace density_detail

}  // namespace odyn
