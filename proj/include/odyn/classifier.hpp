#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odyn/dependence.hpp"
#include "odyn/endomorphism.hpp"

namespace odyn {

enum class Provenance {
    Case1,             // one 2-block, dependent eigenvalues: monomial on x_{i+1}
    Case2,             // two 2-blocks: x_a/(l2 x_b) - x_c/(l1 x_d)
    Case3,             // block of size >= 3
    DiagonalMonomial,  // diagonalizable with dependent eigenvalues
    TorusCharacterOrbit,
    DenseAdditive,
    DenseTorus,
    DenseMixed,
};

std::string provenance_name(Provenance p);

enum class CoordinateSystem { Original, Jordan };

struct WitnessPoint {
    std::vector<Rational> additive;  // all ones in Jordan coordinates, or mapped back
    std::vector<Rational> torus;     // pairwise distinct primes
    CoordinateSystem coordinates = CoordinateSystem::Original;
};

/// For monomial fibrations: the eigenvalues and exponents whose product is 1;
/// re-checking the product symbolically re-verifies invariance.
struct MonomialCertificate {
    std::vector<AlgebraicNumber> eigenvalues;
    std::vector<Int> exponents;
};

struct Verdict {
    enum class Kind { Dense, Fibration };

    Kind kind;
    Provenance provenance;
    CoordinateSystem coordinates = CoordinateSystem::Original;
    std::vector<std::string> caveats;
    std::size_t k = 0, l = 0;

    // Fibration payload.
    std::optional<MultiRationalFunction> fibration;
    std::optional<UnivariatePoly> field_minpoly;  // coefficient field when not Q
    /// Verification model for Jordan-coordinate witnesses: image of each
    /// variable under the endomorphism in the witness coordinates. Variables
    /// the witness does not involve map to themselves.
    std::optional<std::vector<MultiRationalFunction>> jordan_images;
    std::optional<MonomialCertificate> monomial_certificate;

    // Dense payload.
    std::optional<WitnessPoint> witness;
    /// Eigenvalue multiset behind a dense additive verdict; the mixed
    /// classifier rechecks joint independence with the witness primes.
    std::vector<AlgebraicNumber> dense_eigenvalues;
};

/// Case 3 invariant 2 x_{m-2}/x_m - x_{m-1}^2/x_m^2 + x_{m-1}/(lambda x_m)
/// on the block starting at `offset` inside an ambient space of nvars
/// variables. Requires m >= 3 and lambda nonzero.
MultiRationalFunction build_invariant_case3(const FieldElem& lambda, unsigned m,
                                            std::size_t offset, std::size_t nvars);

/// Case 2 invariant x_a/(l2 x_b) - x_c/(l1 x_d) over two 2-blocks at the
/// given offsets.
MultiRationalFunction build_invariant_case2(const FieldElem& lambda1, std::size_t offset1,
                                            const FieldElem& lambda2, std::size_t offset2,
                                            std::size_t nvars);

/// Decision procedure on the additive block (k variables, no torus part).
Verdict classify_additive(const QMatrix& a1, unsigned bound);

/// Decision procedure on the torus block (l variables, no additive part).
Verdict classify_torus(const ZMatrix& a2);

/// Full classifier: additive fibrations win, then torus fibrations, else a
/// dense witness with joint independence checking of eigenvalues and primes.
Verdict classify(const GroupEndomorphism& phi, unsigned bound);

}  // namespace odyn
