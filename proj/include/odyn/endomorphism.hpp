#pragma once

#include <variant>
#include <vector>

#include "odyn/matrix.hpp"
#include "odyn/multipoly.hpp"

namespace odyn {

/// Dominant endomorphism of G_a^k x G_m^l: a nonsingular rational matrix on
/// the additive part and a nonsingular integer exponent matrix on the torus.
/// Action on (x, y): x -> additive * x, y_i -> prod_j y_j^{torus[i][j]}.
struct GroupEndomorphism {
    QMatrix additive;  // k x k (k may be 0)
    ZMatrix torus;     // l x l (l may be 0)

    std::size_t k() const { return additive.rows(); }
    std::size_t l() const { return torus.rows(); }
    std::size_t vars() const { return k() + l(); }

    /// Throws dominance_error when either block is singular.
    void require_dominant() const;
};

/// Torus coordinates tracked as integer exponent vectors over a fixed list
/// of prime bases: coordinate j has value prod_t primes[t]^{expo[j][t]}.
struct TorusExponents {
    std::vector<Int> primes;
    std::vector<std::vector<Int>> expo;
};

struct OrbitPoint {
    std::vector<Rational> additive;
    std::variant<std::vector<Rational>, TorusExponents> torus;

    std::size_t torus_dim() const;
    /// Torus coordinate values as rationals (reconstructs prime powers).
    std::vector<Rational> torus_values() const;
    bool torus_in_exponent_form() const { return std::holds_alternative<TorusExponents>(torus); }
    const TorusExponents& torus_exponents() const { return std::get<TorusExponents>(torus); }
};

/// Plain point constructor; switches to the exponent representation when all
/// torus coordinates are distinct primes.
OrbitPoint make_orbit_point(std::vector<Rational> additive, std::vector<Rational> torus);

/// [alpha, Phi(alpha), ..., Phi^N(alpha)], exactly.
std::vector<OrbitPoint> evaluate_orbit(const GroupEndomorphism& phi, const OrbitPoint& alpha,
                                       unsigned long steps);

/// (x1, ..., xk) -> (lambda1*(x1 - x2), x2, ..., xk) on the additive part.
std::vector<OrbitPoint> psi_transform(const std::vector<OrbitPoint>& points,
                                      const Rational& lambda1);

/// Substitutes the additive linear forms and torus Laurent monomials of phi
/// into f; the result is normalized.
MultiRationalFunction compose_with_endomorphism(const MultiRationalFunction& f,
                                                const GroupEndomorphism& phi);

}  // namespace odyn
