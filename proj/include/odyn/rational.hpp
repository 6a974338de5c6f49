#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace odyn {

using Int = mpz_class;
using Rational = mpq_class;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct dominance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "p/q" or "p" (decimal, optional leading minus).
Rational parse_rational(const std::string& text);

/// Renders as "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rational& q);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

/// Signed prime factorization n = sign * prod p_i^{e_i}. Requires n != 0.
struct IntFactorization {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> primes;  // ascending primes
};
IntFactorization factor_integer(const Int& n);

unsigned long euler_phi(unsigned long n);

/// First `count` primes none of which divides any element of `avoid`.
std::vector<Int> primes_avoiding(const std::vector<Int>& avoid, std::size_t count);

}  // namespace odyn
