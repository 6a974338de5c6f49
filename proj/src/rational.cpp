#include "odyn/rational.hpp"

#include <cctype>

namespace odyn {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal");
    std::string::size_type slash = text.find('/');
    auto check_digits = [&](const std::string& s) {
        if (s.empty()) throw parse_error("malformed rational: '" + text + "'");
        std::string::size_type i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) throw parse_error("malformed rational: '" + text + "'");
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw parse_error("malformed rational: '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_digits(text);
        return Rational(Int(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    check_digits(num);
    check_digits(den);
    Int d(den);
    if (d == 0) throw parse_error("zero denominator in '" + text + "'");
    return make_rational(Int(num), d);
}

std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

IntFactorization factor_integer(const Int& n) {
    if (n == 0) throw domain_error("factor_integer: zero input");
    IntFactorization out;
    Int m = n;
    if (m < 0) {
        out.sign = -1;
        m = -m;
    }
    // Trial division; inputs at desk scale are small (matrix entries, norms).
    for (Int p = 2; p * p <= m;) {
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.primes.emplace_back(p, e);
        }
        p = (p == 2) ? Int(3) : Int(p + 2);
    }
    if (m > 1) out.primes.emplace_back(m, 1);
    return out;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<Int> primes_avoiding(const std::vector<Int>& avoid, std::size_t count) {
    std::vector<Int> out;
    Int p = 2;
    while (out.size() < count) {
        bool ok = true;
        for (const Int& a : avoid) {
            if (a != 0 && a % p == 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(p);
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return out;
}

}  // namespace odyn
