#include "odyn/poly.hpp"

#include <algorithm>
#include <sstream>

namespace odyn {

void UnivariatePoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UnivariatePoly UnivariatePoly::constant(const Rational& v) {
    UnivariatePoly p;
    if (v != 0) p.c_.push_back(v);
    return p;
}

UnivariatePoly UnivariatePoly::x() { return monomial(Rational(1), 1); }

UnivariatePoly UnivariatePoly::monomial(const Rational& coeff, std::size_t degree) {
    UnivariatePoly p;
    if (coeff != 0) {
        p.c_.assign(degree + 1, Rational(0));
        p.c_[degree] = coeff;
    }
    return p;
}

UnivariatePoly UnivariatePoly::xn_minus_one(unsigned long n) {
    UnivariatePoly p;
    p.c_.assign(n + 1, Rational(0));
    p.c_[0] = -1;
    p.c_[n] = 1;
    return p;
}

const Rational& UnivariatePoly::leading() const {
    if (c_.empty()) throw domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

UnivariatePoly UnivariatePoly::monic() const {
    if (is_zero()) throw domain_error("monic(): zero polynomial");
    return *this * Rational(Rational(1) / leading());
}

UnivariatePoly UnivariatePoly::operator-() const {
    UnivariatePoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
    UnivariatePoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const { return *this + (-o); }

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
    if (is_zero() || o.is_zero()) return UnivariatePoly();
    UnivariatePoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

UnivariatePoly UnivariatePoly::operator*(const Rational& s) const {
    if (s == 0) return UnivariatePoly();
    UnivariatePoly r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
}

std::pair<UnivariatePoly, UnivariatePoly> UnivariatePoly::divmod(const UnivariatePoly& divisor) const {
    if (divisor.is_zero()) throw domain_error("polynomial division by zero");
    UnivariatePoly q, r = *this;
    const int dd = divisor.degree();
    const Rational& lead = divisor.leading();
    if (r.degree() >= dd) q.c_.assign(r.degree() - dd + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= dd) {
        int shift = r.degree() - dd;
        Rational factor = r.leading() / lead;
        q.c_[shift] = factor;
        // r -= factor * x^shift * divisor
        for (int i = 0; i <= dd; ++i) r.c_[shift + i] -= factor * divisor.c_[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

bool UnivariatePoly::divisible_by(const UnivariatePoly& o) const { return divmod(o).second.is_zero(); }

UnivariatePoly UnivariatePoly::derivative() const {
    UnivariatePoly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
    r.trim();
    return r;
}

UnivariatePoly UnivariatePoly::pow(unsigned long e) const {
    UnivariatePoly base = *this, result = UnivariatePoly::constant(Rational(1));
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Rational UnivariatePoly::eval(const Rational& at) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
    return acc;
}

UnivariatePoly UnivariatePoly::scale_arg(const Rational& s) const {
    UnivariatePoly r = *this;
    Rational m(1);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] *= m;
        m *= s;
    }
    r.trim();
    return r;
}

std::string UnivariatePoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rational v = c_[i];
        if (first) {
            if (v < 0) {
                os << "-";
                v = -v;
            }
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        if (i == 0 || v != 1) os << rational_to_string(v);
        if (i > 0) {
            if (v != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UnivariatePoly poly_gcd(const UnivariatePoly& a, const UnivariatePoly& b) {
    if (a.is_zero() && b.is_zero()) throw domain_error("poly_gcd of two zero polynomials");
    UnivariatePoly f = a, g = b;
    while (!g.is_zero()) {
        UnivariatePoly r = f % g;
        f = g;
        g = r;
    }
    return f.monic();
}

Rational resultant(const UnivariatePoly& f, const UnivariatePoly& g) {
    if (f.is_zero() || g.is_zero()) throw domain_error("resultant of zero polynomial");
    int m = f.degree(), n = g.degree();
    if (n == 0) {
        Rational v(1);
        for (int i = 0; i < m; ++i) v *= g.leading();
        return v;
    }
    if (m == 0) {
        Rational v(1);
        for (int i = 0; i < n; ++i) v *= f.leading();
        return v;
    }
    UnivariatePoly r = f % g;
    Rational sign = (m % 2 == 1 && n % 2 == 1) ? Rational(-1) : Rational(1);
    if (r.is_zero()) return Rational(0);
    Rational lcpow(1);
    for (int i = 0; i < m - r.degree(); ++i) lcpow *= g.leading();
    return sign * lcpow * resultant(g, r);
}

std::pair<std::vector<Int>, Rational> primitive_integer_parts(const UnivariatePoly& p) {
    if (p.is_zero()) return {{}, Rational(0)};
    Int den(1);
    for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
    std::vector<Int> ic(p.coeffs().size());
    for (std::size_t i = 0; i < ic.size(); ++i) {
        Rational scaled = p.coeffs()[i] * Rational(den);
        ic[i] = scaled.get_num();
    }
    Int content(0);
    for (const auto& v : ic) content = gcd(content, v);
    if (ic.back() < 0) content = -content;
    for (auto& v : ic) v /= content;
    return {ic, make_rational(content, den)};
}

UnivariatePoly poly_from_int_coeffs(const std::vector<Int>& coeffs) {
    std::vector<Rational> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = Rational(coeffs[i]);
    return UnivariatePoly(std::move(c));
}

bool is_irreducible_over_rationals(const UnivariatePoly& p) {
    if (p.degree() < 1) return false;
    Factorization f = factor_over_rationals(p);
    return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

std::optional<unsigned long> is_cyclotomic(const UnivariatePoly& p) {
    if (!p.is_monic() || !is_irreducible_over_rationals(p))
        throw domain_error("is_cyclotomic requires a monic irreducible polynomial");
    unsigned long d = static_cast<unsigned long>(p.degree());
    // phi(n) >= sqrt(n/2), so phi(n) = d forces n <= 2 d^2 (+ slack for d = 1).
    unsigned long limit = 2 * d * d + 4;
    for (unsigned long n = 1; n <= limit; ++n) {
        if (euler_phi(n) != d) continue;
        if (UnivariatePoly::xn_minus_one(n).divisible_by(p)) return n;
    }
    return std::nullopt;
}

}  // namespace odyn
